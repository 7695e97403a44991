import pytest

from hurwitz.sweep import family_data, run_sweep


def test_torus_single_exception():
    rep = run_sweep(6, "d-2-2", genus_min=1, genus_max=1)
    assert not rep.disagreements and not rep.undecided
    ex = [r for r in rep.rows if r.exceptional]
    assert [str(r.datum) for r in ex] == ["(T,S,3,6,(4,2),(3,3),(3,3))"]


def test_odd_sphere_has_no_exceptions():
    rep = run_sweep(7, "d-2-2", genus_max=0, parity="odd")
    assert rep.rows and not any(r.exceptional for r in rep.rows)
    assert rep.exit_code == 0


def test_worker_count_does_not_change_report():
    a = run_sweep(7, "all", genus_max=1)
    b = run_sweep(7, "all", genus_max=1, workers=4)
    assert a.to_json() == b.to_json()


def test_undecided_rows_exit_three():
    rep = run_sweep(8, "d-2-2", genus_max=0, dmin=8, budget=3)
    assert rep.undecided and rep.exit_code == 3
    assert all(r.agrees is None for r in rep.undecided)


def test_timing_is_opt_in():
    assert "seconds" not in run_sweep(5).to_json()["rows"][0]
    assert "seconds" in run_sweep(5, timing=True).to_json()["rows"][0]


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_sweep(1)
    with pytest.raises(ValueError):
        list(family_data("nope", 5, 0))


def test_hook_family_is_sphere_only():
    assert all(x.cover.genus == 0 for x in family_data("d-1-1", 6, 2))


@pytest.mark.slow
def test_numpy_backend_reproduces_sweeps(monkeypatch):
    fast = [run_sweep(9, "d-2-2", genus_min=g, genus_max=g).to_json() for g in range(3)]
    monkeypatch.setenv("HURWITZ_BACKEND", "numpy")
    slow = [run_sweep(9, "d-2-2", genus_min=g, genus_max=g).to_json() for g in range(3)]
    assert fast == slow
