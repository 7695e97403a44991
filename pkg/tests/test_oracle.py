import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.branch_data import SPHERE, BranchDatum, SurfaceClass, enumerate_compatible, orientable
from hurwitz.oracle import (
    BudgetExceeded,
    Constellation,
    UnsupportedDatum,
    all_witnesses,
    constellation_from_json,
    count_classes,
    decide,
    verify,
)
from hurwitz.permutations import compose, cycle_type, inverse, is_transitive, iter_class
from conftest import datum


def test_trivial_witness():
    x = datum(0, (2,), (2,))
    dec = decide(x)
    assert dec.status == "realizable"
    assert dec.witness.to_json() == {"degree": 2, "perms": [[2, 1], [2, 1]]}
    assert verify(dec.witness, x)
    assert not verify(dec.witness, datum(0, (2,), (1, 1)))
    assert count_classes(x) == 1


@pytest.mark.parametrize(
    "x, realizable",
    [
        (datum(1, (4, 2), (3, 3), (3, 3)), False),
        (datum(0, (3, 2), (2, 2, 1), (4, 1)), True),
        (datum(0, (4, 2), (2, 2, 2), (2, 2, 2)), False),
        (datum(0, (2, 2), (2, 2), (3, 1)), False),
    ],
)
def test_decide_examples(x, realizable):
    dec = decide(x)
    assert dec.realizable == realizable
    if realizable:
        assert verify(dec.witness, x)
        assert dec.witness.euler_characteristic() == x.cover.euler_characteristic


def test_count_examples():
    assert count_classes(datum(1, (4, 2), (3, 3), (3, 3))) == 0
    assert count_classes(datum(0, (2, 2), (2, 2), (3, 1))) == 0


def test_unsupported_and_incompatible():
    P = SurfaceClass(False, 1)
    assert decide(BranchDatum(SPHERE, P, 2, ())).status == "unsupported"
    assert decide(BranchDatum(P, SPHERE, 2, ((2,), (2,)))).status == "unsupported"
    with pytest.raises(UnsupportedDatum):
        all_witnesses(BranchDatum(SPHERE, P, 2, ()))
    with pytest.raises(ValueError):
        decide(datum(0, (2,), (2,), (2,)))


def test_budget_is_never_unrealizable():
    x = datum(0, (6, 2), (2, 2, 2, 2), (2, 2, 2, 2))
    with pytest.raises(BudgetExceeded) as info:
        decide(x, budget=5)
    assert info.value.frontier


def test_witness_json_round_trip():
    w = decide(datum(0, (3, 2), (2, 2, 1), (4, 1))).witness
    assert constellation_from_json(w.to_json()) == w
    with pytest.raises(ValueError):
        constellation_from_json({"degree": 2, "perms": [[1, 1]]})


def unreduced_decide(x):
    """All pairs from the two classes, no symmetry fixing."""
    d = x.degree
    p1, p2, p3 = x.partitions
    for s1 in iter_class(p1):
        for s2 in iter_class(p2):
            s3 = inverse(compose(s1, s2))
            if cycle_type(s3) == tuple(p3) and is_transitive(d, (s1, s2)):
                return True
    return False


def small_data(dmax, gmax):
    for g in range(gmax + 1):
        for d in range(2, dmax + 1):
            yield from enumerate_compatible(SPHERE, orientable(g), 3, d)


def test_reduction_matches_unreduced_search():
    for x in small_data(6, 2):
        assert decide(x).realizable == unreduced_decide(x), x


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_backends_agree(backend):
    for x in small_data(6, 1):
        assert decide(x, backend=backend).realizable == decide(x).realizable


def test_workers_do_not_change_decision():
    for x in small_data(7, 0):
        a, b = decide(x), decide(x, workers=3)
        assert a.status == b.status
        if a.witness is not None:
            assert a.witness == b.witness


def test_count_classes_against_naive_orbits():
    # orbits of S_d acting on all witness triples, counted by explicit closure
    for x in small_data(5, 1):
        d = x.degree
        p1, p2, p3 = x.partitions
        wits = set()
        for s1 in iter_class(p1):
            for s2 in iter_class(p2):
                s3 = inverse(compose(s1, s2))
                if cycle_type(s3) == tuple(p3) and is_transitive(d, (s1, s2)):
                    wits.add((s1, s2))
        classes = 0
        group = list(itertools.permutations(range(d)))
        while wits:
            s1, s2 = wits.pop()
            classes += 1
            for g in group:
                wits.discard((conj(s1, g), conj(s2, g)))
        assert count_classes(x) == classes, x


def conj(p, g):
    out = [0] * len(p)
    for x in range(len(p)):
        out[g[x]] = g[p[x]]
    return tuple(out)


realizable = [x for x in small_data(7, 1) if decide(x).realizable]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(realizable), st.randoms(use_true_random=False))
def test_conjugation_closure(x, rnd):
    w = decide(x).witness
    g = list(range(x.degree))
    rnd.shuffle(g)
    assert verify(w.conjugated(g), x)


def test_four_point_search():
    x = datum(0, (3, 1), (2, 2), (2, 1, 1), (2, 1, 1))
    assert decide(x).realizable
    y = datum(0, (2, 1), (2, 1), (2, 1), (2, 1))
    dec = decide(y)
    assert dec.realizable and verify(dec.witness, y)


def test_backend_env_var(monkeypatch):
    from hurwitz import _kernels

    monkeypatch.setenv("HURWITZ_BACKEND", "numpy")
    assert _kernels.default_backend() == "numpy"
    monkeypatch.setenv("HURWITZ_BACKEND", "fortran")
    with pytest.raises(ValueError):
        _kernels.default_backend()


def test_budget_env_var(monkeypatch):
    from hurwitz.oracle import default_budget

    monkeypatch.setenv("HURWITZ_BUDGET", "1234")
    assert default_budget() == 1234
