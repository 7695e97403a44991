import pytest

from hurwitz.branch_data import SPHERE, BranchDatum, SurfaceClass, enumerate_compatible, orientable
from hurwitz.classifier import (
    EXCEPTIONAL,
    OUTSIDE_SCOPE,
    REALIZABLE,
    IncompatibleDatum,
    classify,
    non_refining_partitions,
    non_refining_partitions_brute,
)
from hurwitz.oracle import decide
from conftest import datum


@pytest.mark.parametrize(
    "x, decision, rule, family",
    [
        (datum(0, (4, 2), (2, 2, 2), (2, 2, 2)), EXCEPTIONAL, "thm_1_1", 1),
        (datum(0, (2, 2), (2, 2), (3, 1)), EXCEPTIONAL, "thm_1_1", 2),
        (datum(1, (4, 2), (3, 3), (3, 3)), EXCEPTIONAL, "thm_1_2", None),
        (datum(2, (4, 2), (6,), (6,)), REALIZABLE, "thm_1_4", None),
        (datum(0, (3, 1), (2, 2), (2, 2)), EXCEPTIONAL, "prop_1_5", 1),
        (datum(0, (3, 2), (2, 2, 1), (4, 1)), REALIZABLE, "thm_1_1", None),
        (datum(2, (6, 2), (5, 3), (4, 4)), REALIZABLE, "thm_1_3", None),
    ],
)
def test_examples(x, decision, rule, family):
    c = classify(x)
    assert (c.decision, c.rule, c.family) == (decision, rule, family)


def test_json_shape():
    assert classify(datum(1, (4, 2), (3, 3), (3, 3))).to_json() == {
        "decision": "exceptional",
        "rule": "thm_1_2",
        "family": None,
    }


def test_slot_independence():
    a = classify(datum(0, (2, 2, 2), (4, 2), (4, 1, 1)))
    b = classify(datum(0, (4, 1, 1), (2, 2, 2), (4, 2)))
    assert a.decision == b.decision == EXCEPTIONAL


def test_refuses_incompatible():
    with pytest.raises(IncompatibleDatum, match="condition"):
        classify(datum(0, (2,), (2,), (2,)))


def test_outside_scope():
    assert classify(datum(0, (3, 3), (3, 3), (2, 2, 1, 1))).decision == OUTSIDE_SCOPE
    P = SurfaceClass(False, 1)
    assert classify(BranchDatum(SPHERE, P, 2, ())).decision == OUTSIDE_SCOPE


def test_degenerate_prop_1_5_member_is_realizable():
    # k=1 in the second (d-1,1) family: (1,1),(2),(2) contains a full cycle
    x = datum(0, (1, 1), (2,), (2,))
    assert classify(x).rule == "thm_1_4"
    assert decide(x).realizable


def test_priority_consistency():
    # (d) present alongside (d-2,2) or (d-1,1)
    for d in range(3, 9):
        for x in enumerate_compatible(SPHERE, SPHERE, 3, d, (d,)):
            assert classify(x).decision == REALIZABLE


def test_four_point_hook_data_against_oracle():
    for x in enumerate_compatible(SPHERE, SPHERE, 4, 4, (3, 1)):
        c = classify(x)
        assert c.decision != OUTSIDE_SCOPE
        assert (c.decision == REALIZABLE) == decide(x).realizable, x


@pytest.mark.parametrize("k, expected", [(3, [(4, 1, 1), (2, 2, 2)]), (4, [(5, 1, 1, 1)]), (1, [(2,)])])
def test_non_refining_examples(k, expected):
    assert non_refining_partitions(k) == expected


def test_non_refining_against_brute_force():
    for k in range(1, 13):
        assert non_refining_partitions(k) == non_refining_partitions_brute(k)


def test_four_point_data_against_oracle():
    checked = 0
    for g in range(2):
        for d in range(2, 6):
            for x in enumerate_compatible(SPHERE, orientable(g), 4, d):
                c = classify(x)
                if c.decision == OUTSIDE_SCOPE:
                    continue
                checked += 1
                assert (c.decision == REALIZABLE) == decide(x).realizable, x
    assert checked > 20
