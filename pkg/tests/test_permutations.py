from hypothesis import given, strategies as st

from hurwitz.permutations import (
    bfs_relabeling,
    canonical_relabeling,
    canonical_representative,
    class_size,
    compose,
    conjugate,
    cycle_string,
    cycle_type,
    from_cycles,
    identity,
    inverse,
    is_transitive,
    iter_class,
)
from hurwitz.branch_data import partitions_of

perms = st.integers(1, 8).flatmap(lambda d: st.permutations(list(range(d))).map(tuple))


def test_compose_is_left_to_right():
    p = from_cycles(3, [(0, 1)])
    q = from_cycles(3, [(1, 2)])
    # apply p first: 0 -> 1 -> 2
    assert compose(p, q)[0] == 2


def test_cycle_string():
    assert cycle_string(from_cycles(4, [(0, 2), (1, 3)])) == "(0 2)(1 3)"


@given(perms)
def test_inverse(p):
    assert compose(p, inverse(p)) == identity(len(p))


@given(perms, st.data())
def test_conjugation_keeps_cycle_type(p, data):
    g = data.draw(st.permutations(list(range(len(p)))).map(tuple))
    assert cycle_type(conjugate(p, g)) == cycle_type(p)


def test_iter_class_matches_class_size():
    for d in range(1, 7):
        for lam in partitions_of(d):
            members = list(iter_class(lam))
            assert len(members) == len(set(members)) == class_size(lam)
            assert all(cycle_type(m) == tuple(lam) for m in members)
            assert members == sorted(members)


def test_canonical_representative_type():
    assert cycle_type(canonical_representative((3, 2, 1))) == (3, 2, 1)


@given(perms, perms, st.data())
def test_canonical_relabeling_is_a_class_invariant(p, q, data):
    if len(p) != len(q):
        q = identity(len(p))
    d = len(p)
    if not is_transitive(d, (p, q)):
        return
    g = data.draw(st.permutations(list(range(d))).map(tuple))
    a, _ = canonical_relabeling(d, (p, q))
    b, _ = canonical_relabeling(d, (conjugate(p, g), conjugate(q, g)))
    assert a == b


def test_bfs_relabeling_none_when_not_transitive():
    assert bfs_relabeling(2, [identity(2)], 0) is None
