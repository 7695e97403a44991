import random

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.branch_data import SPHERE, enumerate_compatible, orientable
from hurwitz.dessins import (
    Dessin,
    InvalidDessin,
    canonical_form,
    count_dessins,
    datum_of,
    dessin_from_json,
    enumerate_dessins,
    face_lengths,
    from_constellation,
    genus,
    is_isomorphic,
    to_constellation,
)
from hurwitz.oracle import Constellation, UnsupportedDatum, count_classes, decide, verify
from hurwitz.permutations import conjugate, from_cycles
from conftest import datum

SINGLE_EDGE = Dessin((1, 0), (0, 1), (1, 2))


def hexagon():
    s1 = from_cycles(6, [(0, 1), (2, 3), (4, 5)])
    s2 = from_cycles(6, [(1, 2), (3, 4), (5, 0)])
    return from_constellation(Constellation(6, (s1, s2)))


def test_single_edge():
    assert face_lengths(SINGLE_EDGE) == (2,)
    assert genus(SINGLE_EDGE) == 0
    c = to_constellation(SINGLE_EDGE)
    assert c.perms == ((0,), (0,), (0,))


def test_hexagon():
    h = hexagon()
    assert face_lengths(h) == (6, 6)
    assert genus(h) == 0
    c = to_constellation(h)
    assert c.cycle_types()[:2] == ((2, 2, 2), (2, 2, 2))
    assert verify(c, datum_of(h))


def test_torus_map():
    x = datum(1, (3, 3), (3, 3), (3, 3))
    found = list(enumerate_dessins(x))
    assert found
    for dz in found:
        assert len(dz.vertices()) == 4 and dz.num_edges == 6 and len(dz.faces()) == 2
        assert genus(dz) == 1


def test_invalid_dessins():
    with pytest.raises(InvalidDessin):
        Dessin((1, 0), (0, 1), (1, 1))
    with pytest.raises(InvalidDessin):
        Dessin((0, 1), (0, 1), (1, 2))
    with pytest.raises(InvalidDessin):
        dessin_from_json({"edge_pairing": [1, 0]})


def test_json_round_trip():
    h = hexagon()
    assert dessin_from_json(h.to_json()) == h


def test_torus_exception_has_no_dessin():
    assert list(enumerate_dessins(datum(1, (4, 2), (3, 3), (3, 3)))) == []


def test_genus_two_example():
    dz = next(enumerate_dessins(datum(2, (7, 2), (6, 3), (3, 3, 3))))
    assert genus(dz) == 2
    assert verify(to_constellation(dz), datum(2, (7, 2), (6, 3), (3, 3, 3)))


@pytest.mark.slow
def test_degree_twelve_example():
    x = datum(2, (10, 2), (3, 3, 3, 3), (3, 3, 3, 3))
    dz = next(enumerate_dessins(x))
    assert datum_of(dz) == x


def test_unsupported():
    with pytest.raises(UnsupportedDatum):
        list(enumerate_dessins(datum(0, (2,), (2,))))


def data(dmax, gmax):
    for g in range(gmax + 1):
        for d in range(2, dmax + 1):
            yield from enumerate_compatible(SPHERE, orientable(g), 3, d)


def test_round_trip_through_constellations():
    for x in data(6, 1):
        for dz in enumerate_dessins(x):
            assert datum_of(dz) == x
            c = to_constellation(dz)
            assert verify(c, x)
            assert is_isomorphic(from_constellation(c), dz)
            assert sum(face_lengths(dz)) == 2 * dz.num_edges


def test_counts_match_oracle_degree_seven():
    for x in data(7, 2):
        if x.degree == 7:
            assert count_dessins(x) == count_classes(x), x


def test_non_empty_iff_realizable():
    for x in data(7, 2):
        assert (next(enumerate_dessins(x), None) is not None) == decide(x).realizable, x


def test_shards_cover_everything():
    x = datum(0, (3, 2), (2, 2, 1), (4, 1))
    whole = {canonical_form(dz) for dz in enumerate_dessins(x)}
    parts = set()
    for z in range(x.degree):
        parts |= {canonical_form(dz) for dz in enumerate_dessins(x, shard=(z, z + 1))}
    assert parts == whole


sample = [dz for x in data(6, 1) for dz in enumerate_dessins(x)]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(sample), st.randoms(use_true_random=False))
def test_relabeling_invariance(dz, rnd):
    g = list(range(dz.num_darts))
    rnd.shuffle(g)
    colors = [0] * dz.num_darts
    for x in range(dz.num_darts):
        colors[g[x]] = dz.colors[x]
    other = Dessin(conjugate(dz.edge_pairing, g), conjugate(dz.rotation, g), tuple(colors))
    assert genus(other) == genus(dz)
    assert canonical_form(other) == canonical_form(dz)
