"""Dessins d'enfants as bipartite rotation systems.

A dessin on ``E`` edges has darts ``0..2E-1``, two per edge. ``edge_pairing``
swaps the two darts of an edge, ``rotation`` cycles the darts round each
vertex counter-clockwise, and ``colors[x]`` is the color (1 or 2) of the
vertex dart ``x`` sits at. Faces are the orbits of
``x -> rotation[edge_pairing[x]]``; an orbit of ``2k`` darts is a face of
length ``2k`` and local degree ``k``.

Realizations of a three-point datum over the sphere are the dessins whose
color-1 and color-2 valences are partitions 1 and 2 and whose face lengths
are twice partition 3. Edges are the sheets.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from hurwitz.branch_data import BranchDatum, Partition, is_compatible, orientable, SPHERE
from hurwitz.oracle import Constellation, UnsupportedDatum
from hurwitz.permutations import (
    Perm,
    bfs_relabeling,
    canonical_representative,
    compose,
    conjugate,
    cycles,
    inverse,
    is_permutation,
    is_transitive,
)


class InvalidDessin(ValueError):
    pass


@dataclass(frozen=True)
class Dessin:
    edge_pairing: Perm
    rotation: Perm
    colors: tuple[int, ...]

    def __post_init__(self):
        for name in ("edge_pairing", "rotation", "colors"):
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))
        self.validate()

    @property
    def num_darts(self) -> int:
        return len(self.edge_pairing)

    @property
    def num_edges(self) -> int:
        return self.num_darts // 2

    def validate(self) -> None:
        n = self.num_darts
        a, r, c = self.edge_pairing, self.rotation, self.colors
        if n == 0 or n % 2:
            raise InvalidDessin("a dessin needs a positive even number of darts")
        if len(r) != n or len(c) != n:
            raise InvalidDessin("edge_pairing, rotation and colors must have the same length")
        if not is_permutation(a) or any(a[x] == x or a[a[x]] != x for x in range(n)):
            raise InvalidDessin("edge_pairing must be a fixed-point-free involution")
        if not is_permutation(r):
            raise InvalidDessin("rotation must be a permutation of the darts")
        if any(col not in (1, 2) for col in c):
            raise InvalidDessin("colors must be 1 or 2")
        if any(c[r[x]] != c[x] for x in range(n)):
            raise InvalidDessin("a vertex has darts of both colors")
        if any(c[a[x]] == c[x] for x in range(n)):
            raise InvalidDessin("an edge joins two vertices of the same color")
        if not is_transitive(n, (a, r)):
            raise InvalidDessin("the map is not connected")

    def vertices(self) -> list[tuple[int, ...]]:
        return cycles(self.rotation)

    def faces(self) -> list[tuple[int, ...]]:
        phi = tuple(self.rotation[self.edge_pairing[x]] for x in range(self.num_darts))
        return cycles(phi)

    def valences(self, color: int) -> Partition:
        return Partition(len(v) for v in self.vertices() if self.colors[v[0]] == color)

    def to_json(self) -> dict:
        return {"edge_pairing": list(self.edge_pairing), "rotation": list(self.rotation), "colors": list(self.colors)}

    def to_dot(self, name: str = "dessin") -> str:
        vid = {}
        for i, v in enumerate(self.vertices()):
            for x in v:
                vid[x] = i
        lines = [f"graph {name} {{"]
        for i, v in enumerate(self.vertices()):
            black = self.colors[v[0]] == 1
            style = "style=filled, fillcolor=black, fontcolor=white" if black else "style=filled, fillcolor=white"
            lines.append(f"  v{i} [label=\"{len(v)}\", {style}];")
        for x in range(self.num_darts):
            if self.colors[x] == 1:
                lines.append(f"  v{vid[x]} -- v{vid[self.edge_pairing[x]]};")
        lines.append("}")
        return "\n".join(lines)


def dessin_from_json(obj: Any) -> Dessin:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        return Dessin(obj["edge_pairing"], obj["rotation"], obj["colors"])
    except (KeyError, TypeError) as exc:
        raise InvalidDessin(f"malformed dessin JSON: {exc}") from exc


def face_lengths(dessin: Dessin) -> Partition:
    """Face lengths in edges, counted with multiplicity (always even)."""
    return Partition(len(f) for f in dessin.faces())


def genus(dessin: Dessin) -> int:
    chi = len(dessin.vertices()) - dessin.num_edges + len(dessin.faces())
    if chi % 2 or chi > 2:
        raise InvalidDessin(f"Euler characteristic {chi} is not that of a closed orientable surface")
    return (2 - chi) // 2


def datum_of(dessin: Dessin) -> BranchDatum:
    faces = [f // 2 for f in face_lengths(dessin)]
    return BranchDatum(
        orientable(genus(dessin)),
        SPHERE,
        dessin.num_edges,
        (dessin.valences(1), dessin.valences(2), Partition(faces)),
    )


def _edge_numbering(dessin: Dessin) -> dict[int, int]:
    """Edge ``e`` is the one whose color-1 dart is the ``e``-th smallest."""
    black = [x for x in range(dessin.num_darts) if dessin.colors[x] == 1]
    return {x: e for e, x in enumerate(black)}


def to_constellation(dessin: Dessin) -> Constellation:
    """Edges as sheets; s1, s2 rotate edges round color-1 and color-2 vertices."""
    num = _edge_numbering(dessin)
    a, r = dessin.edge_pairing, dessin.rotation
    d = dessin.num_edges
    s1 = [0] * d
    s2 = [0] * d
    for x, e in num.items():
        s1[e] = num[r[x]]
        s2[e] = num[a[r[a[x]]]]
    s1, s2 = tuple(s1), tuple(s2)
    s3 = inverse(compose(s1, s2))
    return Constellation(d, (s1, s2, s3))


def from_constellation(c: Constellation) -> Dessin:
    """Inverse of :func:`to_constellation` (color-1 dart ``2e``, color-2 dart ``2e+1``)."""
    if c.n not in (2, 3):
        raise ValueError("a dessin encodes two or three permutations")
    s1, s2 = c.perms[0], c.perms[1]
    d = c.degree
    pairing, rotation, colors = [], [], []
    for e in range(d):
        pairing += [2 * e + 1, 2 * e]
        rotation += [2 * s1[e], 2 * s2[e] + 1]
        colors += [1, 2]
    return Dessin(tuple(pairing), tuple(rotation), tuple(colors))


def canonical_form(dessin: Dessin) -> tuple[Perm, Perm, tuple[int, ...]]:
    """Least dart-relabeled (pairing, rotation, colors) over breadth-first relabelings from every dart."""
    gens = (dessin.edge_pairing, dessin.rotation)
    n = dessin.num_darts
    best = None
    for root in range(n):
        g = bfs_relabeling(n, gens, root)
        colors = [0] * n
        for x in range(n):
            colors[g[x]] = dessin.colors[x]
        form = (conjugate(gens[0], g), conjugate(gens[1], g), tuple(colors))
        if best is None or form < best:
            best = form
    return best


def canonical(dessin: Dessin) -> Dessin:
    return Dessin(*canonical_form(dessin))


def is_isomorphic(a: Dessin, b: Dessin) -> bool:
    return a.num_darts == b.num_darts and canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# enumeration


class _Chains:
    """Partial permutation as disjoint chains, checked against a target cycle type."""

    def __init__(self, n: int, shape: Sequence[int]):
        self.head = list(range(n))
        self.tail = list(range(n))
        self.length = [1] * n
        self.remaining = Counter(shape)
        self.max_len = max(shape)

    def _room(self, length: int) -> bool:
        return any(self.remaining[k] for k in range(length, self.max_len + 1))

    def link(self, x: int, y: int):
        """Record ``x -> y``; returns an undo token, or ``None`` if pruned."""
        a = self.head[x]
        if a == y:
            cyc = self.length[a]
            if self.remaining[cyc] == 0:
                return None
            self.remaining[cyc] -= 1
            return ("close", cyc)
        new_len = self.length[a] + self.length[y]
        if new_len > self.max_len or not self._room(new_len):
            return None
        b = self.tail[y]
        token = ("join", a, b, self.tail[a], self.head[b], self.length[a])
        self.tail[a], self.head[b], self.length[a] = b, a, new_len
        return token

    def undo(self, token) -> None:
        if token[0] == "close":
            self.remaining[token[1]] += 1
        else:
            _, a, b, ta, hb, la = token
            self.tail[a], self.head[b], self.length[a] = ta, hb, la


def _check_enumerable(datum: BranchDatum) -> None:
    if datum.n != 3:
        raise UnsupportedDatum("dessins encode data with exactly three branching points")
    if not datum.base.is_sphere:
        raise UnsupportedDatum("dessins need base S^2")
    if not datum.cover.orientable:
        raise UnsupportedDatum("dessins live on orientable surfaces")
    if not is_compatible(datum):
        raise ValueError(f"datum {datum} is not compatible")


def enumerate_dessins(datum: BranchDatum, shard: tuple[int, int] | None = None) -> Iterator[Dessin]:
    """One dessin per isomorphism class realizing ``datum``, in search order.

    The color-1 rotation is fixed to the canonical permutation of type
    partition 1; the color-2 rotation is built edge by edge, pruned by its own
    cycle type and by the partial face cycles. ``shard`` restricts the image
    of edge 0 under the color-2 rotation; dedup is then per shard.
    """
    _check_enumerable(datum)
    d = datum.degree
    p1, p2, p3 = datum.partitions
    s1 = canonical_representative(p1)
    s1_inv = inverse(s1)
    lo, hi = shard if shard is not None else (0, d)
    tau = [-1] * d
    used = [False] * d
    rot_chains = _Chains(d, p2)
    face_chains = _Chains(d, p3)  # e -> tau(s1(e)), one cycle per face
    seen: set = set()

    def rec(y: int) -> Iterator[Dessin]:
        if y == d:
            if not is_transitive(d, (s1, tau)):
                return
            dessin = from_constellation(Constellation(d, (s1, tuple(tau))))
            form = canonical_form(dessin)
            if form not in seen:
                seen.add(form)
                yield dessin
            return
        choices = range(lo, hi) if y == 0 else range(d)
        for z in choices:
            if used[z]:
                continue
            t1 = rot_chains.link(y, z)
            if t1 is None:
                continue
            t2 = face_chains.link(s1_inv[y], z)
            if t2 is None:
                rot_chains.undo(t1)
                continue
            tau[y], used[z] = z, True
            yield from rec(y + 1)
            tau[y], used[z] = -1, False
            face_chains.undo(t2)
            rot_chains.undo(t1)

    yield from rec(0)


def count_dessins(datum: BranchDatum) -> int:
    return sum(1 for _ in enumerate_dessins(datum))
