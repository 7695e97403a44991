"""Minimal checkerboard graphs on closed orientable surfaces of genus g >= 1.

Such a graph is encoded by a pair ``(p, f)``: the boundary of the black disc
carries the points ``0..p-1`` in counter-clockwise order, and ``f`` is the
permutation of ``Z_p`` gluing those points into the ``q`` vertices of the
graph (one vertex per cycle of ``f``). The white disc closes up exactly when
``f~(k) = f(k+1)`` is a single p-cycle, and then ``p - q = 2g``.
"""

from __future__ import annotations

from dataclasses import dataclass

from hurwitz.branch_data import partitions_of
from hurwitz.permutations import Perm, cycle_string, cycles, inverse, iter_class


@dataclass(frozen=True)
class MinimalGraph:
    p: int
    f: Perm

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(x) for x in self.f))
        if self.p < 2 or len(self.f) != self.p or sorted(self.f) != list(range(self.p)):
            raise ValueError(f"f must be a permutation of Z_{self.p}")

    @property
    def q(self) -> int:
        return len(cycles(self.f))

    @property
    def genus(self) -> int:
        return (self.p - self.q) // 2

    def is_valid(self) -> bool:
        return passes_filter(self.p, self.f)

    def to_json(self) -> dict:
        return {"p": self.p, "f": list(self.f), "genus": self.genus}

    def __str__(self) -> str:
        return f"p={self.p} f={cycle_string(self.f)}"


def _f_tilde(f: Perm) -> Perm:
    p = len(f)
    return tuple(f[(k + 1) % p] for k in range(p))


def f_tilde(g: MinimalGraph) -> Perm:
    """``k -> f(k+1 mod p)``: the gluing read one step further round the circle."""
    return _f_tilde(g.f)


def _is_full_cycle(perm: Perm) -> bool:
    x, steps = perm[0], 1
    while x != 0:
        x = perm[x]
        steps += 1
    return steps == len(perm)


def passes_filter(p: int, f: Perm) -> bool:
    """Cycles of ``f`` have length >= 2, ``f~`` is a p-cycle and ``p - q`` is positive and even."""
    cyc = cycles(f)
    if any(len(c) < 2 for c in cyc):
        return False
    diff = p - len(cyc)
    return diff > 0 and diff % 2 == 0 and _is_full_cycle(_f_tilde(f))


def rotate(f: Perm, s: int = 1) -> Perm:
    """Conjugate ``f`` by the rotation ``k -> k+s``."""
    p = len(f)
    return tuple((f[(k - s) % p] + s) % p for k in range(p))


def rotation_canonical(f: Perm) -> Perm:
    return min(rotate(f, s) for s in range(len(f)))


def white_labels(f: Perm) -> Perm:
    """``L(k) = f~^k(0)``: the black-disc points met in order round the white disc."""
    t = _f_tilde(f)
    labels = [0]
    for _ in range(len(f) - 1):
        labels.append(t[labels[-1]])
    return tuple(labels)


def color_swap(f: Perm) -> Perm:
    """Gluing permutation seen from the white disc.

    Transport ``f`` along ``L`` and reflect (``k -> -k``) so the white
    boundary is again read counter-clockwise. This preserves the filter and is
    an involution up to rotation.
    """
    p = len(f)
    lab = white_labels(f)
    inv = inverse(lab)
    moved = [inv[f[lab[k]]] for k in range(p)]
    return tuple((-moved[(-k) % p]) % p for k in range(p))


def enumerate_minimal_graphs(g: int, coarse: bool = False) -> list[MinimalGraph]:
    """All minimal graphs on the genus-g surface, one per rotation class.

    ``q = p - 2g`` cycles of length >= 2 force ``p <= 4g``, so only
    ``2g < p <= 4g`` is searched. With ``coarse`` the classes are also merged
    under :func:`color_swap`. ``g = 0`` gives an empty list (the sphere's
    minimal graph is a circle with no vertices).
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    found: set[Perm] = set()
    for p in range(2 * g + 1, 4 * g + 1):
        q = p - 2 * g
        for shape in partitions_of(p):
            if len(shape) != q or shape[-1] < 2:
                continue
            for f in iter_class(shape):
                if not _is_full_cycle(_f_tilde(f)):
                    continue
                rep = rotation_canonical(f)
                if coarse:
                    rep = min(rep, rotation_canonical(color_swap(f)), key=lambda r: (len(r), r))
                found.add(rep)
    return [MinimalGraph(len(f), f) for f in sorted(found, key=lambda r: (len(r), r))]


@dataclass(frozen=True)
class SurfaceData:
    """Cell structure of the surface carrying a minimal graph.

    Darts ``2k`` and ``2k+1`` are the start and the end of edge ``k`` (the arc
    of the black boundary from point ``k`` to ``k+1``). ``vertices`` lists the
    counter-clockwise dart order at each vertex.
    """

    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]  # edge k joins these vertices
    black_face: tuple[int, ...]
    white_face: tuple[int, ...]
    white_labels: Perm
    swapped: Perm

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + 2

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2


def build_surface_data(g: MinimalGraph) -> SurfaceData:
    p, f = g.p, g.f
    if not g.is_valid():
        raise ValueError(f"{g} is not a minimal checkerboard graph")
    rot = [0] * (2 * p)
    for y in range(p):
        rot[2 * y] = 2 * ((y - 1) % p) + 1  # across the black corner at y
        rot[2 * y + 1] = 2 * f[(y + 1) % p]  # across a white corner
    faces = cycles(tuple(rot[x ^ 1] for x in range(2 * p)))
    if len(faces) != 2:
        raise AssertionError(f"expected two discs, got {len(faces)}")
    black = next(c for c in faces if c[0] % 2 == 1)
    white = next(c for c in faces if c[0] % 2 == 0)
    vertex_of = {}
    for i, c in enumerate(cycles(f)):
        for y in c:
            vertex_of[y] = i
    verts = [c for c in cycles(tuple(rot))]
    verts.sort(key=lambda c: vertex_of[c[0] // 2])
    edges = tuple((vertex_of[k], vertex_of[(k + 1) % p]) for k in range(p))
    data = SurfaceData(tuple(verts), edges, black, white, white_labels(f), color_swap(f))
    if data.euler_characteristic != 2 - 2 * g.genus:
        raise AssertionError("Euler characteristic does not match p - q")
    return data
