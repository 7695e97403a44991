"""Genus-0 diagrams: a labelled circle with two non-crossing chord forests.

The circle carries ``N = n d`` marked points ``0..N-1`` counter-clockwise,
point ``x`` labelled ``x mod n + 1``. Arc ``k`` runs from point ``k`` to
``k+1`` and carries the label of point ``k``. A chord ``(a, b, side)`` joins
two points of the same label either inside the circle (``black``) or outside
(``white``). The diagram is valid for a datum over the sphere with sphere
cover when chords on one side never cross, the chords form a forest, and
the trees of label ``i`` have ``d_ij`` points each. It then has ``2d - 2``
chords and, after collapsing every tree to a point, ``d`` black and ``d``
white faces; the white faces are the sheets of the covering.

The moves below grow diagrams realizing ``(S, S, 3, d, (d-2,2), p2, p3)``.
``construct_sphere_odd`` builds every odd-degree datum of that shape from
four degree-5 diagrams, lowering the degree by two until one of them is hit.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from hurwitz.branch_data import SPHERE, BranchDatum, Partition, SurfaceClass, is_compatible
from hurwitz.oracle import Constellation, verify

BLACK = "black"
WHITE = "white"
SIDES = (BLACK, WHITE)

Chord = tuple[int, int, str]


def _norm(a: int, b: int, side: str) -> Chord:
    return (a, b, side) if a < b else (b, a, side)


@dataclass(frozen=True)
class SphereDiagram:
    n: int
    d: int
    chords: tuple[Chord, ...] = ()

    def __post_init__(self):
        chords = []
        for c in self.chords:
            a, b, side = c
            chords.append(_norm(int(a), int(b), str(side)))
        object.__setattr__(self, "chords", tuple(sorted(chords)))

    @property
    def N(self) -> int:
        return self.n * self.d

    def label(self, x: int) -> int:
        return x % self.n + 1

    def side_chords(self, side: str) -> list[tuple[int, int]]:
        return [(a, b) for a, b, s in self.chords if s == side]

    def components(self) -> list[list[int]]:
        """Connected components of the chord graph on all marked points, by least point."""
        parent = list(range(self.N))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, _ in self.chords:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for x in range(self.N):
            groups.setdefault(find(x), []).append(x)
        return sorted(groups.values())

    def label_partitions(self) -> tuple[Partition, ...]:
        sizes: dict[int, list[int]] = {i: [] for i in range(1, self.n + 1)}
        for comp in self.components():
            sizes[self.label(comp[0])].append(len(comp))
        return tuple(Partition(sizes[i]) for i in range(1, self.n + 1))

    def datum(self) -> BranchDatum:
        return BranchDatum(SPHERE, SPHERE, self.d, self.label_partitions())

    def reflected(self) -> "SphereDiagram":
        """Mirror ``x -> -x``: swaps labels 2 and 3 (for n = 3), keeps sides."""
        N = self.N
        return SphereDiagram(self.n, self.d, tuple(((-a) % N, (-b) % N, s) for a, b, s in self.chords))

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "chords": [[a, b, s] for a, b, s in self.chords]}


def diagram_from_json(obj: Any) -> SphereDiagram:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        chords = tuple((int(a), int(b), str(s)) for a, b, s in obj["chords"])
        return SphereDiagram(int(obj["n"]), int(obj["d"]), chords)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed diagram JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Validation:
    ok: bool
    diagnostics: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _crosses(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    (a, b), (c, d) = c1, c2
    return a < c < b < d or c < a < d < b


def _structural_problems(diag: SphereDiagram) -> Iterator[str]:
    N = diag.N
    seen = set()
    for a, b, s in diag.chords:
        if s not in SIDES:
            yield f"chord {a}-{b} has unknown side {s!r}"
        if not (0 <= a < N and 0 <= b < N):
            yield f"chord {a}-{b} has an endpoint outside 0..{N - 1}"
            return
        if a == b:
            yield f"chord {a}-{b} is a loop"
        if diag.label(a) != diag.label(b):
            yield f"chord {a}-{b} joins labels {diag.label(a)} and {diag.label(b)}"
        if (a, b) in seen:
            yield f"chord {a}-{b} appears twice"
        seen.add((a, b))
    for side in SIDES:
        cs = diag.side_chords(side)
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if _crosses(cs[i], cs[j]):
                    yield f"{side} chords {cs[i]} and {cs[j]} cross"
    parent = list(range(N))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in diag.chords:
        ra, rb = find(a), find(b)
        if ra == rb:
            yield f"chord {a}-{b} closes a cycle"
            return
        parent[ra] = rb


def validate(diag: SphereDiagram, datum: BranchDatum | None = None) -> Validation:
    """Check the diagram conditions; the first diagnostic names the first violation."""
    problems = list(_structural_problems(diag))
    if not problems:
        if len(diag.chords) != 2 * diag.d - 2:
            problems.append(f"{len(diag.chords)} chords, expected 2d - 2 = {2 * diag.d - 2}")
        if datum is not None:
            if not (datum.cover.is_sphere and datum.base.is_sphere):
                problems.append("diagrams realize data with sphere cover and base only")
            elif datum.n != diag.n or datum.degree != diag.d:
                problems.append(f"diagram has n={diag.n}, d={diag.d}; datum has n={datum.n}, d={datum.degree}")
            else:
                got = diag.label_partitions()
                for i, (want, have) in enumerate(zip(datum.partitions, got)):
                    if want != have:
                        problems.append(f"label {i + 1} trees have sizes {have!r}, datum wants {want!r}")
    return Validation(not problems, tuple(problems))


# ---------------------------------------------------------------------------
# faces and monodromy


def _inside_regions(N: int, chords: Iterable[tuple[int, int]]) -> list[int]:
    """Region id of each arc for the disc bounded counter-clockwise by the circle."""
    adj: list[list[int]] = [[] for _ in range(N)]
    for a, b in chords:
        adj[a].append(b)
        adj[b].append(a)
    region = [-1] * N
    count = 0
    for start in range(N):
        if region[start] >= 0:
            continue
        region[start] = count
        y, from_dist = (start + 1) % N, N
        steps = 0
        while True:
            steps += 1
            if steps > 4 * N + 4:
                raise AssertionError("face tracing did not close up")
            # keep the face on the left: turn to the chord closest to where we came from
            best = -1
            for z in adj[y]:
                dist = (z - y) % N
                if dist < from_dist and dist > best:
                    best = dist
            if best >= 0:
                z = (y + best) % N
                from_dist = (y - z) % N
                y = z
                continue
            if y == start:
                break
            region[y] = count
            y, from_dist = (y + 1) % N, N
        count += 1
    return region


def faces(diag: SphereDiagram) -> tuple[list[int], list[int]]:
    """``(black, white)``: face id of each arc inside and outside the circle."""
    N = diag.N
    black = _inside_regions(N, diag.side_chords(BLACK))
    mirrored = _inside_regions(N, [((-a) % N, (-b) % N) for a, b in diag.side_chords(WHITE)])
    white = [mirrored[(-k - 1) % N] for k in range(N)]
    return black, white


def to_constellation(diag: SphereDiagram) -> Constellation:
    """White faces are the sheets; ``s_i`` follows a small loop round the label-i point."""
    check = validate(diag)
    if not check:
        raise ValueError(f"invalid diagram: {check.diagnostics[0]}")
    n, N, d = diag.n, diag.N, diag.d
    black, white = faces(diag)
    if len(set(black)) != d or len(set(white)) != d:
        raise AssertionError("a valid diagram must have d black and d white faces")
    # arcs of label i in each face
    b_arc: dict[tuple[int, int], int] = {}
    w_arc: dict[tuple[int, int], int] = {}
    for k in range(N):
        i = diag.label(k)
        if (black[k], i) in b_arc or (white[k], i) in w_arc:
            raise AssertionError("a face meets two arcs of the same label")
        b_arc[(black[k], i)] = k
        w_arc[(white[k], i)] = k
    sheet = {}
    for k in range(N):
        sheet.setdefault(white[k], len(sheet))
    perms = []
    for i in range(1, n + 1):
        prev = (i - 2) % n + 1
        s = [0] * d
        for w, idx in sheet.items():
            # cross the arc ending at point i into the black face, return across the arc leaving it
            k = w_arc[(w, prev)]
            k2 = b_arc[(black[k], i)]
            s[idx] = sheet[white[k2]]
        perms.append(tuple(s))
    return Constellation(d, tuple(perms))


# ---------------------------------------------------------------------------
# trees and accessibility

TreeId = tuple[int, int]  # (label, least point)


def _tree_index(diag: SphereDiagram) -> dict[int, list[int]]:
    owner = {}
    for comp in diag.components():
        for x in comp:
            owner[x] = comp
    return owner


def gamma11(diag: SphereDiagram) -> list[int]:
    """The label-1 tree of degree ``d - 2`` (the lower-indexed one when ``d = 4``)."""
    if diag.n != 3:
        raise ValueError("accessibility is defined for three labels")
    ones = [c for c in diag.components() if diag.label(c[0]) == 1]
    if sorted(len(c) for c in ones) != sorted([diag.d - 2, 2]):
        raise ValueError("the label-1 partition is not (d-2,2)")
    return next(c for c in ones if len(c) == diag.d - 2)


def tree_id(diag: SphereDiagram, x: int) -> TreeId:
    comp = _tree_index(diag)[x]
    return (diag.label(x), comp[0])


def accessible_trees(diag: SphereDiagram) -> set[TreeId]:
    """Trees of label 2 or 3 joined to the big label-1 tree by an arc."""
    N = diag.N
    big = gamma11(diag)
    owner = _tree_index(diag)
    out = set()
    for x in big:
        for y in ((x + 1) % N, (x - 1) % N):
            comp = owner[y]
            out.add((diag.label(y), comp[0]))
    return out


def inaccessible_trees(diag: SphereDiagram) -> set[TreeId]:
    acc = accessible_trees(diag)
    return {(diag.label(c[0]), c[0]) for c in diag.components() if diag.label(c[0]) in (2, 3)} - acc


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class DiagramMove:
    """``kind`` is mu, mu1, mu2 or mu3. ``arcs`` holds ``(e,)`` or, for mu1, ``(e2, e3)``."""

    kind: str
    arcs: tuple[int, ...]

    def to_json(self) -> dict:
        return {"move": self.kind, "arcs": list(self.arcs)}


@dataclass(frozen=True)
class MoveResult:
    diagram: SphereDiagram
    new_arc: int | None = None  # the arc called e after mu3
    created: dict = field(default_factory=dict)  # named new points


class InadmissibleMove(ValueError):
    pass


def _insert(diag: SphereDiagram, x: int, extra: Sequence[Chord]) -> tuple[SphereDiagram, int]:
    """Insert three points after ``x``; returns the new diagram and the new index of old ``x+1``."""
    N = diag.N

    def shift(y: int) -> int:
        return y if y <= x else y + 3

    chords = [(shift(a), shift(b), s) for a, b, s in diag.chords] + list(extra)
    succ = shift((x + 1) % N)
    return SphereDiagram(diag.n, diag.d + 1, tuple(chords)), succ


def _arc_kind(diag: SphereDiagram, e: int) -> int:
    """Which partition the arc's non-Gamma11 end belongs to (2 or 3)."""
    N = diag.N
    if not 0 <= e < N:
        raise InadmissibleMove(f"arc {e} out of range 0..{N - 1}")
    big = set(gamma11(diag))
    x, y = e, (e + 1) % N
    if diag.label(x) == 1 and x in big:
        return 2
    if diag.label(y) == 1 and y in big:
        return 3
    raise InadmissibleMove(f"arc {e} has no endpoint in the big label-1 tree")


def _mu(diag: SphereDiagram, e: int) -> tuple[SphereDiagram, dict]:
    i = _arc_kind(diag, e)
    x = e
    a, b, c = x + 1, x + 2, x + 3
    N2 = diag.N + 3
    succ = (x + 4) % N2 if x + 1 < diag.N else 0
    if i == 2:
        # a(2) b(3) c(1): grow Gamma11 by c and the 2-tree by a; b is a new 3-point
        extra = [_norm(x, c, BLACK), _norm(a, succ, WHITE)]
    else:
        # a(1) b(2) c(3): grow Gamma11 by a and the 3-tree by c; b is a new 2-point
        extra = [_norm(a, succ, BLACK), _norm(x, c, WHITE)]
    new, succ2 = _insert(diag, x, extra)
    assert succ2 == succ
    return new, {"i": i, "x": x, "a": a, "b": b, "c": c, "succ": succ}


def apply_move(diag: SphereDiagram, move: DiagramMove) -> MoveResult:
    """Apply a move; the result is validated before it is returned."""
    if diag.n != 3:
        raise InadmissibleMove("moves are defined for three labels")
    kind = move.kind
    new_arc = None
    created: dict = {}
    if kind in ("mu", "mu2", "mu3"):
        if len(move.arcs) != 1:
            raise InadmissibleMove(f"{kind} takes one arc")
        new, info = _mu(diag, move.arcs[0])
        if kind == "mu2":
            # the arc from c to the old successor again joins Gamma11 and the same tree
            new, _ = _mu(new, info["c"])
        elif kind == "mu3" and info["i"] == 2:
            c1, b1 = info["c"], info["b"]
            a2, b2, c2 = c1 + 1, c1 + 2, c1 + 3
            new, _ = _insert(new, c1, [_norm(b1, b2, WHITE), _norm(c1, c2, BLACK)])
            new_arc, created = c1, {"a2": a2}
        elif kind == "mu3":
            x = info["x"]
            a, b = info["a"] + 3, info["b"] + 3
            a2, b2, c2 = x + 1, x + 2, x + 3
            new, _ = _insert(new, x, [_norm(b2, b, WHITE), _norm(a2, a, BLACK)])
            new_arc, created = c2, {"c2": c2}
    elif kind == "mu1":
        if len(move.arcs) != 2:
            raise InadmissibleMove("mu1 takes two arcs")
        e2, e3 = move.arcs
        if _arc_kind(diag, e2) != 2 or _arc_kind(diag, e3) != 3:
            raise InadmissibleMove("mu1 needs an arc to a 2-tree then an arc to a 3-tree")
        new, _ = _mu(diag, e2)
        new, info3 = _mu(new, e3 if e3 < e2 else e3 + 3)
        # the label-2 point made by the second half
        created = {"b": info3["b"]}
    else:
        raise InadmissibleMove(f"unknown move {kind!r}")
    check = validate(new)
    if not check:
        raise AssertionError(f"move {kind} produced an invalid diagram: {check.diagnostics[0]}")
    return MoveResult(new, new_arc, created)


def move_datum(p2: Sequence[int], p3: Sequence[int], kind: str, i: int = 2, j: Sequence[int] = (0,)) -> tuple[Partition, Partition]:
    """Partition-level shadow of a move (0-based ``j`` into sorted partitions)."""
    parts = {2: list(Partition(p2)), 3: list(Partition(p3))}
    other = 5 - i
    if kind == "mu1":
        j2, j3 = j
        parts[2][j2] += 1
        parts[3][j3] += 1
        parts[2].append(1)
        parts[3].append(1)
    elif kind == "mu2":
        parts[i][j[0]] += 2
        parts[other] += [1, 1]
    elif kind == "mu3":
        parts[i][j[0]] += 1
        parts[i].append(1)
        parts[other].append(2)
    elif kind == "mu":
        parts[i][j[0]] += 1
        parts[other].append(1)
    else:
        raise ValueError(f"unknown move {kind!r}")
    return Partition(parts[2]), Partition(parts[3])


# ---------------------------------------------------------------------------
# degree-5 base diagrams

BASE_DATA = {
    "D1": ((4, 1), (3, 1, 1)),
    "D2": ((4, 1), (2, 2, 1)),
    "D3": ((3, 2), (3, 1, 1)),
    "D4": ((3, 2), (2, 2, 1)),
}

# least diagrams (sorted chord tuples) with one inaccessible point for D1-D3 and none for D4;
# search_base_diagrams() reproduces them
BASE_DIAGRAMS = {
    "D1": ((0, 3, BLACK), (0, 6, BLACK), (1, 4, WHITE), (1, 7, WHITE), (1, 10, WHITE), (8, 14, BLACK), (9, 12, BLACK), (11, 14, WHITE)),
    "D2": ((0, 3, BLACK), (0, 6, BLACK), (1, 7, WHITE), (1, 10, WHITE), (1, 13, WHITE), (2, 5, WHITE), (8, 14, BLACK), (9, 12, BLACK)),
    "D3": ((0, 3, BLACK), (0, 6, BLACK), (1, 4, WHITE), (5, 8, WHITE), (5, 14, WHITE), (7, 10, BLACK), (7, 13, BLACK), (9, 12, WHITE)),
    "D4": ((0, 3, BLACK), (0, 6, BLACK), (1, 4, WHITE), (1, 10, WHITE), (5, 8, WHITE), (7, 13, BLACK), (9, 12, BLACK), (11, 14, WHITE)),
}


def _label_forests(N: int, n: int, label: int, shape: Partition, taken: dict[str, list[tuple[int, int]]]) -> Iterator[list[Chord]]:
    """Chord sets on one label whose trees have the given sizes and respect ``taken``."""
    points = [x for x in range(N) if x % n + 1 == label]
    cands = [(a, b, s) for ai, a in enumerate(points) for b in points[ai + 1 :] for s in SIDES]
    need = sum(shape) - len(shape)
    target = Counter(shape)
    biggest = max(shape)
    parent = {x: x for x in points}
    size = {x: 1 for x in points}
    chosen: list[Chord] = []
    side_now = {s: list(taken[s]) for s in SIDES}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(start: int) -> Iterator[list[Chord]]:
        if len(chosen) == need:
            if Counter(size[find(x)] for x in points if find(x) == x) == target:
                yield list(chosen)
            return
        for ci in range(start, len(cands)):
            a, b, s = cands[ci]
            ra, rb = find(a), find(b)
            if ra == rb or size[ra] + size[rb] > biggest:
                continue
            if any(_crosses((a, b), c) for c in side_now[s]):
                continue
            parent[rb] = ra
            size[ra] += size[rb]
            chosen.append((a, b, s))
            side_now[s].append((a, b))
            yield from rec(ci + 1)
            side_now[s].pop()
            chosen.pop()
            size[ra] -= size[rb]
            parent[rb] = rb

    yield from rec(0)


def search_diagrams(datum: BranchDatum) -> Iterator[SphereDiagram]:
    """Every valid diagram for a three-point sphere datum, by brute force (small d only)."""
    n, d = datum.n, datum.degree
    N = n * d

    def rec(label: int, taken: dict[str, list[tuple[int, int]]], acc: list[Chord]) -> Iterator[SphereDiagram]:
        if label > n:
            yield SphereDiagram(n, d, tuple(acc))
            return
        for chords in _label_forests(N, n, label, datum.partitions[label - 1], taken):
            nxt = {s: taken[s] + [(a, b) for a, b, t in chords if t == s] for s in SIDES}
            yield from rec(label + 1, nxt, acc + chords)

    for diag in rec(1, {s: [] for s in SIDES}, []):
        if validate(diag, datum):
            yield diag


def _base_datum(name: str) -> BranchDatum:
    p2, p3 = BASE_DATA[name]
    return BranchDatum(SPHERE, SPHERE, 5, ((3, 2), p2, p3))


def search_base_diagrams() -> dict[str, tuple[SphereDiagram, int]]:
    """Least diagram with the required accessibility pattern, and how many diagrams have it."""
    out = {}
    for name in BASE_DATA:
        want = 0 if name == "D4" else 1
        hits = []
        for diag in search_diagrams(_base_datum(name)):
            bad = inaccessible_trees(diag)
            comps = {c[0]: c for c in diag.components()}
            if len(bad) == want and all(len(comps[x]) == 1 for _, x in bad):
                hits.append(diag.chords)
        out[name] = (SphereDiagram(3, 5, min(hits)), len(hits))
    return out


def base_diagram(name: str) -> SphereDiagram:
    return SphereDiagram(3, 5, BASE_DIAGRAMS[name])


# ---------------------------------------------------------------------------
# odd-degree construction


@dataclass
class Construction:
    diagram: SphereDiagram
    script: list[dict]

    def to_json(self) -> dict:
        return {"diagram": self.diagram.to_json(), "script": self.script}


class ConstructionError(RuntimeError):
    """The construction needed a tree or arc that was not there: a defect, never expected."""


def _form32(p: Partition) -> bool:
    return 3 in p and set(p) <= {2, 3}


def _is_twos_one(p: Partition) -> bool:
    return p[-1] == 1 and len(p) >= 2 and set(p[:-1]) == {2}


def _bump(p: Sequence[int], delta: int, drop_ones: int = 0, drop_twos: int = 0) -> Partition:
    """Change the largest entry by ``delta`` and remove trailing 1s or 2s."""
    parts = list(p)
    parts[0] += delta
    for value, count in ((1, drop_ones), (2, drop_twos)):
        for _ in range(count):
            parts.remove(value)
    return Partition(parts)


def _arc_to_tree(diag: SphereDiagram, label: int, size: int, highest: bool = False) -> int:
    """Arc from the big label-1 tree to the least (or greatest) accessible tree of this label and size."""
    N = diag.N
    big = set(gamma11(diag))
    owner = _tree_index(diag)
    best = None
    for x in sorted(big):
        y = (x + 1) % N if label == 2 else (x - 1) % N
        comp = owner[y]
        if len(comp) != size:
            continue
        arc = x if label == 2 else y
        key = (comp[0], arc)
        if best is None or (key > best if highest else key < best):
            best = key
    if best is None:
        raise ConstructionError(f"no accessible label-{label} tree of degree {size}")
    return best[1]


def _arc_to_point(diag: SphereDiagram, point: int) -> int:
    N = diag.N
    big = set(gamma11(diag))
    if (point - 1) % N in big:
        return (point - 1) % N
    if (point + 1) % N in big:
        return point
    raise ConstructionError(f"point {point} is not next to the big label-1 tree")


class _Builder:
    def __init__(self, highest: bool = False):
        self.script: list[dict] = []
        self.highest = highest

    def arc(self, diag: SphereDiagram, label: int, size: int) -> int:
        return _arc_to_tree(diag, label, size, self.highest)

    def log(self, step: str, diag: SphereDiagram, **extra) -> None:
        entry = {"step": step, **extra}
        entry["partitions"] = [list(p) for p in diag.label_partitions()]
        self.script.append(entry)

    def move(self, diag: SphereDiagram, kind: str, arcs: tuple[int, ...]) -> MoveResult:
        res = apply_move(diag, DiagramMove(kind, arcs))
        self.log(kind, res.diagram, arcs=list(arcs))
        return res

    # the returned arc is only meaningful when the chain started from D4 with (2,...,2,1)
    def build(self, p2: Partition, p3: Partition) -> tuple[SphereDiagram, int | None]:
        d = sum(p2)
        if d == 5:
            return self.base(p2, p3)
        if _form32(p2):
            return self.threes(p2, p3)
        if _form32(p3):
            return self.swap(p2, p3)
        return self.general(p2, p3)

    def base(self, p2, p3):
        for name, (q2, q3) in BASE_DATA.items():
            if (q2, q3) == (p2, p3):
                diag = base_diagram(name)
                self.log("base", diag, diagram=name)
                arc = _arc_to_tree(diag, 3, 1) if name == "D4" else None
                return diag, arc
        if (p3, p2) in BASE_DATA.values():
            return self.swap(p2, p3)
        raise ConstructionError(f"no base diagram for {p2!r},{p3!r}")

    def swap(self, p2, p3):
        diag, _ = self.build(p3, p2)
        diag = diag.reflected()
        self.log("reflect", diag)
        return diag, None

    def threes(self, p2, p3):
        k = p2.count(3)
        d = sum(p2)
        if k == 1 and p3[0] >= 3:
            # mu3 on the (d31 - 1)-tree of label 3
            diag, _ = self.build(_bump(p2, 0, drop_twos=1), _bump(p3, -1, drop_ones=1))
            return self.move(diag, "mu3", (self.arc(diag, 3, p3[0] - 1),)).diagram, None
        if p3[0] <= 2:
            if p3.count(1) != k:
                raise ConstructionError(f"{p2!r},{p3!r} does not have k ones")
            if k == 1:
                diag, arc = self.build(Partition((3, 2)), Partition((2, 2, 1)))
                for _ in range((d - 5) // 2):
                    res = self.move(diag, "mu3", (arc,))
                    diag, arc = res.diagram, res.new_arc
                return diag, arc
            prev2 = Partition([3] * (k - 2) + [2] * (p2.count(2) + 1))
            prev3 = Partition([2] * (p3.count(2) - 1) + [1] * (k - 2))
            diag, _ = self.build(prev2, prev3)
            res = self.move(diag, "mu1", (self.arc(diag, 2, 2), self.arc(diag, 3, 1)))
            diag = res.diagram
            return self.move(diag, "mu2", (_arc_to_point(diag, res.created["b"]),)).diagram, None
        prev2 = Partition([3] * (k - 2) + [2] * (p2.count(2) + 1))
        prev3 = _bump(p3, -1, drop_ones=3)
        diag, _ = self.build(prev2, prev3)
        res = self.move(diag, "mu1", (self.arc(diag, 2, 2), self.arc(diag, 3, p3[0] - 1)))
        diag = res.diagram
        return self.move(diag, "mu2", (_arc_to_point(diag, res.created["b"]),)).diagram, None

    def general(self, p2, p3):
        ones2, ones3 = p2.count(1), p3.count(1)
        if ones3 == 0:
            diag, _ = self.build(_bump(p2, 0, drop_ones=2), _bump(p3, -2))
            return self.move(diag, "mu2", (self.arc(diag, 3, p3[0] - 2),)).diagram, None
        if ones2 == 0:
            return self.swap(p2, p3)
        if _is_twos_one(p2):
            diag, _ = self.build(_bump(p2, 0, drop_twos=1), _bump(p3, -1, drop_ones=1))
            return self.move(diag, "mu3", (self.arc(diag, 3, p3[0] - 1),)).diagram, None
        if _is_twos_one(p3):
            return self.swap(p2, p3)
        d = sum(p2)
        hook = Partition((d - 1, 1))
        if p2 == hook:
            return self.swap(p2, p3)
        if p3 == hook:
            # the mu1 predecessor would hold the full cycle (d-2), which no base diagram
            # covers; use mu2 on the (d-3)-tree instead
            diag, _ = self.build(_bump(p2, 0, drop_ones=2), Partition((d - 3, 1)))
            return self.move(diag, "mu2", (self.arc(diag, 3, d - 3),)).diagram, None
        prev2, prev3 = _bump(p2, -1, drop_ones=1), _bump(p3, -1, drop_ones=1)
        diag, _ = self.build(prev2, prev3)
        arcs = (self.arc(diag, 2, p2[0] - 1), self.arc(diag, 3, p3[0] - 1))
        return self.move(diag, "mu1", arcs).diagram, None


def construct_sphere_odd(datum: BranchDatum, highest: bool = False) -> Construction:
    """A validated diagram for ``(S, S, 3, d, (d-2,2), p2, p3)`` with odd ``d``, plus its move script.

    Where several trees qualify for a move the least one is used; ``highest``
    takes the greatest instead (any admissible choice works).
    """
    d = datum.degree
    if not (datum.cover.is_sphere and datum.base.is_sphere and datum.n == 3):
        raise ValueError("construct_sphere_odd needs a three-point datum with sphere cover and base")
    if d % 2 == 0 or d < 5:
        raise ValueError("construct_sphere_odd needs odd degree d >= 5")
    p1, p2, p3 = datum.partitions
    if p1 != Partition((d - 2, 2)):
        raise ValueError(f"the first partition must be ({d - 2},2)")
    if p2 == (d,) or p3 == (d,):
        raise ValueError("data with a full cycle are realizable directly and have no construction here")
    if not is_compatible(datum):
        raise ValueError(f"datum {datum} is not compatible")
    builder = _Builder(highest)
    diag, _ = builder.build(p2, p3)
    check = validate(diag, datum)
    if not check:
        raise ConstructionError(f"construction does not realize {datum}: {check.diagnostics[0]}")
    if not verify(to_constellation(diag), datum):
        raise ConstructionError(f"constellation of the constructed diagram does not realize {datum}")
    return Construction(diag, builder.script)


def admissible_moves(diag: SphereDiagram) -> list[DiagramMove]:
    """Every move whose arcs join the big label-1 tree to a tree of label 2 or 3."""
    kinds: dict[int, list[int]] = {2: [], 3: []}
    for e in range(diag.N):
        try:
            kinds[_arc_kind(diag, e)].append(e)
        except InadmissibleMove:
            pass
    out = [DiagramMove(k, (e,)) for k in ("mu", "mu2", "mu3") for e in kinds[2] + kinds[3]]
    out += [DiagramMove("mu1", (e2, e3)) for e2 in kinds[2] for e3 in kinds[3]]
    return out


def target_trees(diag: SphereDiagram, move: DiagramMove) -> list[tuple[int, int]]:
    """``(label, size)`` of the tree each arc of ``move`` leads to."""
    N = diag.N
    owner = _tree_index(diag)
    out = []
    for e in move.arcs:
        i = _arc_kind(diag, e)
        y = (e + 1) % N if i == 2 else e
        out.append((i, len(owner[y])))
    return out


# ---------------------------------------------------------------------------
# conjunction


def conjunction_datum(
    a: BranchDatum,
    b: BranchDatum,
    choices_a: Sequence[int],
    choices_b: Sequence[int],
) -> BranchDatum:
    """Datum realized by splicing a diagram of ``a`` with one of ``b``.

    For each point ``i`` the chosen entries (0-based indices into the sorted
    partitions) ``x`` of ``a`` and ``y`` of ``b`` merge into ``x + y - 1``;
    the other entries are kept. Degree ``d + d' - 1``, genera add.
    """
    for name, datum in (("first", a), ("second", b)):
        if datum.n != 3 or not datum.base.is_sphere or not datum.cover.orientable:
            raise ValueError(f"{name} datum must have three points, base S^2 and orientable cover")
    if len(choices_a) != 3 or len(choices_b) != 3:
        raise ValueError("one entry must be chosen per branching point")
    parts = []
    for i in range(3):
        pa, pb = list(a.partitions[i]), list(b.partitions[i])
        ja, jb = choices_a[i], choices_b[i]
        if not (0 <= ja < len(pa)) or not (0 <= jb < len(pb)):
            raise IndexError(f"entry choice out of range at point {i + 1}")
        merged = pa[:ja] + pa[ja + 1 :] + pb[:jb] + pb[jb + 1 :] + [pa[ja] + pb[jb] - 1]
        parts.append(Partition(merged))
    cover = SurfaceClass(True, a.cover.genus + b.cover.genus)
    return BranchDatum(cover, SPHERE, a.degree + b.degree - 1, tuple(parts))
