"""Small permutation toolkit on ``{0, ..., d-1}``.

Permutations are tuples of images, ``p[x]`` is the image of ``x``.
Products are read left to right: ``compose(p, q)`` applies ``p`` first and
then ``q``, so a constellation ``(s1, ..., sn)`` has product identity when
``compose(s1, ..., sn)`` is the identity.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def identity(d: int) -> Perm:
    return tuple(range(d))


def compose(*perms: Sequence[int]) -> Perm:
    """Left-to-right product: apply ``perms[0]`` first."""
    if not perms:
        raise ValueError("compose needs at least one permutation")
    out = list(perms[0])
    for q in perms[1:]:
        out = [q[x] for x in out]
    return tuple(out)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def conjugate(p: Sequence[int], g: Sequence[int]) -> Perm:
    """Relabel ``p`` through ``g``: the result maps ``g[x]`` to ``g[p[x]]``."""
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[g[x]] = g[y]
    return tuple(out)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of ``p`` (fixed points included), each starting at its least element."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def num_cycles(p: Sequence[int]) -> int:
    return len(cycles(p))


def cycle_string(p: Sequence[int], one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    parts = ["(" + " ".join(str(x + shift) for x in c) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"


def from_cycles(d: int, cyc: Iterable[Sequence[int]]) -> Perm:
    p = list(range(d))
    for c in cyc:
        for i, x in enumerate(c):
            p[x] = c[(i + 1) % len(c)]
    if not is_permutation(p):
        raise ValueError(f"cycles {cyc!r} do not define a permutation of {d} points")
    return tuple(p)


def canonical_representative(cycle_lengths: Sequence[int]) -> Perm:
    """The permutation with cycles on consecutive blocks, longest block first."""
    p = []
    start = 0
    for length in sorted(cycle_lengths, reverse=True):
        for k in range(length):
            p.append(start + (k + 1) % length)
        start += length
    return tuple(p)


def class_size(cycle_lengths: Sequence[int]) -> int:
    """Size of the conjugacy class of the given cycle type in S_d."""
    d = sum(cycle_lengths)
    z = 1
    for length, mult in Counter(cycle_lengths).items():
        z *= length**mult * math.factorial(mult)
    return math.factorial(d) // z


def orbits(d: int, perms: Iterable[Sequence[int]]) -> list[list[int]]:
    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x, y in enumerate(p):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(d):
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def is_transitive(d: int, perms: Iterable[Sequence[int]]) -> bool:
    return d <= 1 or len(orbits(d, perms)) == 1


def iter_class(cycle_lengths: Sequence[int]) -> Iterator[Perm]:
    """All permutations of the given cycle type, in lexicographic order of images.

    Plain Python; the hot search path lives in :mod:`hurwitz._kernels`.
    """
    d = sum(cycle_lengths)
    remaining = Counter(cycle_lengths)
    max_len = max(cycle_lengths) if cycle_lengths else 0
    image = [-1] * d
    used = [False] * d
    head = list(range(d))  # chain end -> chain start
    tail = list(range(d))  # chain start -> chain end
    length = [1] * d  # chain start -> chain length

    def rec(i: int) -> Iterator[Perm]:
        if i == d:
            yield tuple(image)
            return
        a = head[i]
        for j in range(d):
            if used[j]:
                continue
            if j == a:
                cyc = length[a]
                if remaining[cyc] == 0:
                    continue
                remaining[cyc] -= 1
                image[i] = j
                used[j] = True
                yield from rec(i + 1)
                used[j] = False
                image[i] = -1
                remaining[cyc] += 1
            else:
                new_len = length[a] + length[j]
                if new_len > max_len or not any(remaining[k] for k in range(new_len, max_len + 1)):
                    continue
                b = tail[j]
                saved = (tail[a], head[b], length[a])
                tail[a], head[b], length[a] = b, a, new_len
                image[i] = j
                used[j] = True
                yield from rec(i + 1)
                used[j] = False
                image[i] = -1
                tail[a], head[b], length[a] = saved

    yield from rec(0)


def bfs_relabeling(d: int, gens: Sequence[Sequence[int]], root: int) -> Perm | None:
    """Rename points in breadth-first discovery order from ``root``.

    Generators are tried in order at each point. Returns ``None`` when the
    orbit of ``root`` is not everything.
    """
    g = [-1] * d
    g[root] = 0
    order = [root]
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for p in gens:
            y = p[x]
            if g[y] < 0:
                g[y] = len(order)
                order.append(y)
    return tuple(g) if len(order) == d else None


def canonical_relabeling(d: int, gens: Sequence[Sequence[int]]) -> tuple[tuple[Perm, ...], Perm]:
    """Canonical form of a transitive tuple of permutations under simultaneous conjugation.

    The lexicographically least :func:`bfs_relabeling` image over all roots
    wins. Returns the canonical tuple and the relabeling ``g`` that produced it.
    """
    best: tuple[tuple[Perm, ...], Perm] | None = None
    for root in range(d):
        g = bfs_relabeling(d, gens, root)
        if g is None:
            raise ValueError("canonical_relabeling needs a transitive tuple")
        relabeled = tuple(conjugate(p, g) for p in gens)
        if best is None or relabeled < best[0]:
            best = (relabeled, g)
    if best is None:
        return (), ()
    return best
