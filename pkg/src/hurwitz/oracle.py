"""Brute-force realizability via monodromy.

A datum over S^2 with n branching points is realizable iff there are
permutations ``s_1, ..., s_n`` of the ``d`` sheets with the prescribed cycle
types, product identity, and transitive joint action. The search fixes the
first permutation it enumerates against to the canonical representative of
its class (lossless, by conjugation) and walks one class with the kernels in
:mod:`hurwitz._kernels`.

Genus needs no separate check: a witness for a datum satisfying
Riemann-Hurwitz has ``2 - 2g = 2d - sum(d - cycles(s_i))`` equal to the cover's
Euler characteristic. :func:`decide` asserts this on every witness anyway.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from hurwitz import _kernels
from hurwitz.branch_data import BranchDatum, is_compatible
from hurwitz.permutations import (
    Perm,
    canonical_relabeling,
    canonical_representative,
    class_size,
    compose,
    cycle_type,
    identity,
    inverse,
    is_permutation,
    is_transitive,
    iter_class,
    num_cycles,
    orbits,
)

DEFAULT_BUDGET = 10**9


def default_budget() -> int:
    raw = os.environ.get("HURWITZ_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class Constellation:
    """Permutations of ``range(degree)``; a witness when the product is the identity."""

    degree: int
    perms: tuple[Perm, ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        for p in perms:
            if len(p) != self.degree or not is_permutation(p):
                raise ValueError(f"{p} is not a permutation of {self.degree} points")

    @property
    def n(self) -> int:
        return len(self.perms)

    def product(self) -> Perm:
        if not self.perms:
            return identity(self.degree)
        return compose(*self.perms)

    def cycle_types(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cycle_type(p) for p in self.perms)

    def is_transitive(self) -> bool:
        return is_transitive(self.degree, self.perms)

    def euler_characteristic(self) -> int:
        return 2 * self.degree - sum(self.degree - num_cycles(p) for p in self.perms)

    def conjugated(self, g: Sequence[int]) -> "Constellation":
        from hurwitz.permutations import conjugate

        return Constellation(self.degree, tuple(conjugate(p, g) for p in self.perms))

    def canonical(self) -> "Constellation":
        canon, _ = canonical_relabeling(self.degree, self.perms)
        return Constellation(self.degree, canon)

    def to_json(self) -> dict:
        return {"degree": self.degree, "perms": [[x + 1 for x in p] for p in self.perms]}


def constellation_from_json(obj: Any) -> Constellation:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "degree" not in obj or "perms" not in obj:
        raise ValueError("witness must be an object with 'degree' and 'perms'")
    d = obj["degree"]
    perms = []
    for i, p in enumerate(obj["perms"]):
        if not isinstance(p, list) or sorted(p) != list(range(1, d + 1)):
            raise ValueError(f"perms[{i}] is not a 1-indexed permutation of {d} points")
        perms.append(tuple(x - 1 for x in p))
    return Constellation(d, tuple(perms))


@dataclass(frozen=True)
class Decision:
    status: str  # "realizable", "unrealizable" or "unsupported"
    witness: Constellation | None = None
    nodes: int = 0
    reason: str = ""

    @property
    def realizable(self) -> bool:
        return self.status == "realizable"

    def to_json(self) -> dict:
        out: dict = {"decision": self.status, "nodes": self.nodes}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


class BudgetExceeded(RuntimeError):
    """Raised when the node budget runs out; never reported as unrealizable."""

    def __init__(self, nodes: int, frontier: dict):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes
        self.frontier = frontier


class UnsupportedDatum(ValueError):
    pass


def verify(witness: Constellation, datum: BranchDatum) -> bool:
    """True iff ``witness`` realizes ``datum`` (types, product identity, transitivity)."""
    if witness.degree != datum.degree or witness.n != datum.n:
        return False
    if any(cycle_type(p) != tuple(q) for p, q in zip(witness.perms, datum.partitions)):
        return False
    if witness.product() != identity(witness.degree):
        return False
    return witness.is_transitive()


def _check_supported(datum: BranchDatum) -> str:
    if not datum.base.is_sphere:
        return "only base S^2 is searched"
    if not datum.cover.orientable:
        return "non-orientable covers are not searched"
    return ""


def _components(d: int, perms: Sequence[Perm]) -> np.ndarray:
    comp = np.arange(d, dtype=np.int64)
    for orb in orbits(d, perms):
        root = min(orb)
        for x in orb:
            comp[x] = root
    return comp


@dataclass
class _Plan:
    """How an n-point datum is split into a prefix, an enumerated slot and a derived slot."""

    fixed_slot: int
    enum_slot: int
    derived_slot: int
    order: tuple[int, ...]  # slots in product order, rotated so fixed_slot comes first


def _plan(datum: BranchDatum) -> _Plan:
    n = datum.n
    if n == 3:
        sizes = [class_size(p) for p in datum.partitions]
        b = min(range(3), key=lambda i: (sizes[i], i))
        a, c = (b - 1) % 3, (b + 1) % 3
        return _Plan(a, b, c, (a, b, c))
    return _Plan(0, n - 2, n - 1, tuple(range(n)))


def _shards(d: int, workers: int) -> list[tuple[int, int]]:
    if workers <= 1:
        return [(0, d)]
    k = min(workers, d)
    bounds = [round(i * d / k) for i in range(k + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(k) if bounds[i] < bounds[i + 1]]


def _pair_search(fixed, enum_type, prod_type, comp0, mode, budget, backend, workers):
    d = len(fixed)
    shards = _shards(d, workers)

    def run(shard):
        lo, hi = shard
        return _kernels.search_pair(fixed, enum_type, prod_type, comp0, mode, budget, lo, hi, backend=backend)

    if len(shards) == 1:
        results = [run(shards[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(shards)) as pool:
            results = list(pool.map(run, shards))
    nodes = sum(r.nodes for r in results)
    for r in results:
        if r.status == _kernels.STATUS_BUDGET:
            raise BudgetExceeded(
                nodes,
                {"fixed": [int(x) for x in fixed], "partial_images": [int(x) for x in r.frontier]},
            )
    if mode == _kernels.MODE_FIRST:
        # shards are ordered by first image, so the first hit is the lexicographic least
        for r in results:
            if r.status == _kernels.STATUS_FOUND:
                return nodes, [tuple(int(x) for x in r.witnesses[0])]
        return nodes, []
    wit = [tuple(int(x) for x in row) for r in results for row in r.witnesses]
    return nodes, wit


def _search(datum: BranchDatum, mode: int, budget: int, backend: str | None, workers: int):
    """Yield-free core: returns ``(nodes, list of full constellations in datum order)``."""
    d, n = datum.degree, datum.n
    parts = datum.partitions
    if n == 0:
        return 0, []
    if n == 1:
        sigma = identity(d)
        ok = tuple(parts[0]) == cycle_type(sigma) and is_transitive(d, [sigma])
        return 1, [Constellation(d, (sigma,))] if ok else []
    if n == 2:
        s1 = canonical_representative(parts[0])
        s2 = inverse(s1)
        ok = cycle_type(s2) == tuple(parts[1]) and is_transitive(d, [s1, s2])
        return 1, [Constellation(d, (s1, s2))] if ok else []

    plan = _plan(datum)
    first = canonical_representative(parts[plan.order[0]])
    middle_slots = plan.order[1:-2]
    enum_slot, derived_slot = plan.order[-2], plan.order[-1]
    found: list[Constellation] = []
    total = 0

    def descend(prefix: list[Perm], remaining: int):
        nonlocal total
        k = len(prefix)
        if k - 1 == len(middle_slots):
            acc = compose(*prefix)
            comp0 = _components(d, prefix)
            nodes, pairs = _pair_search(
                acc, parts[enum_slot], parts[derived_slot], comp0, mode, remaining, backend, workers
            )
            total += nodes
            for e in pairs:
                last = inverse(compose(acc, e))
                perms = [None] * n
                for slot, p in zip(plan.order, prefix + [e, last]):
                    perms[slot] = p
                found.append(Constellation(d, tuple(perms)))
            return mode == _kernels.MODE_FIRST and bool(pairs)
        for sigma in iter_class(parts[middle_slots[k - 1]]):
            total += 1
            if total >= budget:
                raise BudgetExceeded(total, {"prefix": [list(p) for p in prefix + [sigma]]})
            if descend(prefix + [sigma], budget - total):
                return True
        return False

    descend([first], budget)
    return total, found


def decide(
    datum: BranchDatum,
    budget: int | None = None,
    backend: str | None = None,
    workers: int = 1,
) -> Decision:
    reason = _check_supported(datum)
    if reason:
        return Decision("unsupported", reason=reason)
    if not is_compatible(datum):
        raise ValueError(f"datum {datum} is not compatible")
    budget = default_budget() if budget is None else budget
    nodes, found = _search(datum, _kernels.MODE_FIRST, budget, backend, workers)
    if not found:
        return Decision("unrealizable", nodes=nodes)
    witness = found[0]
    assert verify(witness, datum), "oracle produced an invalid witness"
    assert witness.euler_characteristic() == datum.cover.euler_characteristic
    return Decision("realizable", witness, nodes)


def all_witnesses(datum: BranchDatum, budget: int | None = None, backend: str | None = None) -> list[Constellation]:
    """Every witness whose first-fixed slot is the canonical representative."""
    reason = _check_supported(datum)
    if reason:
        raise UnsupportedDatum(reason)
    budget = default_budget() if budget is None else budget
    _, found = _search(datum, _kernels.MODE_ALL, budget, backend, 1)
    return found


def count_classes(datum: BranchDatum, budget: int | None = None, backend: str | None = None) -> int:
    """Number of realizations up to simultaneous conjugation by S_d."""
    if not is_compatible(datum):
        raise ValueError(f"datum {datum} is not compatible")
    found = all_witnesses(datum, budget, backend)
    return len({w.canonical().perms for w in found})
