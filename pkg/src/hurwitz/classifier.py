"""Closed-form realizability decisions for the classified families of branch data.

Rule identifiers:

``thm_1_4``   some partition is ``(d)``: realizable.
``prop_1_5``  sphere over sphere with some partition ``(d-1,1)``. Exceptional
              families: ``(3,1),(2,2),...,(2,2)`` at d=4 (family 1) and
              ``(2k-1,1),(2^k),(2^k)`` with n=3 (family 2).
``thm_1_1``   n=3, sphere cover, some partition ``(d-2,2)``. Exceptional
              families: ``(2k-2,2),(2^k),(2^k)`` with k>2 (family 1) and
              ``(2k-2,2),(2^k),(k+1,1^(k-1))`` (family 2).
``thm_1_2``   n=3, torus cover, some partition ``(d-2,2)``. The only exception
              is ``(4,2),(3,3),(3,3)``.
``thm_1_3``   n=3, cover of genus >= 2, some partition ``(d-2,2)``: realizable.

Points whose partition is ``(1,...,1)`` are dropped before matching.
Anything else is ``outside_scope``; the classifier never guesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from hurwitz.branch_data import BranchDatum, Partition, check_compatibility, partitions_of, refines

REALIZABLE = "realizable"
EXCEPTIONAL = "exceptional"
OUTSIDE_SCOPE = "outside_scope"


@dataclass(frozen=True)
class Classification:
    decision: str
    rule: str | None = None
    family: int | None = None

    @property
    def realizable(self) -> bool | None:
        if self.decision == OUTSIDE_SCOPE:
            return None
        return self.decision == REALIZABLE

    def to_json(self) -> dict:
        return {"decision": self.decision, "rule": self.rule, "family": self.family}

    def __str__(self) -> str:
        if self.rule is None:
            return self.decision
        tag = self.rule if self.family is None else f"{self.rule} family {self.family}"
        return f"{self.decision} ({tag})"


class IncompatibleDatum(ValueError):
    pass


def _twos(k: int) -> Partition:
    return Partition([2] * k)


def _hook(k: int) -> Partition:
    # (k+1, 1, ..., 1), a partition of 2k with k parts
    return Partition([k + 1] + [1] * (k - 1))


def _others(parts: Sequence[Partition], slot: int) -> list[Partition]:
    return sorted((p for i, p in enumerate(parts) if i != slot), reverse=True)


def _prop_1_5(datum: BranchDatum, slot: int) -> Classification:
    d, parts = datum.degree, datum.partitions
    rest = _others(parts, slot)
    if d == 4 and all(p == (2, 2) for p in rest):
        return Classification(EXCEPTIONAL, "prop_1_5", 1)
    if datum.n == 3 and d % 2 == 0 and rest == [_twos(d // 2)] * 2:
        return Classification(EXCEPTIONAL, "prop_1_5", 2)
    return Classification(REALIZABLE, "prop_1_5")


def _d22(datum: BranchDatum, slot: int) -> Classification:
    d, parts, g = datum.degree, datum.partitions, datum.cover.genus
    rest = _others(parts, slot)
    if g == 0:
        if d % 2 == 0:
            k = d // 2
            if k > 2 and rest == [_twos(k)] * 2:
                return Classification(EXCEPTIONAL, "thm_1_1", 1)
            if sorted([_twos(k), _hook(k)], reverse=True) == rest:
                return Classification(EXCEPTIONAL, "thm_1_1", 2)
        return Classification(REALIZABLE, "thm_1_1")
    if g == 1:
        if d == 6 and rest == [Partition((3, 3))] * 2:
            return Classification(EXCEPTIONAL, "thm_1_2")
        return Classification(REALIZABLE, "thm_1_2")
    return Classification(REALIZABLE, "thm_1_3")


def _drop_trivial(datum: BranchDatum) -> BranchDatum:
    # a point with partition (1,...,1) carries the identity and changes nothing
    kept = tuple(p for p in datum.partitions if len(p) < datum.degree)
    if len(kept) == datum.n:
        return datum
    return BranchDatum(datum.cover, datum.base, datum.degree, kept)


def classify(datum: BranchDatum) -> Classification:
    """Decide ``datum`` by the first applicable closed-form rule.

    When both the ``(d-1,1)`` and the ``(d-2,2)`` rules apply, the one whose
    special partition sits in slot 0 is reported; otherwise ``(d-1,1)`` wins.
    The two never disagree on the decision.
    """
    report = check_compatibility(datum)
    if not report.compatible:
        raise IncompatibleDatum(f"datum {datum} fails compatibility condition(s) {report.failed}")
    if not datum.base.is_sphere or not datum.cover.orientable:
        return Classification(OUTSIDE_SCOPE)
    datum = _drop_trivial(datum)
    d, parts = datum.degree, datum.partitions
    if any(p == (d,) for p in parts):
        return Classification(REALIZABLE, "thm_1_4")

    hook_slots = [i for i, p in enumerate(parts) if p == Partition((d - 1, 1))] if datum.cover.is_sphere else []
    d22_slots = [i for i, p in enumerate(parts) if p == Partition((d - 2, 2))] if datum.n == 3 and d >= 4 else []

    if d22_slots and d22_slots[0] == 0 and not (hook_slots and hook_slots[0] == 0):
        return _best(datum, d22_slots, _d22)
    if hook_slots:
        return _best(datum, hook_slots, _prop_1_5)
    if d22_slots:
        return _best(datum, d22_slots, _d22)
    return Classification(OUTSIDE_SCOPE)


def _best(datum: BranchDatum, slots: list[int], rule) -> Classification:
    # the special partition may occupy several slots; any exceptional match wins
    results = [rule(datum, s) for s in slots]
    for r in results:
        if r.decision == EXCEPTIONAL:
            return r
    return results[0]


def non_refining_partitions(k: int) -> list[Partition]:
    """Partitions of ``2k`` with at least ``k`` parts that do not refine ``(k,k)``."""
    if k < 1:
        raise ValueError("k must be positive")
    out = {_hook(k)}
    if k % 2:
        out.add(_twos(k))
    return sorted(out, reverse=True)


def non_refining_partitions_brute(k: int) -> list[Partition]:
    if k < 1:
        raise ValueError("k must be positive")
    half = (k, k)
    found = [p for p in partitions_of(2 * k) if len(p) >= k and not refines(p, half)]
    return sorted(found, reverse=True)
