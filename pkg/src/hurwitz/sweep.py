"""Classifier-versus-oracle sweep over families of three-point data over the sphere."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from hurwitz.branch_data import SPHERE, BranchDatum, Partition, enumerate_compatible, orientable
from hurwitz.classifier import EXCEPTIONAL, OUTSIDE_SCOPE, classify
from hurwitz.oracle import BudgetExceeded, decide

FAMILIES = ("d-2-2", "d-1-1", "all")


@dataclass(frozen=True)
class SweepRow:
    datum: BranchDatum
    classifier: str
    rule: str | None
    family: int | None
    oracle: str  # "realizable", "unrealizable" or "undecided"
    seconds: float | None = None

    @property
    def agrees(self) -> bool | None:
        """None when either side gave no decision."""
        if self.classifier == OUTSIDE_SCOPE or self.oracle == "undecided":
            return None
        return (self.classifier != EXCEPTIONAL) == (self.oracle == "realizable")

    @property
    def exceptional(self) -> bool:
        return self.oracle == "unrealizable"

    def to_json(self) -> dict:
        out = {
            "datum": str(self.datum),
            "cover_genus": self.datum.cover.genus,
            "degree": self.datum.degree,
            "partitions": [list(p) for p in self.datum.partitions],
            "classifier": self.classifier,
            "rule": self.rule,
            "family": self.family,
            "oracle": self.oracle,
            "agrees": self.agrees,
        }
        if self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class SweepReport:
    dmax: int
    family: str
    genus_max: int
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def disagreements(self) -> list[SweepRow]:
        return [r for r in self.rows if r.agrees is False]

    @property
    def undecided(self) -> list[SweepRow]:
        return [r for r in self.rows if r.oracle == "undecided"]

    def exceptional_counts(self) -> dict[tuple[int, int], int]:
        """(cover genus, degree) -> number of oracle-unrealizable rows."""
        counts: dict[tuple[int, int], int] = {}
        for r in self.rows:
            key = (r.datum.cover.genus, r.datum.degree)
            counts.setdefault(key, 0)
            if r.exceptional:
                counts[key] += 1
        return counts

    @property
    def exit_code(self) -> int:
        if self.disagreements:
            return 1
        if self.undecided:
            return 3
        return 0

    def to_json(self) -> dict:
        return {
            "dmax": self.dmax,
            "family": self.family,
            "genus_max": self.genus_max,
            "rows": [r.to_json() for r in self.rows],
            "summary": {
                "data": len(self.rows),
                "disagreements": len(self.disagreements),
                "undecided": len(self.undecided),
                "exceptional": [
                    {"cover_genus": g, "degree": d, "count": c} for (g, d), c in sorted(self.exceptional_counts().items())
                ],
            },
        }

    def table(self) -> str:
        lines = [f"{'datum':<48} {'classifier':<26} {'oracle':<12} agree"]
        for r in self.rows:
            cls = r.classifier if r.rule is None else f"{r.classifier}:{r.rule}"
            mark = {True: "yes", False: "NO", None: "-"}[r.agrees]
            lines.append(f"{str(r.datum):<48} {cls:<26} {r.oracle:<12} {mark}")
        lines.append(
            f"{len(self.rows)} data, {len(self.disagreements)} disagreements, {len(self.undecided)} undecided"
        )
        for (g, d), c in sorted(self.exceptional_counts().items()):
            if c:
                lines.append(f"  genus {g}, degree {d}: {c} exceptional")
        return "\n".join(lines)


def family_data(family: str, dmax: int, genus_max: int, genus_min: int = 0, dmin: int = 2) -> Iterator[BranchDatum]:
    """Compatible data ``(gT, S, 3, d, ...)`` of the family, by genus then degree."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    for g in range(genus_min, genus_max + 1):
        if family == "d-1-1" and g > 0:
            continue
        for d in range(dmin, dmax + 1):
            if family == "d-2-2":
                if d < 4:
                    continue
                first = Partition((d - 2, 2))
            elif family == "d-1-1":
                first = Partition((d - 1, 1))
            else:
                first = None
            yield from enumerate_compatible(SPHERE, orientable(g), 3, d, first)


def _row(datum: BranchDatum, budget: int | None, timing: bool) -> SweepRow:
    start = time.perf_counter()
    c = classify(datum)
    try:
        oracle = decide(datum, budget=budget).status
    except BudgetExceeded:
        oracle = "undecided"
    seconds = time.perf_counter() - start if timing else None
    return SweepRow(datum, c.decision, c.rule, c.family, oracle, seconds)


def run_sweep(
    dmax: int,
    family: str = "d-2-2",
    genus_max: int = 0,
    genus_min: int = 0,
    dmin: int = 2,
    budget: int | None = None,
    workers: int = 1,
    timing: bool = False,
    parity: str | None = None,
) -> SweepReport:
    """Rows come out in enumeration order whatever the worker count.

    ``parity`` ("odd" or "even") keeps only degrees of that parity.
    """
    if dmax < 2:
        raise ValueError("dmax must be at least 2")
    data = list(family_data(family, dmax, genus_max, genus_min, dmin))
    if parity is not None:
        want = 1 if parity == "odd" else 0
        data = [x for x in data if x.degree % 2 == want]
    report = SweepReport(dmax, family, genus_max)
    if workers <= 1:
        report.rows = [_row(x, budget, timing) for x in data]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            report.rows = list(pool.map(lambda x: _row(x, budget, timing), data))
    return report
