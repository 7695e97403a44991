"""Branch data and the five compatibility conditions.

A branch datum is the 5-tuple (cover surface, base surface, n, d, partitions)
describing a candidate branched covering. Everything else in the package
takes one of these as input.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence


class Partition(tuple):
    """Non-increasing tuple of positive integers.

    The constructor sorts, so ``Partition([2, 3]) == (3, 2)``. Use
    :func:`parse_partition` when unsorted input should be an error.
    """

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(x) for x in parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if any(x < 1 for x in parts):
            raise ValueError(f"partition parts must be positive, got {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def parse_partition(parts: Sequence[int], degree: int | None = None, index: int | None = None) -> Partition:
    where = f"partition {index}" if index is not None else "partition"
    parts = list(parts)
    if not parts:
        raise ValueError(f"{where} is empty")
    if any(not isinstance(x, int) or isinstance(x, bool) or x < 1 for x in parts):
        raise ValueError(f"{where} {parts} has a non-positive or non-integer part")
    if parts != sorted(parts, reverse=True):
        raise ValueError(f"{where} {parts} is not sorted non-increasingly")
    if degree is not None and sum(parts) != degree:
        raise ValueError(f"{where} {parts} sums to {sum(parts)}, expected degree {degree}")
    return Partition(parts)


@dataclass(frozen=True)
class SurfaceClass:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if not self.orientable and self.genus == 0:
            raise ValueError("a non-orientable surface has genus at least 1")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    @property
    def is_sphere(self) -> bool:
        return self.orientable and self.genus == 0

    def to_json(self) -> dict:
        return {"orientable": self.orientable, "genus": self.genus}

    def __str__(self) -> str:
        if self.orientable:
            return {0: "S", 1: "T"}.get(self.genus, f"{self.genus}T")
        return "P" if self.genus == 1 else f"{self.genus}P"


SPHERE = SurfaceClass(True, 0)
TORUS = SurfaceClass(True, 1)


def orientable(genus: int) -> SurfaceClass:
    return SurfaceClass(True, genus)


@dataclass(frozen=True)
class BranchDatum:
    cover: SurfaceClass
    base: SurfaceClass
    degree: int
    partitions: tuple[Partition, ...] = field(default=())

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError(f"degree must be at least 2, got {self.degree}")
        parts = tuple(Partition(p) for p in self.partitions)
        object.__setattr__(self, "partitions", parts)
        for i, p in enumerate(parts):
            if p.degree != self.degree:
                raise ValueError(f"partition {i} {p!r} does not sum to degree {self.degree}")

    @classmethod
    def over_sphere(cls, cover_genus: int, partitions: Sequence[Sequence[int]], degree: int | None = None) -> "BranchDatum":
        """Datum with orientable cover of the given genus and base S^2."""
        if degree is None:
            if not partitions:
                raise ValueError("degree is required when there are no partitions")
            degree = sum(partitions[0])
        return cls(orientable(cover_genus), SPHERE, degree, tuple(Partition(p) for p in partitions))

    @property
    def n(self) -> int:
        return len(self.partitions)

    @property
    def n_tilde(self) -> int:
        return sum(len(p) for p in self.partitions)

    def with_partitions(self, partitions: Sequence[Sequence[int]]) -> "BranchDatum":
        return BranchDatum(self.cover, self.base, self.degree, tuple(Partition(p) for p in partitions))

    def to_json(self) -> dict:
        return {
            "cover": self.cover.to_json(),
            "base": self.base.to_json(),
            "degree": self.degree,
            "partitions": [list(p) for p in self.partitions],
        }

    def __str__(self) -> str:
        parts = "".join("," + repr(p) for p in self.partitions)
        return f"({self.cover},{self.base},{self.n},{self.degree}{parts})"


def _parse_surface(obj: Any, name: str) -> SurfaceClass:
    if not isinstance(obj, dict) or "orientable" not in obj or "genus" not in obj:
        raise ValueError(f"{name} must be an object with 'orientable' and 'genus'")
    if not isinstance(obj["orientable"], bool) or not isinstance(obj["genus"], int):
        raise ValueError(f"{name} has malformed fields")
    return SurfaceClass(obj["orientable"], obj["genus"])


def datum_from_json(obj: Any) -> BranchDatum:
    """Strict parser; the diagnostic names the offending partition index."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise ValueError("branch datum must be a JSON object")
    for key in ("cover", "base", "degree", "partitions"):
        if key not in obj:
            raise ValueError(f"branch datum is missing '{key}'")
    degree = obj["degree"]
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 2:
        raise ValueError(f"degree must be an integer >= 2, got {degree!r}")
    if not isinstance(obj["partitions"], list):
        raise ValueError("'partitions' must be a list")
    parts = []
    for i, p in enumerate(obj["partitions"]):
        if not isinstance(p, list):
            raise ValueError(f"partition {i} is not a list")
        parts.append(parse_partition(p, degree, i))
    return BranchDatum(_parse_surface(obj["cover"], "cover"), _parse_surface(obj["base"], "base"), degree, tuple(parts))


# ---------------------------------------------------------------------------
# refinement and compatibility


def refines(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff the parts of ``p`` group into blocks summing to the parts of ``q``."""
    if sum(p) != sum(q):
        raise ValueError(f"refines: degrees differ ({sum(p)} vs {sum(q)})")
    parts = sorted(p, reverse=True)
    bins = sorted(q, reverse=True)

    def place(i: int) -> bool:
        if i == len(parts):
            return True
        tried = set()
        for b in range(len(bins)):
            room = bins[b]
            # equal leftover capacities are interchangeable
            if room < parts[i] or room in tried:
                continue
            tried.add(room)
            bins[b] -= parts[i]
            if place(i + 1):
                bins[b] += parts[i]
                return True
            bins[b] += parts[i]
        return False

    return place(0)


@dataclass(frozen=True)
class ConditionResult:
    number: int
    passed: bool
    statement: str
    detail: str = ""


@dataclass(frozen=True)
class CompatibilityReport:
    conditions: tuple[ConditionResult, ...]

    @property
    def compatible(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def failed(self) -> list[int]:
        return [c.number for c in self.conditions if not c.passed]

    def to_json(self) -> dict:
        return {
            "compatible": self.compatible,
            "conditions": [
                {"number": c.number, "passed": c.passed, "statement": c.statement, "detail": c.detail}
                for c in self.conditions
            ],
        }


def check_compatibility(datum: BranchDatum) -> CompatibilityReport:
    d, n, nt = datum.degree, datum.n, datum.n_tilde
    chi_cover = datum.cover.euler_characteristic
    chi_base = datum.base.euler_characteristic
    lhs, rhs = chi_cover - nt, d * (chi_base - n)
    results = [
        ConditionResult(1, lhs == rhs, "chi(cover) - n~ = d (chi(base) - n)", f"{lhs} vs {rhs}"),
        ConditionResult(2, (n * d - nt) % 2 == 0, "n d - n~ is even", f"n d - n~ = {n * d - nt}"),
        ConditionResult(
            3,
            not datum.base.orientable or datum.cover.orientable,
            "orientable base forces orientable cover",
        ),
        ConditionResult(
            4,
            datum.base.orientable or d % 2 == 0 or not datum.cover.orientable,
            "non-orientable base and odd degree force non-orientable cover",
        ),
    ]
    cond5 = True
    detail = ""
    if not datum.base.orientable and datum.cover.orientable:
        if d % 2:
            cond5, detail = False, "odd degree has no (d/2,d/2)"
        else:
            half = (d // 2, d // 2)
            bad = [i for i, p in enumerate(datum.partitions) if not refines(p, half)]
            cond5 = not bad
            if bad:
                detail = f"partitions {bad} do not refine (d/2,d/2)"
    results.append(
        ConditionResult(
            5,
            cond5,
            "non-orientable base with orientable cover: every partition refines (d/2,d/2)",
            detail,
        )
    )
    return CompatibilityReport(tuple(results))


def is_compatible(datum: BranchDatum) -> bool:
    return check_compatibility(datum).compatible


# ---------------------------------------------------------------------------
# enumeration


def partitions_of(d: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``d`` in lexicographically increasing order."""
    if max_part is None:
        max_part = d

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(1, min(rest, cap) + 1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for p in rec(d, max_part):
        yield Partition(p)


def enumerate_compatible(
    base: SurfaceClass,
    cover: SurfaceClass,
    n: int,
    d: int,
    first_partition_filter: Sequence[int] | None = None,
) -> Iterator[BranchDatum]:
    """Every compatible datum with the given frame, each multiset of partitions once.

    Partitions after the (optional) fixed first one are listed in increasing
    lexicographic order.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    if n < 0:
        raise ValueError("n must be non-negative")
    # Riemann-Hurwitz pins the total preimage count
    target_nt = cover.euler_characteristic - d * (base.euler_characteristic - n)
    pool = list(partitions_of(d))
    if first_partition_filter is not None:
        first = Partition(first_partition_filter)
        if first.degree != d or n < 1:
            return
        prefix: tuple[Partition, ...] = (first,)
        free = n - 1
    else:
        prefix = ()
        free = n
    for combo in itertools.combinations_with_replacement(pool, free):
        parts = prefix + tuple(combo)
        if sum(len(p) for p in parts) != target_nt:
            continue
        datum = BranchDatum(cover, base, d, parts)
        if is_compatible(datum):
            yield datum
