"""Branched coverings of the sphere: compatibility, realizability and combinatorial witnesses."""

from hurwitz.branch_data import (
    SPHERE,
    TORUS,
    BranchDatum,
    CompatibilityReport,
    Partition,
    SurfaceClass,
    check_compatibility,
    datum_from_json,
    enumerate_compatible,
    orientable,
    refines,
)
from hurwitz.classifier import Classification, classify, non_refining_partitions
from hurwitz.oracle import BudgetExceeded, Constellation, Decision, UnsupportedDatum, count_classes, decide, verify

__version__ = "0.1.0"

__all__ = [
    "SPHERE",
    "TORUS",
    "BranchDatum",
    "BudgetExceeded",
    "Classification",
    "CompatibilityReport",
    "Constellation",
    "Decision",
    "Partition",
    "SurfaceClass",
    "UnsupportedDatum",
    "check_compatibility",
    "classify",
    "count_classes",
    "datum_from_json",
    "decide",
    "enumerate_compatible",
    "non_refining_partitions",
    "orientable",
    "refines",
    "verify",
]
