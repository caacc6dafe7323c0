"""Exact computer algebra for trigonometric Lie algebras and covariant affine algebras."""

from .core import Element, LieOracle, LinearMap, kernel_on_window, fixed_point_span, row_reduce
from .fields import QQ, QQ_q, CyclotomicField, zeta_power
from .groups import Character, CyclicGroup, FreeZ, parse_group, transversal, two_torsion
from .report import CheckRecord, Report
from .suites import REGISTRY, SuiteConfig, run

__all__ = [
    "Element", "LieOracle", "LinearMap", "kernel_on_window", "fixed_point_span", "row_reduce",
    "QQ", "QQ_q", "CyclotomicField", "zeta_power",
    "Character", "CyclicGroup", "FreeZ", "parse_group", "transversal", "two_torsion",
    "CheckRecord", "Report", "REGISTRY", "SuiteConfig", "run",
]
