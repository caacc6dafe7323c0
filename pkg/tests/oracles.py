"""Independent floating-point oracles used to cross-check exact results."""

import cmath
from fractions import Fraction

import numpy as np


def to_complex(x) -> complex:
    """Numerical value of an exact scalar (rational or cyclotomic)."""
    if isinstance(x, (int, Fraction)):
        return complex(x)
    n = x.field.conductor
    return sum(float(c) * cmath.exp(2j * cmath.pi * k / n) for k, c in enumerate(x.coeffs))


def zeta(n: int, k: int) -> complex:
    return cmath.exp(2j * cmath.pi * k / n)


def matrix_to_numpy(M) -> np.ndarray:
    out = np.zeros((M.n, M.n), dtype=complex)
    for (i, j), v in M.entries.items():
        out[i, j] = to_complex(v)
    return out


def numeric_rank(mats) -> int:
    rows = np.array([matrix_to_numpy(M).ravel() for M in mats])
    return int(np.linalg.matrix_rank(rows, tol=1e-8))


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9
