"""Independent reference values used across the test-suite.

Everything here is computed from first principles (closed trig formulas,
hand-derived tables) rather than through the package under test.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath



def theta(m: int, k: int):
    return mpmath.pi * m / (2 * k)


def bracket_float(m: int, k: int, x) -> complex:
    t = float(theta(m, k))
    import math

    return math.sin(x * t) / math.sin(t)


def brace_float(m: int, k: int, x) -> complex:
    import math

    t = float(theta(m, k))
    return math.cos(x * t) / math.cos(t)


def verma_coefficient_float(m: int, k: int, p, n: int) -> float:
    if n == 0:
        return 0.0
    if n % 2 == 0:
        return bracket_float(m, k, n) * brace_float(m, k, n + p - 1)
    return bracket_float(m, k, n + p - 1) * brace_float(m, k, n)


def table_rows(m: int, k: int, grid) -> set[tuple[Fraction, int]]:
    """(p, L) pairs listed by the unitarizable table for an admissible (m, k).

    Row (1) is read as 0 < p < 2 on the grid (p = 2 is a boundary point).
    """
    out: set[tuple[Fraction, int]] = set()
    if m == 1 and k % 2 == 1:
        out |= {(Fraction(p), k - 1) for p in grid if 0 < p < 2}
        out |= {(Fraction(p), k - p) for p in range(2, k, 2)}
    if m == 1 and k % 2 == 0:
        out |= {(Fraction(p), k - p) for p in range(1, k, 2)}
    if m % 4 == 1:
        out.add((Fraction(k - 1), 1))
    if m % 4 == 3:
        out.add((Fraction(3 * k - 1), 1))
    if m == 3 and k % 2 == 0 and k >= 10:
        out.add((Fraction(3 * k - 3), 3))
    return out


def l_table(m: int, k: int, p: int) -> int:
    """Hand-written copy of the top-index tables, used to cross-check ``closed_form_L``."""
    if k % 2 == 0:
        if p % 2 == 0:
            return 2 * k - p if p <= 2 * k else 4 * k - p
        ranges = [(1, k - 1, k), (k + 3, 3 * k - 1, 3 * k), (3 * k + 3, 4 * k - 1, 5 * k)]
        if p in (k + 1, 3 * k + 1):
            return 2 * k - 1
    elif m % 2 == 1:
        if p % 2 == 1 or p in (k + 1, 3 * k + 1):
            return k - 1
        ranges = [(2, k - 1, k), (k + 3, 2 * k, 2 * k), (2 * k + 2, 3 * k - 1, 3 * k), (3 * k + 3, 4 * k, 4 * k)]
    else:
        if p % 2 == 0:
            return 2 * k - p
        ranges = [(1, k, k)] + ([(k + 2, 2 * k - 1, 3 * k)] if m % 4 == 2 else [])
    for lo, hi, c in ranges:
        if lo <= p <= hi:
            return c - p
    raise KeyError((m, k, p))
