"""Closed-form upper bounds G_E(n) on the minimum monochromatic solution count.

Every bound is evaluated in exact rational arithmetic (fractions.Fraction)
and floored at the end; no floating point enters any value.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import Optional

from .equations import LinearEquation

__all__ = [
    "FormulaId",
    "BoundReport",
    "g_ax_ay",
    "g_ax_ay_table_variants",
    "g_ax_minus_ay",
    "g_x_y_az",
    "g_ax_by",
    "popoviciu_count",
]


class FormulaId(enum.Enum):
    AX_AY_SUM = "ax+ay=z"
    AX_AY_DIFF = "ax-ay=z"
    X_Y_AZ_ODD = "x+y=az, a in {3,5}"
    X_Y_AZ_BLOCK = "x+y=az, a=4 or a>=6"
    AX_BY_POPOVICIU = "ax+by=z, gcd(a,b)=1"


@dataclass(frozen=True)
class BoundReport:
    equation: LinearEquation
    n: int
    bound_value: int
    formula_id: FormulaId
    exact_rational_value: Fraction
    empty_range: bool = field(default=False)

    def __post_init__(self):
        assert self.bound_value == floor(self.exact_rational_value)


def g_ax_ay(n: int, a: int) -> BoundReport:
    """floor(n^2/(2a^4) + n/(2a^2)) for ax+ay=z."""
    if a < 2 or n < 1:
        raise ValueError("need a >= 2 and n >= 1")
    exact = Fraction(n * n, 2 * a**4) + Fraction(n, 2 * a * a)
    return BoundReport(LinearEquation(a, a, 1), n, floor(exact), FormulaId.AX_AY_SUM, exact)


def g_ax_ay_table_variants(n: int, a: int) -> dict[str, int]:
    """The three floor values relevant to table reconciliation for ax+ay=z.

    "plus" is the theorem bound n^2/2a^4 + n/2a^2, "minus" the caption variant
    n^2/2a^4 - n/2a^2, "quadratic" the pure term n^2/2a^4.
    """
    q = Fraction(n * n, 2 * a**4)
    lin = Fraction(n, 2 * a * a)
    return {
        "plus": floor(q + lin),
        "minus": floor(q - lin),
        "quadratic": floor(q),
    }


def g_ax_minus_ay(n: int, a: int) -> BoundReport:
    """floor(n^2/a^3 - n^2/(2a^4) - n/(2a^2)) for ax-ay=z."""
    if a < 2 or n < 1:
        raise ValueError("need a >= 2 and n >= 1")
    exact = (
        Fraction(n * n, a**3) - Fraction(n * n, 2 * a**4) - Fraction(n, 2 * a * a)
    )
    return BoundReport(LinearEquation(a, -a, 1), n, floor(exact), FormulaId.AX_AY_DIFF, exact)


def g_x_y_az(n: int, a: int) -> BoundReport:
    """Bound for x+y=az: n^2/(4a^2) when a is 3 or 5, else 8(2a-1)n^2/(a^4(4+a))."""
    if a < 3:
        raise ValueError("need a >= 3")
    if a in (3, 5):
        exact = Fraction(n * n, 4 * a * a)
        fid = FormulaId.X_Y_AZ_ODD
    else:
        exact = Fraction(8 * (2 * a - 1) * n * n, a**4 * (4 + a))
        fid = FormulaId.X_Y_AZ_BLOCK
    return BoundReport(LinearEquation(1, 1, a), n, floor(exact), fid, exact)


def popoviciu_count(a: int, b: int, z: int) -> int:
    """Number of (k, l) with k, l >= 0 and a*k + b*l = z, for coprime a, b.

    Evaluates z/(ab) - {b^{-1}z/a} - {a^{-1}z/b} + 1 exactly, where the
    inverses are mod a and mod b; any inverse representative gives the same
    fractional parts.
    """
    if a < 1 or b < 1 or z < 0:
        raise ValueError("need a, b >= 1 and z >= 0")
    if gcd(a, b) != 1:
        raise ValueError("a and b must be coprime")
    b_inv = pow(b, -1, a) if a > 1 else 0
    a_inv = pow(a, -1, b) if b > 1 else 0
    val = Fraction(z, a * b) - _frac(Fraction(b_inv * z, a)) - _frac(Fraction(a_inv * z, b)) + 1
    assert val.denominator == 1 and val >= 0
    return int(val)


def _frac(q: Fraction) -> Fraction:
    return q - floor(q)


def g_ax_by(n: int, a: int, b: int) -> BoundReport:
    """Sum of popoviciu_count(a, b, z) for z from a+b to floor(n/(a(a+b)))."""
    if not (1 <= a < b) or gcd(a, b) != 1:
        raise ValueError("need 1 <= a < b with gcd(a,b) = 1")
    hi = n // (a * (a + b))
    total = sum(popoviciu_count(a, b, z) for z in range(a + b, hi + 1))
    return BoundReport(
        LinearEquation(a, b, 1),
        n,
        total,
        FormulaId.AX_BY_POPOVICIU,
        Fraction(total),
        empty_range=hi < a + b,
    )
