"""Linear equations a*x + b*y = c*z over [1,n] and coloring-based solution counts.

A solution is an ordered triple (x, y, z) in [1,n]^3; (x, y, z) and (y, x, z)
are distinct solutions whenever x != y.  Every counting routine here is exact
integer arithmetic (no floating point), and all functions are pure.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterator, NamedTuple, Optional

import numpy as np

__all__ = [
    "LinearEquation",
    "Coloring",
    "SolutionTriple",
    "PairCounts",
    "enumerate_solutions",
    "total_solutions",
    "count_monochromatic",
    "dichromatic_pair_counts",
    "rado_threshold",
]


_EQ_RE = re.compile(
    r"^(?P<a>[+-]?\d*)\*?x(?P<b>[+-]\d*)\*?y=(?P<c>[+-]?\d*)\*?z$"
)


def _coef(text: str) -> int:
    if text in ("", "+"):
        return 1
    if text == "-":
        return -1
    return int(text)


@dataclass(frozen=True)
class LinearEquation:
    """Equation coeff_x*x + coeff_y*y = coeff_z*z with nonzero integer coefficients.

    Canonical form has coeff_z > 0 (both sides are negated on construction if
    necessary).  E.g. ax - ay = z is LinearEquation(a, -a, 1).
    """

    coeff_x: int
    coeff_y: int
    coeff_z: int

    def __post_init__(self):
        if 0 in (self.coeff_x, self.coeff_y, self.coeff_z):
            raise ValueError("all three coefficients must be nonzero")
        if self.coeff_z < 0:
            object.__setattr__(self, "coeff_x", -self.coeff_x)
            object.__setattr__(self, "coeff_y", -self.coeff_y)
            object.__setattr__(self, "coeff_z", -self.coeff_z)

    @classmethod
    def parse(cls, text: str) -> "LinearEquation":
        """Parse the surface syntax, e.g. "3x-3y=z", "x+y=2z", "2*x+5*y=z"."""
        compact = re.sub(r"\s+", "", text)
        m = _EQ_RE.match(compact)
        if m is None:
            raise ValueError(f"cannot parse equation {text!r}")
        return cls(_coef(m.group("a")), _coef(m.group("b")), _coef(m.group("c")))

    def __str__(self) -> str:
        def term(c, var, lead):
            if c < 0:
                sign, mag = "-", -c
            else:
                sign, mag = ("" if lead else "+"), c
            coef = "" if mag == 1 else str(mag)
            return f"{sign}{coef}{var}"

        return f"{term(self.coeff_x, 'x', True)}{term(self.coeff_y, 'y', False)}={term(self.coeff_z, 'z', True)}"


class SolutionTriple(NamedTuple):
    x: int
    y: int
    z: int


class PairCounts(NamedTuple):
    """Dichromatic pair counts for the position pairs (x,y), (x,z), (y,z)."""

    d_xy: int
    d_xz: int
    d_yz: int


class Coloring:
    """Assignment of colors {0..k-1} to the integers 1..n.

    assignment[i] is the color of the integer i+1.  Stored as a small numpy
    array; instances are treated as immutable.
    """

    __slots__ = ("n", "k", "assignment")

    def __init__(self, k: int, assignment):
        arr = np.asarray(assignment, dtype=np.int8)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("assignment must be a nonempty 1-d sequence")
        if k < 1:
            raise ValueError("need at least one color")
        if arr.min() < 0 or arr.max() >= k:
            raise ValueError(f"colors must lie in [0, {k - 1}]")
        self.n = int(arr.size)
        self.k = int(k)
        self.assignment = arr
        arr.setflags(write=False)

    @classmethod
    def constant(cls, n: int, k: int = 1, color: int = 0) -> "Coloring":
        return cls(k, np.full(n, color, dtype=np.int8))

    def color_of(self, i: int) -> int:
        """Color of the integer i (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"{i} outside [1, {self.n}]")
        return int(self.assignment[i - 1])

    def relabeled(self, perm) -> "Coloring":
        """Apply a permutation of the color labels."""
        table = np.asarray(perm, dtype=np.int8)
        return Coloring(self.k, table[self.assignment])

    def __eq__(self, other):
        return (
            isinstance(other, Coloring)
            and self.k == other.k
            and np.array_equal(self.assignment, other.assignment)
        )

    def __hash__(self):
        return hash((self.k, self.assignment.tobytes()))

    def __repr__(self):
        body = "".join(str(c) for c in self.assignment[:40])
        if self.n > 40:
            body += "..."
        return f"Coloring(n={self.n}, k={self.k}, {body})"


def _count_in_ap(lo: int, hi: int, r: int, m: int) -> int:
    """Number of y in [lo, hi] with y congruent to r mod m (m >= 1)."""
    if hi < lo:
        return 0
    return (hi - r) // m - (lo - 1 - r) // m


def _y_window(eq: LinearEquation, x: int, n: int) -> tuple[int, int, int, int]:
    """For fixed x, the y-range and residue class producing z in [1, n].

    Returns (lo, hi, r, m): the solutions are exactly the y in [lo, hi] with
    y = r (mod m); the range is already intersected with [1, n].
    """
    a, b, c = eq.coeff_x, eq.coeff_y, eq.coeff_z
    g = gcd(b, c)
    if (a * x) % g:
        return 1, 0, 0, 1
    m = c // g
    # solve (b/g) * y = -(a*x)/g  (mod c/g)
    if m == 1:
        r = 0
    else:
        r = ((-a * x) // g) % m
        r = (r * pow((b // g) % m, -1, m)) % m
    # 1 <= (a x + b y)/c <= n
    lo_num, hi_num = c - a * x, c * n - a * x
    if b > 0:
        lo = -((-lo_num) // b)  # ceil division
        hi = hi_num // b
    else:
        lo = -((-hi_num) // b)
        hi = lo_num // b
    return max(lo, 1), min(hi, n), r, m


def enumerate_solutions(eq: LinearEquation, n: int) -> Iterator[SolutionTriple]:
    """Yield every ordered solution (x, y, z) in [1,n]^3, lexicographic in (x, y)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b, c = eq.coeff_x, eq.coeff_y, eq.coeff_z
    for x in range(1, n + 1):
        lo, hi, r, m = _y_window(eq, x, n)
        if hi < lo:
            continue
        y = lo + (r - lo) % m
        while y <= hi:
            yield SolutionTriple(x, y, (a * x + b * y) // c)
            y += m


def solution_arrays(eq: LinearEquation, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All solutions as three parallel int64 arrays (xs, ys, zs)."""
    a, b, c = eq.coeff_x, eq.coeff_y, eq.coeff_z
    xs_parts, ys_parts = [], []
    for x in range(1, n + 1):
        lo, hi, r, m = _y_window(eq, x, n)
        if hi < lo:
            continue
        start = lo + (r - lo) % m
        if start > hi:
            continue
        ys = np.arange(start, hi + 1, m, dtype=np.int64)
        xs_parts.append(np.full(ys.size, x, dtype=np.int64))
        ys_parts.append(ys)
    if not xs_parts:
        e = np.empty(0, dtype=np.int64)
        return e, e.copy(), e.copy()
    xs = np.concatenate(xs_parts)
    ys = np.concatenate(ys_parts)
    zs = (a * xs + b * ys) // c
    return xs, ys, zs


def total_solutions(eq: LinearEquation, n: int) -> int:
    """T_E(n): number of ordered solutions in [1,n]^3.  O(n) integer counting."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    for x in range(1, n + 1):
        lo, hi, r, m = _y_window(eq, x, n)
        total += _count_in_ap(lo, hi, r, m)
    return total


def count_monochromatic(eq: LinearEquation, coloring: Coloring) -> int:
    """Number of solutions with x, y, z all the same color."""
    xs, ys, zs = solution_arrays(eq, coloring.n)
    col = coloring.assignment
    cx, cy, cz = col[xs - 1], col[ys - 1], col[zs - 1]
    return int(np.count_nonzero((cx == cy) & (cy == cz)))


def dichromatic_pair_counts(eq: LinearEquation, coloring: Coloring) -> PairCounts:
    """Counts of differently-colored (x,y), (x,z), (y,z) pairs over all solutions.

    Only defined for 2-colorings.  In a 3-variable linear equation each
    position pair determines the third variable, so pair counts and
    per-solution counts coincide, and (d_xy + d_xz + d_yz) / 2 equals the
    number of non-monochromatic solutions.
    """
    if coloring.k != 2:
        raise ValueError("pair counts are defined for 2-colorings only")
    xs, ys, zs = solution_arrays(eq, coloring.n)
    col = coloring.assignment
    cx, cy, cz = col[xs - 1], col[ys - 1], col[zs - 1]
    return PairCounts(
        int(np.count_nonzero(cx != cy)),
        int(np.count_nonzero(cx != cz)),
        int(np.count_nonzero(cy != cz)),
    )


_SPORADIC_RADO = {
    (2, 5): 103,
    (2, 7): 169,
    (3, 5): 197,
    (2, 4): 76,
    (2, 6): 134,
    (2, 8): 208,
    (3, 6): 249,
}


def rado_threshold(eq: LinearEquation) -> Optional[int]:
    """Known 2-color Rado number for this equation, or None.

    Covers ax+ay=z (4a^3+a), ax-ay=z for a >= 2 (a^2), and a handful of
    ax+by=z values embedded from published computations.  Absence means
    "not known here", never "does not exist".
    """
    a, b, c = eq.coeff_x, eq.coeff_y, eq.coeff_z
    if c != 1:
        return None
    if a == b and a >= 1:
        return 4 * a**3 + a
    if a == -b and abs(a) >= 2:
        return abs(a) ** 2
    if a > 0 and b > 0:
        return _SPORADIC_RADO.get((a, b))
    return None
