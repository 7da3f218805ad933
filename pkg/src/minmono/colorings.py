"""Named coloring constructions and the run-length block notation codec.

Block notation writes a coloring as a word of units like ``0^3(10)^2 1^2 0``:
an atom is a single color digit or a parenthesized group of digits, an
optional ``^m`` repeats it m times, whitespace between units is ignored.
An unbraced exponent is a single digit; larger exponents are braced as in
``0^{196}`` (strings of digits after ``^`` would otherwise be ambiguous,
e.g. ``1^20`` is one ``1^2`` unit followed by a ``0``).  Color 0 plays the
role of "red" and 1 of "blue" throughout.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

import numpy as np

from .equations import Coloring

__all__ = [
    "BlockNotationError",
    "SchurTuple",
    "decode_blocks",
    "encode_blocks",
    "multiples_coloring",
    "residue_coloring_odd_a",
    "two_block_coloring",
    "axby_block_coloring",
    "schur_tuple_coloring",
]


class BlockNotationError(ValueError):
    pass


_UNIT_RE = re.compile(r"(\d|\(\d+\))(?:\^(\d|\{\d+\}))?")


def decode_blocks(text: str, k: int = 2) -> Coloring:
    """Decode block notation into a Coloring with k colors."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise BlockNotationError("empty block notation")
    colors: list[int] = []
    pos = 0
    while pos < len(compact):
        m = _UNIT_RE.match(compact, pos)
        if m is None:
            raise BlockNotationError(f"malformed block notation at {compact[pos:]!r}")
        atom, exp = m.group(1), m.group(2)
        digits = atom.strip("()")
        reps = 1 if exp is None else int(exp.strip("{}"))
        if reps == 0:
            raise BlockNotationError("zero exponent is not allowed")
        unit = [int(d) for d in digits]
        if any(c >= k for c in unit):
            raise BlockNotationError(f"color digit >= k={k} in {atom!r}")
        colors.extend(unit * reps)
        pos = m.end()
    return Coloring(k, np.array(colors, dtype=np.int8))


def encode_blocks(coloring: Coloring) -> str:
    """Encode as maximal single-digit runs, e.g. 0001010110 -> "0^31010 1^2 0" sans spaces."""
    arr = coloring.assignment
    out = []
    i = 0
    while i < arr.size:
        j = i
        while j < arr.size and arr[j] == arr[i]:
            j += 1
        run = j - i
        if run == 1:
            exp = ""
        elif run < 10:
            exp = f"^{run}"
        else:
            exp = f"^{{{run}}}"
        out.append(str(int(arr[i])) + exp)
        i = j
    return "".join(out)


def multiples_coloring(a: int, n: int) -> Coloring:
    """Color 0 exactly on the multiples of a, color 1 elsewhere."""
    if a < 2:
        raise ValueError("a must be >= 2")
    arr = np.ones(n, dtype=np.int8)
    arr[a - 1 :: a] = 0
    return Coloring(2, arr)


def residue_coloring_odd_a(a: int, n: int) -> Coloring:
    """For odd a >= 3: red (0) on classes 1,3,...,a-2 (mod a) and a (mod 2a);
    blue (1) on classes 2,4,...,a-1 (mod a) and 0 (mod 2a)."""
    if a < 3 or a % 2 == 0:
        raise ValueError("a must be odd and >= 3")
    arr = np.empty(n, dtype=np.int8)
    for i in range(1, n + 1):
        r = i % a
        if r == 0:
            arr[i - 1] = 0 if i % (2 * a) == a else 1
        else:
            arr[i - 1] = 1 - (r % 2)
    return Coloring(2, arr)


def _round_half_up(q: Fraction) -> int:
    return floor(q + Fraction(1, 2))


def two_block_coloring(a: int, n: int) -> Coloring:
    """Red on [1,s] and [t,n] with s = 4n(a+1)/(a^2(4+a)), t = 2n/a (nearest ints)."""
    if a < 3:
        raise ValueError("a must be >= 3")
    s = _round_half_up(Fraction(4 * n * (a + 1), a * a * (4 + a)))
    t = _round_half_up(Fraction(2 * n, a))
    if s >= t:
        raise ValueError(f"degenerate blocks: s={s} >= t={t} at n={n}")
    arr = np.ones(n, dtype=np.int8)
    arr[:s] = 0
    arr[t - 1 :] = 0
    return Coloring(2, arr)


def axby_block_coloring(a: int, b: int, n: int) -> Coloring:
    """Red on [1, floor(n/(a(a+b)))] and [floor(n/a)+1, n], blue between."""
    if not (1 <= a < b):
        raise ValueError("need 1 <= a < b")
    if gcd(a, b) != 1:
        raise ValueError("a and b must be coprime")
    s = n // (a * (a + b))
    t = n // a + 1
    arr = np.ones(n, dtype=np.int8)
    arr[:s] = 0
    if t <= n:
        arr[t - 1 :] = 0
    return Coloring(2, arr)


@dataclass(frozen=True)
class SchurTuple:
    """Block lengths e_1..e_{2^k-1} (positive rationals) for the pattern P_k."""

    k: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != 2**self.k - 1:
            raise ValueError(f"need exactly {2 ** self.k - 1} entries for k={self.k}")
        if any(e <= 0 for e in entries):
            raise ValueError("entries must be positive")
        object.__setattr__(self, "entries", entries)

    @property
    def total(self) -> Fraction:
        """M = sum of the entries."""
        return sum(self.entries, Fraction(0))

    def as_ints(self) -> tuple[int, ...]:
        if any(e.denominator != 1 for e in self.entries):
            raise ValueError("tuple has non-integer entries")
        return tuple(int(e) for e in self.entries)


def schur_tuple_coloring(tup: SchurTuple, n: int) -> Coloring:
    """Block coloring with block i of color nu_2(i) and length ~ e_i*n/M.

    Block boundaries are cumulative floors floor(n * (e_1+..+e_i) / M), which
    partitions [1,n] exactly even when M does not divide n.
    """
    k = tup.k
    if n < 2**k - 1:
        raise ValueError(f"n={n} too small for {2 ** k - 1} blocks")
    m = tup.total
    arr = np.empty(n, dtype=np.int8)
    prev = 0
    acc = Fraction(0)
    for i, e in enumerate(tup.entries, start=1):
        acc += e
        bound = floor(n * acc / m)
        color = (i & -i).bit_length() - 1  # nu_2(i)
        arr[prev:bound] = color
        prev = bound
    return Coloring(k, arr)
