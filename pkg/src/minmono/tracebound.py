"""Quadratic-form lower bounds on M_E(n) with diagonal PSD certificates.

The number of non-monochromatic solutions of a 2-coloring is bounded above by
a quadratic form in interval occupation variables x in [-1,1]^dim, giving

    mu_chi(E, n) / n^2  >=  (base_constant - alpha) + x^T A x - O(1/n),

where A is an exact rational matrix (the n^2-coefficient form stored in
QuadraticFormModel).  A diagonal vector d >= 0 with A + diag(d) positive
semidefinite certifies x^T A x >= -sum(d), hence the machine-checked bound

    M_E(n)  >=  (base_constant - alpha - sum(d)) * n^2 - O(n).

This module rebuilds the forms for the supported families, loads the bundled
certificates, and verifies them (exactly for rational certificates, in double
precision for the decimal one).  Searching for new certificates by solving
SDPs is out of scope; only verification happens here.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from .geometry import Region2D, clip_fraction
from .psd import exact_psd_check, numeric_min_eigenvalue

__all__ = [
    "Exactness",
    "QuadraticFormModel",
    "PsdCertificate",
    "VerificationResult",
    "CertificateError",
    "build_qf_schur_example",
    "build_qf_ax_minus_ay",
    "build_qf_x_y_3z",
    "verify_certificate",
    "load_certificate",
    "lower_bound",
]


class Exactness(enum.Enum):
    EXACT = "EXACT"
    NUMERIC = "NUMERIC"


class CertificateError(RuntimeError):
    """A bundled or supplied certificate failed verification."""


@dataclass(frozen=True)
class QuadraticFormModel:
    """Lower-bound form: mu/n^2 >= (base_constant - alpha) + x^T A x."""

    dim: int
    A: tuple  # dim x dim nested tuple of Fractions, symmetric
    alpha: Fraction
    base_constant: Fraction
    variable_labels: tuple

    def __post_init__(self):
        assert len(self.variable_labels) == self.dim
        assert len(self.A) == self.dim and all(len(r) == self.dim for r in self.A)
        for i in range(self.dim):
            for j in range(i):
                assert self.A[i][j] == self.A[j][i]


@dataclass(frozen=True)
class PsdCertificate:
    """Diagonal certificate: entries * (scale_num/scale_den) is the d vector."""

    entries: tuple  # Fractions (EXACT) or decimal strings (NUMERIC)
    scale: Fraction
    exactness: Exactness

    @property
    def dim(self) -> int:
        return len(self.entries)

    def effective(self) -> list[Fraction]:
        """d_i as exact rationals (decimal strings convert exactly)."""
        return [Fraction(e) * self.scale for e in self.entries]


@dataclass(frozen=True)
class VerificationResult:
    verdict: bool
    bound_coefficient: Fraction
    min_eig_estimate: float | None


def _symmetrize(raw: list[list[Fraction]]) -> tuple:
    n = len(raw)
    return tuple(
        tuple((raw[i][j] + raw[j][i]) / 2 for j in range(n)) for i in range(n)
    )


def _cell(i: int, j: int, k: int) -> tuple:
    return (Fraction(i - 1, k), Fraction(i, k), Fraction(j - 1, k), Fraction(j, k))


def build_qf_ax_minus_ay(a: int, k: int | None = None) -> QuadraticFormModel:
    """Form for ax - ay = z on a k-interval split (k divisible by a).

    Interval i carries two variables: x_i for the non-multiples of a and y_i
    for the multiples.  Grid cells are classified against each solution-pair
    region purely by their exact overlap fraction: full cells contribute the
    complete dichromatic cross products, partly covered cells keep only the
    same-class cross terms plus the fraction-weighted mixed-pair constant.
    """
    if not 3 <= a <= 7:
        raise ValueError("supported for 3 <= a <= 7")
    if k is None:
        k = 54 if a == 3 else a * a
    if k % a:
        raise ValueError("k must be divisible by a")
    w1 = Fraction(a - 1, a * k)  # non-multiples per interval, as a fraction of n
    w2 = Fraction(1, a * k)  # multiples per interval

    region_xy = Region2D([(-1, 1, 0), (1, -1, Fraction(1, a))])  # 0 <= u-v <= 1/a
    region_xz = Region2D([(-a, 1, 0)])  # v <= a*u
    region_yz = Region2D([(a, 1, a)])  # a*u + v <= a

    dim = 2 * k
    A = [[Fraction(0)] * dim for _ in range(dim)]
    alpha = Fraction(0)
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    def xi(i):
        return i - 1

    def yi(i):
        return k + i - 1

    for i in range(1, k + 1):
        for j in range(1, k + 1):
            cell = _cell(i, j, k)
            f = clip_fraction(region_xy, cell)
            if f == 1:
                alpha += half * (w1 + w2) ** 2 / 2
                # (w1 x_i + w2 y_i)(w1 x_j + w2 y_j) / 4
                A[xi(i)][xi(j)] += quarter * w1 * w1
                A[xi(i)][yi(j)] += quarter * w1 * w2
                A[yi(i)][xi(j)] += quarter * w2 * w1
                A[yi(i)][yi(j)] += quarter * w2 * w2
            elif f > 0:
                alpha += half * ((w1 * w1 + w2 * w2) / 2 + 2 * f * w1 * w2)
                A[xi(i)][xi(j)] += quarter * w1 * w1
                A[yi(i)][yi(j)] += quarter * w2 * w2
            for region in (region_xz, region_yz):
                f = clip_fraction(region, cell)
                if f == 1:
                    alpha += half * w2 * (w1 + w2) / 2
                    A[xi(i)][yi(j)] += quarter * w2 * w1
                    A[yi(i)][yi(j)] += quarter * w2 * w2
                elif f > 0:
                    alpha += half * (w2 * w2 / 2 + f * w1 * w2)
                    A[yi(i)][yi(j)] += quarter * w2 * w2

    labels = tuple(f"x_{i}" for i in range(1, k + 1)) + tuple(
        f"y_{i}" for i in range(1, k + 1)
    )
    return QuadraticFormModel(
        dim=dim,
        A=_symmetrize(A),
        alpha=alpha,
        base_constant=Fraction(2 * a - 1, 2 * a * a),
        variable_labels=labels,
    )


def build_qf_schur_example(k: int = 11) -> QuadraticFormModel:
    """Form for the Schur equation on 11 subintervals.

    D_xy runs over the cells below the antidiagonal; the six cells in the
    exclusion set X on the antidiagonal are replaced by their half-square
    constant; D_xz = D_yz = |red| * |blue| contributes the rank-one term.
    """
    if k != 11:
        raise ValueError("the worked example uses k = 11")
    excluded = {(2, 10), (3, 9), (4, 8), (8, 4), (9, 3), (10, 2)}
    dim = k
    A = [[Fraction(0)] * dim for _ in range(dim)]
    alpha = Fraction(0)
    # S_ij contributes n^2/(2k^2) constant per cell; the excluded cells are
    # replaced by the same half-square constant; global factor 1/2 on D_xy.
    per_cell = Fraction(1, 4 * k * k)
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i + j > k + 1:
                continue
            alpha += per_cell
            if (i, j) not in excluded:
                A[i - 1][j - 1] += per_cell
    # D_xz = D_yz = R*B: constant n^2/4, quadratic -(sum x)^2/(2k)^2, twice
    alpha += Fraction(1, 4)
    for i in range(dim):
        for j in range(dim):
            A[i][j] += Fraction(1, 4 * k * k)
    return QuadraticFormModel(
        dim=dim,
        A=_symmetrize(A),
        alpha=alpha,
        base_constant=Fraction(1, 2),
        variable_labels=tuple(f"x_{i}" for i in range(1, k + 1)),
    )


def build_qf_x_y_3z(k: int = 30) -> QuadraticFormModel:
    """Form for x + y = 3z with residue-refined variables x_i^j, dim = 3k.

    D_xy is absorbed into the constant via its global maximum 5n^2/18; the
    (x,z) pairs live in the band x/3 <= z <= x/3 + n/3 and every grid cell
    meeting the band contributes the full dichromatic product of interval
    totals; D_yz = D_xz by the x,y symmetry.
    """
    if k != 30:
        raise ValueError("the construction is pinned to k = 30")
    region = Region2D([(Fraction(1, 3), -1, 0), (Fraction(-1, 3), 1, Fraction(1, 3))])
    dim = 3 * k
    A = [[Fraction(0)] * dim for _ in range(dim)]
    alpha = Fraction(5, 36)  # half the global D_xy bound 5 n^2 / 18
    # R_i B_j + B_i R_j = n^2 (18 - 2 sigma_i sigma_j) / (6k)^2
    per_cell_const = Fraction(1, 2 * k * k)
    per_cell_quad = Fraction(1, 18 * k * k)

    def idx(cls, i):
        return cls * k + i - 1

    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if clip_fraction(region, _cell(i, j, k)) == 0:
                continue
            alpha += per_cell_const
            for ci in range(3):
                for cj in range(3):
                    A[idx(ci, i)][idx(cj, j)] += per_cell_quad
    labels = tuple(
        f"x_{i}^{cls}" for cls in range(3) for i in range(1, k + 1)
    )
    return QuadraticFormModel(
        dim=dim,
        A=_symmetrize(A),
        alpha=alpha,
        base_constant=Fraction(1, 3),
        variable_labels=labels,
    )


def verify_certificate(
    model: QuadraticFormModel,
    cert: PsdCertificate,
    tolerance: Fraction = Fraction(0),
) -> VerificationResult:
    """Check A + diag(d) >= 0 and report the certified n^2 coefficient.

    EXACT certificates are decided by exact elimination (tolerance ignored);
    NUMERIC ones by the double-precision minimum eigenvalue, accepted when
    lambda_min >= -tolerance.  The bound coefficient is always computed in
    exact rational arithmetic as base_constant - alpha - sum(d).
    """
    if cert.dim != model.dim:
        raise ValueError(f"certificate dim {cert.dim} != model dim {model.dim}")
    d = cert.effective()
    bound = model.base_constant - model.alpha - sum(d, Fraction(0))
    if cert.exactness is Exactness.EXACT:
        if any(not isinstance(e, Fraction) for e in cert.entries):
            raise ValueError("EXACT verification requires rational entries")
        m = [
            [model.A[i][j] + (d[i] if i == j else 0) for j in range(model.dim)]
            for i in range(model.dim)
        ]
        return VerificationResult(exact_psd_check(m), bound, None)
    arr = np.array([[float(x) for x in row] for row in model.A], dtype=np.float64)
    arr += np.diag([float(x) for x in d])
    lam = numeric_min_eigenvalue(arr)
    return VerificationResult(lam >= -float(tolerance), bound, lam)


_CERT_FILES = {
    ("ax-ay", 3): "certificate_ax_ay_a3.json",
    ("ax-ay", 4): "certificate_ax_ay_a4.json",
    ("ax-ay", 5): "certificate_ax_ay_a5.json",
    ("ax-ay", 6): "certificate_ax_ay_a6.json",
    ("ax-ay", 7): "certificate_ax_ay_a7.json",
    ("x+y=3z", None): "certificate_x_y_3z.json",
    ("schur-example", None): "certificate_schur_example.json",
}


def load_certificate(family: str, a: int | None = None) -> PsdCertificate:
    """Load a bundled certificate (families: ax-ay, x+y=3z, schur-example)."""
    key = (family, a if family == "ax-ay" else None)
    if key not in _CERT_FILES:
        raise KeyError(f"no bundled certificate for {family!r}, a={a}")
    doc = json.loads(
        resources.files("minmono.data").joinpath(_CERT_FILES[key]).read_text()
    )
    exactness = Exactness(doc["exactness"])
    if exactness is Exactness.EXACT:
        entries = tuple(Fraction(e) for e in doc["entries"])
    else:
        entries = tuple(doc["entries"])
    return PsdCertificate(
        entries=entries,
        scale=Fraction(doc["scale_num"], doc["scale_den"]),
        exactness=exactness,
    )


def lower_bound(family: str, a: int | None = None) -> Fraction:
    """Machine-checked coefficient c with M_E(n) >= c*n^2 - O(n).

    Builds the quadratic form, verifies the bundled certificate, and returns
    the certified coefficient.  A failing certificate raises CertificateError
    rather than returning a wrong bound.
    """
    if family == "ax-ay":
        if a is None:
            raise ValueError("family ax-ay needs the coefficient a")
        model = build_qf_ax_minus_ay(a)
        tol = Fraction(0)
    elif family == "x+y=3z":
        model = build_qf_x_y_3z()
        tol = Fraction(1, 10**6)
    elif family == "schur-example":
        model = build_qf_schur_example()
        tol = Fraction(0)
    else:
        raise ValueError(f"unknown family {family!r}")
    cert = load_certificate(family, a)
    result = verify_certificate(model, cert, tolerance=tol)
    if not result.verdict:
        raise CertificateError(
            f"certificate for {family} (a={a}) rejected: "
            f"min eigenvalue estimate {result.min_eig_estimate}"
        )
    return result.bound_coefficient
