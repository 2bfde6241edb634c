"""Two-dimensional lattice lower bounds for |lambda1 x1 + lambda2 x2|."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .certified import CertifiedReal, PrecisionExhausted, floor_int

Vector = tuple[int, int]


def _dot(u: Vector, v: Vector) -> int:
    return u[0] * v[0] + u[1] * v[1]


def round_half_away(x: Fraction) -> int:
    n = (abs(x.numerator) * 2 + x.denominator) // (2 * x.denominator)
    return n if x >= 0 else -n


def certified_round(x: CertifiedReal) -> int:
    """Nearest integer (ties away from zero), certified over the whole ball."""
    lo = round_half_away(Fraction(*map(int, x.lower.as_integer_ratio())))
    hi = round_half_away(Fraction(*map(int, x.upper.as_integer_ratio())))
    if lo != hi:
        raise PrecisionExhausted("nearest integer is ambiguous", x.precision_digits)
    return lo


@dataclass(frozen=True)
class Lattice2D:
    """Lattice spanned by the column vectors b1 and b2."""

    b1: Vector
    b2: Vector

    def __post_init__(self):
        object.__setattr__(self, "b1", tuple(int(v) for v in self.b1))
        object.__setattr__(self, "b2", tuple(int(v) for v in self.b2))
        if self.determinant == 0:
            raise ValueError("degenerate lattice")

    @property
    def determinant(self) -> int:
        return self.b1[0] * self.b2[1] - self.b1[1] * self.b2[0]


@dataclass(frozen=True)
class ReducedBasis2D:
    v1: Vector
    v2: Vector
    gram_mu: Fraction
    v2_star_norm_sq: Fraction
    transform: tuple[Vector, Vector]  # (v1, v2) = (b1, b2) @ transform, columns

    @property
    def v1_norm_sq(self) -> int:
        return _dot(self.v1, self.v1)

    @property
    def determinant(self) -> int:
        return self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]


def build_linear_form_lattice(lambda1: CertifiedReal, lambda2: CertifiedReal, C: int) -> Lattice2D:
    if C < 1:
        raise ValueError("C must be positive")
    return Lattice2D((1, certified_round(lambda1 * C)), (0, certified_round(lambda2 * C)))


def gauss_reduce(lat: Lattice2D) -> ReducedBasis2D:
    """Lagrange-Gauss reduction in exact integer arithmetic."""
    u, v = lat.b1, lat.b2
    cu, cv = (1, 0), (0, 1)  # coordinates of u, v in the input basis
    if _dot(u, u) > _dot(v, v):
        u, v, cu, cv = v, u, cv, cu
    while True:
        r = round_half_away(Fraction(_dot(u, v), _dot(u, u)))
        v = (v[0] - r * u[0], v[1] - r * u[1])
        cv = (cv[0] - r * cu[0], cv[1] - r * cu[1])
        if _dot(v, v) >= _dot(u, u):
            break
        u, v, cu, cv = v, u, cv, cu
    norm1 = _dot(u, u)
    mu = Fraction(_dot(u, v), norm1)
    v2_star = Fraction(_dot(v, v)) - mu * mu * norm1
    return ReducedBasis2D(u, v, mu, v2_star, (cu, cv))


@dataclass(frozen=True)
class LinearFormAnalysis:
    lattice: Lattice2D
    reduced: ReducedBasis2D
    C: int
    X1: int
    X2: int
    d_lambda_sq: Fraction
    T: Fraction
    condition_holds: bool
    lower_bound: Optional[CertifiedReal]

    def summary(self) -> dict:
        out = {
            "C": f"10^{len(str(self.C)) - 1}" if str(self.C).strip("0") == "1" else str(self.C),
            "v1_norm_sq": str(self.reduced.v1_norm_sq),
            "v2_star_norm_sq": f"{float(self.reduced.v2_star_norm_sq):.6e}",
            "d_lambda_sq": f"{float(self.d_lambda_sq):.6e}",
            "T": f"{float(self.T):.6e}",
            "T_sq_plus_X1_sq": f"{float(self.T * self.T + self.X1 * self.X1):.6e}",
            "condition_holds": self.condition_holds,
        }
        if self.lower_bound is not None:
            out["lower_bound"] = f"{self.lower_bound.lower_float():.6e}"
        return out


def analyse_linear_form(
    lambda1: CertifiedReal, lambda2: CertifiedReal, X1: int, X2: int, C: int
) -> LinearFormAnalysis:
    if X1 < 1 or X2 < 1:
        raise ValueError("X1 and X2 must be positive")
    lat = build_linear_form_lattice(lambda1, lambda2, C)
    red = gauss_reduce(lat)
    # d_Lambda = |v1| / max(1, |v1|/|v2*|) = min(|v1|, |v2*|)
    d_sq = min(Fraction(red.v1_norm_sq), red.v2_star_norm_sq)
    T = Fraction(1 + X1 * X1 + X2 * X2, 2)
    holds = d_sq >= T * T + X1 * X1
    bound = None
    if holds:
        digits = max(lambda1.precision_digits, lambda2.precision_digits)
        root = CertifiedReal.exact(d_sq - X1 * X1, digits).sqrt()
        bound = (root - CertifiedReal.exact(T, digits)) / C
    return LinearFormAnalysis(lat, red, C, X1, X2, d_sq, T, holds, bound)


def linear_form_lower_bound(
    lambda1: CertifiedReal, lambda2: CertifiedReal, X1: int, X2: int, C: int
) -> Optional[CertifiedReal]:
    """Lower bound for |lambda1 x1 + lambda2 x2| over |x_i| <= X_i, or None if C is too small."""
    return analyse_linear_form(lambda1, lambda2, X1, X2, C).lower_bound


def lll_m_bound(ell_plus_m_max: int, n_max: int, bound: CertifiedReal, numerator: int = 38) -> int:
    """Largest m with log(numerator) - m log 10 >= log(bound).

    Valid for solutions with l+m <= ell_plus_m_max and n <= n_max, the ranges
    the lower bound was computed for.
    """
    if ell_plus_m_max < 1 or n_max < 1:
        raise ValueError("ranges must be positive")
    if not bound > 0:
        raise ValueError("bound must be positive")
    digits = bound.precision_digits
    x = (CertifiedReal.exact(numerator, digits).log() - bound.log()) / CertifiedReal.exact(10, digits).log()
    return floor_int(x.upper)
