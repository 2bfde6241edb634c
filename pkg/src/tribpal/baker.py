"""Heights, the Matveev lower bound and the initial bounds on (l, m, n).

Bounds are carried as certified coefficients of powers of (1 + log n), so
each intermediate constant can be compared with a published rounding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .certified import CertifiedReal, ceil_int, floor_int
from .recurrence import DominantRoot

A_FLOOR = Fraction(4, 25)  # 0.16


def weil_height_rational(p: int, q: int, digits: int = 250) -> CertifiedReal:
    """h(p/q) = log max(|p|, q) for the reduced fraction."""
    if q == 0:
        raise ZeroDivisionError("q must be nonzero")
    f = Fraction(p, q)
    top = max(abs(f.numerator), f.denominator)
    return CertifiedReal.exact(top, digits).log()


def height_combine(op: str, h1: CertifiedReal, other) -> CertifiedReal:
    """Upper bound for the height of a sum, product or power.

    ``other`` is the second height for "sum"/"product" and the exponent for "power".
    """
    if h1.lower < 0:
        raise ValueError("heights are nonnegative")
    if op == "sum":
        return h1 + other + CertifiedReal.exact(2, h1.precision_digits).log()
    if op == "product":
        return h1 + other
    if op == "power":
        if not isinstance(other, int):
            raise TypeError("power needs an integer exponent")
        return h1 * abs(other)
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class LinearFormSpec:
    t: int
    D: int
    B: CertifiedReal
    A: tuple[CertifiedReal, ...]

    def __post_init__(self):
        if self.t < 1 or self.D < 1:
            raise ValueError("t and D must be positive")
        if len(self.A) != self.t:
            raise ValueError("need exactly t values A_j")
        # reject only values certainly below the floor: an exact 0.16 is a ball around it
        if self.B.upper < 1:
            raise ValueError("B must be at least 1")
        for a in self.A:
            if a.upper < A_FLOOR:
                raise ValueError("A_j must be at least 0.16")


def matveev_coefficient(t: int, D: int, A, digits: int = 250) -> CertifiedReal:
    """1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D) * prod(A), the factor multiplying (1 + log B)."""
    c = CertifiedReal.exact(Fraction(7, 5) * 30 ** (t + 3) * t**4 * D**2, digits)
    c = c * CertifiedReal.exact(t, digits).sqrt()
    c = c * (1 + CertifiedReal.exact(D, digits).log())
    for a in A:
        c = c * a
    return c


def matveev_lower_bound(spec: LinearFormSpec) -> CertifiedReal:
    """Magnitude K with log|Gamma| > -K."""
    digits = spec.B.precision_digits
    return matveev_coefficient(spec.t, spec.D, spec.A, digits) * (1 + spec.B.log())


def gsl_shave(r: int, H: CertifiedReal) -> int:
    """Integer bound ceil(2^r H (log H)^r) on L, given H > L/(log L)^r."""
    if r < 1:
        raise ValueError("r must be positive")
    if not H > (4 * r * r) ** r:
        raise ValueError(f"H must exceed (4r^2)^r = {(4 * r * r) ** r}")
    value = (2**r) * H * H.log() ** r
    return ceil_int(value.upper)


def length_index_relation(two_ell_plus_m: int, n: int, root: DominantRoot) -> bool:
    """(2l+m) log 10 - 3 < n log alpha < (2l+m) log 10 + 1, certified."""
    if two_ell_plus_m < 1 or n < 1:
        raise ValueError("inputs must be positive")
    digits = root.precision_digits
    left = CertifiedReal.exact(10, digits).log() * two_ell_plus_m
    middle = root.log_alpha * n
    return (left - 3 < middle) and (middle < left + 1)


@dataclass(frozen=True)
class InitialBounds:
    ell_bound_coeff: CertifiedReal  # l log 10 < c1 (1 + log n)
    m_bound_coeff: CertifiedReal  # m log 10 < c2 (1 + log n)^2
    n_bound: int
    two_ell_plus_m_bound: int
    steps: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.n_bound < 1 or self.two_ell_plus_m_bound < 1:
            raise ValueError("bounds must be positive")
        if self.two_ell_plus_m_bound >= self.n_bound:
            raise ValueError("expected 2l+m bound below the n bound")

    def to_dict(self) -> dict:
        out = {
            "ell_bound_coeff": _sci(self.ell_bound_coeff),
            "m_bound_coeff": _sci(self.m_bound_coeff),
            "n_bound": str(self.n_bound),
            "n_bound_sci": f"{self.n_bound:.4e}",
            "two_ell_plus_m_bound": str(self.two_ell_plus_m_bound),
            "two_ell_plus_m_bound_sci": f"{self.two_ell_plus_m_bound:.4e}",
        }
        out["steps"] = {k: _sci(v) if isinstance(v, CertifiedReal) else str(v) for k, v in self.steps.items()}
        return out


def _sci(x: CertifiedReal) -> str:
    # upper end, rounded up at 6 digits: safe to quote as a bound
    return f"{x.upper_float():.6e}"


def derive_initial_bounds(root: DominantRoot, n_min: int = 500) -> InitialBounds:
    """Replay the three linear forms and resolve them into bounds on n and 2l+m.

    Needs n > n_min so that 9 alpha^(-n/2) is negligible and 1 + log n <= (1 + 1/log n_min) log n.
    """
    digits = root.precision_digits
    one = CertifiedReal.exact(1, digits)
    log = lambda v: CertifiedReal.exact(v, digits).log()  # noqa: E731
    log2, log3, log10 = log(2), log(3), log(10)
    A2, A3 = root.log_alpha, 3 * log10
    base = matveev_coefficient(3, 3, (A2, A3), digits)  # still missing A1

    # Step 1: eta1 = 9/d1, A1 = 3 h(9/d1) <= 12 log 3; |Gamma1| < 28/10^l
    h_eta1 = height_combine("product", log(9), log(9))
    A1_step1 = 3 * h_eta1
    K1 = base * A1_step1
    c1 = K1 + log(28)  # l log 10 < K1 (1 + log n) + log 28 <= c1 (1 + log n)

    # Step 2: eta1 = 9/(d1 10^l - (d1-d2)), h <= 10 log 3 + l log 10; |Gamma2| < 19/10^m
    # constant parts only: the l log 10 from h(10^l) goes into the (1 + log n) coefficient
    h9, zero = log(9), CertifiedReal.exact(0, digits)
    h_lead = height_combine("product", h9, zero)  # d1 * 10^l
    h_inner = height_combine("sum", h_lead, h9)  # ... - (d1 - d2)
    h2_const = height_combine("product", h9, h_inner)  # 9 / (...)
    h2_coeff = h2_const + c1  # h(eta1) < (10 log 3 + c1)(1 + log n) with 10 log 3 >= h2_const
    if not h2_const <= 10 * log3:
        raise ArithmeticError("step 2 height chain exceeds 10 log 3")
    A1_step2 = 3 * (10 * log3 + c1)
    log_eta_step2 = c1 + 4 * log3 + Fraction(1, 9)
    if not log_eta_step2 <= A1_step2:
        raise ArithmeticError("step 2: |log eta1| not dominated by D h(eta1)")
    K2 = base * A1_step2  # coefficient of (1 + log n)^2
    c2 = K2 + log(19)

    # Step 3: eta1 = (d1 10^(l+m) + (d1-d2) 10^m - (d1-d2))/9, h <= 16 log 3 + (2m+l) log 10
    h_two = height_combine("sum", h_lead, h9)  # d1 10^(l+m) + (d1 - d2) 10^m
    h_three = height_combine("sum", h_two, h9)  # ... - (d1 - d2)
    h3_const = height_combine("product", h_three, h9)  # divided by 9
    if not h3_const <= 16 * log3:
        raise ArithmeticError("step 3 height chain exceeds 16 log 3")
    c3 = 2 * c2 + c1  # (2m + l) log 10 < c3 (1 + log n)^2
    A1_step3 = 3 * (16 * log3 + c3)
    log_eta_step3 = 5 * log3 + c1 + c2 + Fraction(1, 9)
    if not log_eta_step3 <= A1_step3:
        raise ArithmeticError("step 3: |log eta1| not dominated by D h(eta1)")
    K3 = base * A1_step3  # coefficient of (1 + log n)^3

    # |Gamma3| < 2 alpha^(-n): n log alpha < K3 (1 + log n)^3 + log 2
    shave = (one + one / log(n_min)) ** 3
    H = (K3 + log2) / root.log_alpha * shave
    n_bound = gsl_shave(3, H)
    # 2l + m < (n log alpha + 3) / log 10
    two_lm = (root.log_alpha * n_bound + 3) / log10
    two_lm_bound = floor_int(two_lm.upper)

    steps = {
        "step1_magnitude": K1,
        "step1_coeff": c1,
        "step2_height_const": h2_const,
        "step2_height_coeff": h2_coeff,
        "step2_A1_coeff": A1_step2,
        "step2_magnitude": K2,
        "step2_coeff": c2,
        "step3_height_const": h3_const,
        "step3_two_m_plus_ell_coeff": c3,
        "step3_A1_coeff": A1_step3,
        "step3_magnitude": K3,
        "gsl_H": H,
    }
    return InitialBounds(c1, c2, n_bound, two_lm_bound, steps)
