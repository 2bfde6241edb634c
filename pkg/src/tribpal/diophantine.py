"""Certified continued fractions, Baker-Davenport (Dujella-Petho) reduction and the Legendre criterion."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpfr

from .certified import CertifiedReal, PrecisionExhausted, _down, _up, bits_for, ceil_int, floor_int, to_mpfr


class ConvergentNotFound(LookupError):
    pass


@dataclass(frozen=True)
class ContinuedFraction:
    kappa: CertifiedReal
    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    exhausted: bool = False  # expansion stopped because a quotient was not certified

    def __len__(self) -> int:
        return len(self.quotients)


def convergents_of(quotients) -> list[tuple[int, int]]:
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    out = []
    for a in quotients:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append((p, q))
    return out


def cf_expand(x: CertifiedReal, max_terms: int) -> ContinuedFraction:
    """Expand every real in the ball at once.

    Both rational endpoints are pushed through x -> 1/(x - a) exactly; a
    quotient is kept only while the two floors agree.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be positive")
    lo_n, lo_d = (int(v) for v in x.lower.as_integer_ratio())
    hi_n, hi_d = (int(v) for v in x.upper.as_integer_ratio())
    quotients: list[int] = []
    exhausted = False
    while len(quotients) < max_terms:
        a = lo_n // lo_d
        if hi_n // hi_d != a:
            exhausted = True
            break
        quotients.append(a)
        r_lo, r_hi = lo_n - a * lo_d, hi_n - a * hi_d
        if r_lo == 0:
            # exact rational that terminates here, or an endpoint sitting on an integer
            exhausted = r_hi != 0
            break
        # the map is decreasing: the new lower end comes from the old upper end
        lo_n, lo_d, hi_n, hi_d = hi_d, r_hi, lo_d, r_lo
    return ContinuedFraction(x, tuple(quotients), tuple(convergents_of(quotients)), exhausted)


def first_convergent_exceeding(cf: ContinuedFraction, threshold: int) -> tuple[int, int, int]:
    for k, (p, q) in enumerate(cf.convergents):
        if q > threshold:
            return k, p, q
    if cf.exhausted:
        raise PrecisionExhausted(
            f"expansion certified only {len(cf)} terms", cf.kappa.precision_digits
        )
    raise ConvergentNotFound(f"no convergent with q > {threshold} among {len(cf)} terms")


def nearest_integer_distance(x: CertifiedReal) -> CertifiedReal:
    """Certified ||x||, the distance to the nearest integer."""
    bits = bits_for(x.precision_digits)
    d, u = _down(bits), _up(bits)
    f = floor_int(x.lower)
    g = floor_int(x.upper)
    a = d.sub(x.lower, to_mpfr(f))
    if f == g:
        b = u.sub(x.upper, to_mpfr(f))
        if b <= 0.5:
            lo, hi = a, b
        elif a >= 0.5:
            lo, hi = d.sub(1, b), u.sub(1, a)
        else:
            raise PrecisionExhausted("ball straddles a half-integer", x.precision_digits)
    elif g == f + 1 and a > 0.5 and u.sub(x.upper, to_mpfr(g)) < 0.5:
        lo, hi = mpfr(0), max(u.sub(1, a), u.sub(x.upper, to_mpfr(g)))
    else:
        raise PrecisionExhausted("nearest integer is ambiguous", x.precision_digits)
    if lo == 0:
        lo = mpfr(0)  # drop a signed zero
    return CertifiedReal.from_bounds(lo, hi, x.precision_digits)


@dataclass(frozen=True)
class DPInstance:
    """Data for 0 < |m kappa - n + mu| < A B^(-k) with m <= M."""

    kappa: CertifiedReal
    mu: CertifiedReal
    A: CertifiedReal
    B: CertifiedReal
    M: int

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError("A must be positive")
        if not self.B > 1:
            raise ValueError("B must exceed 1")
        if self.M <= 1:
            raise ValueError("M must exceed 1")


@dataclass(frozen=True)
class ReductionOutcome:
    kind: str  # "bound" or "failure"
    bound_value: Optional[int] = None
    certificate: dict = field(default_factory=dict)
    failure_reason: Optional[str] = None

    def __post_init__(self):
        if self.kind == "bound" and self.bound_value is None:
            raise ValueError("bound outcome needs a bound_value")
        if self.kind == "failure" and not self.failure_reason:
            raise ValueError("failure outcome needs a reason")
        if self.kind not in ("bound", "failure"):
            raise ValueError(f"unknown outcome kind {self.kind!r}")

    @property
    def ok(self) -> bool:
        return self.kind == "bound"

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.bound_value is not None:
            out["bound"] = str(self.bound_value)
        if self.failure_reason:
            out["failure_reason"] = self.failure_reason
        out["certificate"] = {k: _cert_str(v) for k, v in self.certificate.items()}
        return out


def _cert_str(v) -> str:
    if isinstance(v, CertifiedReal):
        return _interval_str(v)
    return str(v)


def _bound_below(threshold: CertifiedReal) -> tuple[int, int]:
    """Largest integer k certified to satisfy k < threshold, and ceil(threshold upper)."""
    strict = ceil_int(threshold.upper)
    return strict - 1, strict


def _interval_str(x: CertifiedReal, sig: int = 25) -> str:
    return f"[{x.lower:.{sig}g}, {x.upper:.{sig}g}]"


def baker_davenport_reduce(
    inst: DPInstance, cf: ContinuedFraction, index: Optional[int] = None
) -> ReductionOutcome:
    """Return the certified bound k <= bound_value, or a failure when eps <= 0.

    ``index`` selects the convergent; by default the first with q > 6M.
    """
    if index is None:
        index, _, q = first_convergent_exceeding(cf, 6 * inst.M)
    else:
        if index >= len(cf.convergents):
            raise ConvergentNotFound(f"convergent {index} not available")
        q = cf.convergents[index][1]
        if q <= 6 * inst.M:
            raise ValueError("convergent denominator must exceed 6M")
    kappa_dist = nearest_integer_distance(inst.kappa * q)
    mu_dist = nearest_integer_distance(inst.mu * q)
    eps = mu_dist - inst.M * kappa_dist
    cert = {"convergent_index": index, "q": q, "epsilon": eps}
    if not eps.lower > 0:
        reason = "epsilon nonpositive" if eps.upper <= 0 else "epsilon not certified positive"
        return ReductionOutcome("failure", certificate=cert, failure_reason=reason)
    threshold = (inst.A * q / eps).log() / inst.B.log()
    bound, strict = _bound_below(threshold)
    cert["threshold"] = threshold
    cert["strict_bound"] = strict
    return ReductionOutcome("bound", bound_value=bound, certificate=cert)


def reduce_with_fallback(inst: DPInstance, cf: ContinuedFraction, max_tries: int = 48) -> ReductionOutcome:
    """Try successive convergents from the first with q > 6M until eps > 0 is certified."""
    start, _, _ = first_convergent_exceeding(cf, 6 * inst.M)
    outcome = None
    for index in range(start, start + max_tries):
        if index >= len(cf.convergents):
            if cf.exhausted:
                raise PrecisionExhausted("ran out of certified convergents", cf.kappa.precision_digits)
            break
        outcome = baker_davenport_reduce(inst, cf, index)
        if outcome.ok:
            break
    if outcome is None:
        raise ConvergentNotFound("no convergent available after the first with q > 6M")
    outcome.certificate["first_index"] = start
    return outcome


def largest_partial_quotient(cf: ContinuedFraction, M: int) -> tuple[int, int]:
    """(N, a(M)) with N the first index such that q_N > M."""
    N, _, _ = first_convergent_exceeding(cf, M)
    return N, max(cf.quotients[: N + 1])


def legendre_bound(
    cf: ContinuedFraction, M: int, A: CertifiedReal, B_base: CertifiedReal
) -> ReductionOutcome:
    """Bound k in |kappa - x/y| < A B^(-k) / y for 0 < y < M.

    A good approximation is a convergent, so 1/((a(M)+2) y^2) <= A B^(-k)/y
    and B^k < (a(M)+2) A M.  When Legendre's premise |kappa - x/y| < 1/(2y^2)
    fails instead, B^k <= 2 A M, which the same threshold already covers.
    """
    N, a_max = largest_partial_quotient(cf, M)
    threshold = ((a_max + 2) * A * M).log() / B_base.log()
    bound, strict = _bound_below(threshold)
    cert = {
        "N": N,
        "a_M": a_max,
        "threshold": _interval_str(threshold),
        "strict_bound": strict,
    }
    return ReductionOutcome("bound", bound_value=bound, certificate=cert)
