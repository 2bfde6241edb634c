"""Batched Baker-Davenport reductions sharing kappa, A and B.

Each case is an integer Y with mu = log(Y/9) / log(alpha).  The compiled MPFR
kernel is used when it was built; otherwise (or with TRIBPAL_PURE=1) the same
loop runs on :class:`CertifiedReal`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .certified import CertifiedReal, PrecisionExhausted, bits_for, ceil_int
from .diophantine import ContinuedFraction, first_convergent_exceeding, nearest_integer_distance

try:
    from . import _sweep
except ImportError:  # extension not built
    _sweep = None

HAVE_EXTENSION = _sweep is not None
PURE_ENV = "TRIBPAL_PURE"

_OK, _NO_CONVERGENT, _AMBIGUOUS = 0, 1, 2


def backend_name(prefer_extension: Optional[bool] = None) -> str:
    return "extension" if _use_extension(prefer_extension) else "python"


def _use_extension(prefer: Optional[bool]) -> bool:
    if prefer is False or os.environ.get(PURE_ENV, "") not in ("", "0"):
        return False
    if prefer and not HAVE_EXTENSION:
        raise RuntimeError("compiled sweep kernel is not available")
    return HAVE_EXTENSION


@dataclass(frozen=True)
class CaseResult:
    numerator: int
    ok: bool
    convergent_index: Optional[int]  # last convergent tried
    eps_lower: float
    eps_upper: float
    threshold_upper: float
    bound: Optional[int]


@dataclass
class SweepSetup:
    """Shared data: A = a_numerator / log(alpha), B given by its log, M the bound on the kappa multiplier."""

    cf: ContinuedFraction
    log_alpha: CertifiedReal
    a_numerator: int
    log_B: CertifiedReal
    M: int
    max_tries: int = 48
    start: int = field(init=False)
    truncated: bool = field(init=False)
    convergents: list = field(init=False, repr=False)

    def __post_init__(self):
        digits = self.log_alpha.precision_digits
        self.digits = digits
        self.log9 = CertifiedReal.exact(9, digits).log()
        self.log_A = CertifiedReal.exact(self.a_numerator, digits).log() - self.log_alpha.log()
        self.start, _, _ = first_convergent_exceeding(self.cf, 6 * self.M)
        self.truncated = False
        self.convergents = []  # (q, ||q kappa||, log q)
        kappa = self.cf.kappa
        for k in range(self.start, self.start + self.max_tries):
            if k >= len(self.cf.convergents):
                self.truncated = self.cf.exhausted
                break
            q = self.cf.convergents[k][1]
            try:
                dist = nearest_integer_distance(kappa * q)
            except PrecisionExhausted:
                self.truncated = True
                break
            self.convergents.append((q, dist, CertifiedReal.exact(q, digits).log()))


def _python_case(setup: SweepSetup, Y: int) -> CaseResult:
    mu = (CertifiedReal.exact(Y, setup.digits).log() - setup.log9) / setup.log_alpha
    eps = None
    for offset, (q, kdist, log_q) in enumerate(setup.convergents):
        eps = nearest_integer_distance(mu * q) - setup.M * kdist
        if not eps.lower > 0:
            continue
        threshold = (setup.log_A + log_q - eps.log()) / setup.log_B
        return CaseResult(
            Y, True, setup.start + offset, eps.lower_float(), eps.upper_float(),
            threshold.upper_float(), ceil_int(threshold.upper) - 1,
        )
    if setup.truncated:
        raise PrecisionExhausted("ran out of certified convergents", setup.digits)
    lo, hi = (eps.lower_float(), eps.upper_float()) if eps is not None else (0.0, 0.0)
    last = setup.start + len(setup.convergents) - 1 if setup.convergents else None
    return CaseResult(Y, False, last, lo, hi, 0.0, None)


def _extension_cases(setup: SweepSetup, numerators: list[int]) -> list[CaseResult]:
    pair = lambda x: (x.lower, x.upper)  # noqa: E731
    conv = [(q, d.lower, d.upper, lq.lower, lq.upper) for q, d, lq in setup.convergents]
    raw = _sweep.dp_batch(
        bits_for(setup.digits), pair(setup.log_alpha), pair(setup.log9), pair(setup.log_A),
        pair(setup.log_B), setup.M, conv, numerators, setup.max_tries,
    )
    out = []
    for Y, (status, offset, eps_lo, eps_hi, thr_hi, bound) in zip(numerators, raw):
        if status == _AMBIGUOUS:
            raise PrecisionExhausted(f"nearest integer ambiguous for Y={Y}", setup.digits)
        if status == _OK:
            out.append(CaseResult(Y, True, setup.start + offset, eps_lo, eps_hi, thr_hi, bound))
            continue
        if setup.truncated:
            raise PrecisionExhausted("ran out of certified convergents", setup.digits)
        last = setup.start + len(setup.convergents) - 1 if setup.convergents else None
        out.append(CaseResult(Y, False, last, eps_lo, eps_hi, 0.0, None))
    return out


def sweep(setup: SweepSetup, numerators: Iterable[int], prefer_extension: Optional[bool] = None) -> list[CaseResult]:
    """Reduce every case; raises PrecisionExhausted if any case needs more digits."""
    numerators = list(numerators)
    if any(Y < 1 for Y in numerators):
        raise ValueError("numerators must be positive")
    if _use_extension(prefer_extension):
        return _extension_cases(setup, numerators)
    return [_python_case(setup, Y) for Y in numerators]
