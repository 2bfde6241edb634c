"""Tribonacci-Lucas numbers and the dominant root of x^3 - x^2 - x - 1."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from .certified import CertifiedReal, PrecisionExhausted, _down, _near, _up, bits_for

INITIAL_TERMS = (3, 1, 3)


class TribLucasSequence:
    """Lazily extended cache of S_0, S_1, ... with S_{n+3} = S_{n+2} + S_{n+1} + S_n.

    Reads are lock-free; extension is serialized.
    """

    def __init__(self):
        self._terms: list[int] = list(INITIAL_TERMS)
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError("index must be nonnegative")
        terms = self._terms
        if n < len(terms):
            return terms[n]
        with self._lock:
            terms = self._terms
            while len(terms) <= n:
                terms.append(terms[-1] + terms[-2] + terms[-3])
            return terms[n]

    def prefix(self, n_max: int) -> list[int]:
        self[n_max]
        return self._terms[: n_max + 1]


_SEQUENCE = TribLucasSequence()


def trib_lucas(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _SEQUENCE[n]


def trib_lucas_prefix(n_max: int) -> list[int]:
    return _SEQUENCE.prefix(n_max)


def _psi(x: Fraction) -> Fraction:
    return x * x * x - x * x - x - 1


@dataclass(frozen=True)
class DominantRoot:
    alpha: CertifiedReal
    log_alpha: CertifiedReal

    @property
    def precision_digits(self) -> int:
        return self.alpha.precision_digits


def _newton_alpha(bits: int) -> mpfr:
    ctx = _near(bits + 32)
    x = mpfr("1.839", bits + 32)
    for _ in range(bits.bit_length() + 8):
        f = ctx.sub(ctx.sub(ctx.sub(ctx.mul(ctx.mul(x, x), x), ctx.mul(x, x)), x), 1)
        df = ctx.sub(ctx.sub(ctx.mul(3, ctx.mul(x, x)), ctx.mul(2, x)), 1)
        step = ctx.div(f, df)
        x = ctx.sub(x, step)
        if step == 0:
            break
    return mpfr(x, bits)


def alpha_by_refinement(precision_digits: int) -> CertifiedReal:
    """Certify the real root by an exact sign change of the cubic around a Newton iterate.

    The cubic is increasing on (1, oo), so psi(lo) < 0 < psi(hi) pins the root.
    """
    bits = bits_for(precision_digits)
    x = _newton_alpha(bits)
    centre = Fraction(*x.as_integer_ratio())
    delta = Fraction(1, 2 ** (bits - 2))
    for _ in range(8):
        lo, hi = centre - delta, centre + delta
        if _psi(lo) < 0 < _psi(hi):
            break
        delta *= 16
    else:
        raise PrecisionExhausted("could not isolate the dominant root", precision_digits)
    return CertifiedReal.from_bounds(
        mpfr(gmpy2.mpq(lo.numerator, lo.denominator), bits, _down(bits)),
        mpfr(gmpy2.mpq(hi.numerator, hi.denominator), bits, _up(bits)),
        precision_digits,
    )


def alpha_by_radicals(precision_digits: int) -> CertifiedReal:
    """alpha = (1 + cbrt(19 + 3 sqrt 33) + cbrt(19 - 3 sqrt 33)) / 3, in ball arithmetic."""
    three_root = 3 * CertifiedReal.exact(33, precision_digits).sqrt()
    w1 = (19 + three_root).cbrt()
    w2 = (19 - three_root).cbrt()
    return (1 + w1 + w2) / 3


@lru_cache(maxsize=16)
def dominant_root(precision_digits: int = 250) -> DominantRoot:
    if precision_digits < 30:
        raise ValueError("precision_digits must be at least 30")
    alpha = alpha_by_refinement(precision_digits)
    check = alpha_by_radicals(precision_digits)
    if not alpha.overlaps(check):
        raise ArithmeticError("radical and refined values of alpha disagree")
    return DominantRoot(alpha=alpha, log_alpha=alpha.log())


def characteristic_value(x: CertifiedReal) -> CertifiedReal:
    """Ball enclosure of x^3 - x^2 - x - 1."""
    return ((x - 1) * x - 1) * x - 1


def binet_residual_check(n: int, root: DominantRoot) -> bool:
    """Certify |S_n - alpha^n| <= 2 alpha^(-n/2).

    Works at the root's precision or higher; raises PrecisionExhausted only
    if even the lifted balls are too wide to decide.
    """
    if n < 1:
        raise ValueError("n must be positive")
    # alpha^n has about 0.27 n digits before the point and the residual
    # 0.13 n zeros after it; lift the root when the caller's is too coarse
    needed = -(-(2 * n // 5 + 40) // 50) * 50
    if needed > root.precision_digits:
        root = dominant_root(needed)
    power = root.alpha ** n
    residual = abs(trib_lucas(n) - power)
    limit = 2 / power.sqrt()
    return residual <= limit


def growth_bounds_check(m: int, root: DominantRoot) -> bool:
    """Certify alpha^(m-1) <= S_m < alpha^(m+1)."""
    if m < 1:
        raise ValueError("m must be positive")
    s = CertifiedReal.exact(trib_lucas(m), root.precision_digits)
    return (root.alpha ** (m - 1) <= s) and (s < root.alpha ** (m + 1))
