"""Ball arithmetic over MPFR.

A :class:`CertifiedReal` is a closed interval ``[lower, upper]`` whose
endpoints are produced with directed rounding, reported as a midpoint and a
radius.  Every sign or order decision either succeeds rigorously or raises
:class:`PrecisionExhausted` so the caller can retry with more digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, TypeVar, Union

import gmpy2
from gmpy2 import mpfr, mpq

DEFAULT_DIGITS = 250
MAX_DIGITS = 2000
GUARD_BITS = 16

T = TypeVar("T")


class PrecisionExhausted(ArithmeticError):
    """A certified decision could not be made at the current precision."""

    def __init__(self, message: str, digits: int | None = None):
        super().__init__(message)
        self.digits = digits


def bits_for(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10))) + GUARD_BITS


@lru_cache(maxsize=None)
def _down(bits: int):
    return gmpy2.context(precision=bits, round=gmpy2.RoundDown)


@lru_cache(maxsize=None)
def _up(bits: int):
    return gmpy2.context(precision=bits, round=gmpy2.RoundUp)


@lru_cache(maxsize=None)
def _near(bits: int):
    return gmpy2.context(precision=bits, round=gmpy2.RoundToNearest)


@lru_cache(maxsize=None)
def _tolerance(digits: int) -> mpfr:
    # 10^(-digits/2), rounded up; loose enough for a sanity bound
    return mpfr(gmpy2.mpq(1, 10 ** (digits // 2)), 64, _up(64))


def _exact_bounds(value, bits: int) -> tuple[mpfr, mpfr]:
    if isinstance(value, bool):
        raise TypeError("bool is not a real number here")
    if isinstance(value, Fraction):
        value = mpq(value.numerator, value.denominator)
    elif isinstance(value, str):
        f = Fraction(value)
        value = mpq(f.numerator, f.denominator)
    elif isinstance(value, float):
        value = mpq(*value.as_integer_ratio())
    return mpfr(value, bits, _down(bits)), mpfr(value, bits, _up(bits))


def floor_int(x: mpfr) -> int:
    """Exact floor of a finite mpfr (gmpy2.floor rounds to the context precision)."""
    n, d = x.as_integer_ratio()
    return int(n // d)


def ceil_int(x: mpfr) -> int:
    n, d = x.as_integer_ratio()
    return int(-((-n) // d))


def _neg(x: mpfr) -> mpfr:
    """Exact negation (plain ``-x`` rounds to the ambient context precision)."""
    return gmpy2.context(precision=max(x.precision, 2)).minus(x)


def to_mpfr(n: int) -> mpfr:
    """Exact conversion of an integer."""
    return mpfr(n, max(n.bit_length(), 2))


Number = Union[int, Fraction, str, "CertifiedReal"]


@dataclass(frozen=True, eq=False)
class CertifiedReal:
    """Real number enclosed in ``[lower, upper]`` (equivalently ``midpoint ± radius``)."""

    midpoint: mpfr
    radius: mpfr
    precision_digits: int
    lower: mpfr
    upper: mpfr

    # -- construction -----------------------------------------------------

    @classmethod
    def from_bounds(cls, lo: mpfr, hi: mpfr, digits: int) -> "CertifiedReal":
        if not lo <= hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        bits = bits_for(digits)
        if lo == hi:
            return cls(lo, mpfr(0), digits, lo, hi)
        n = _near(bits)
        mid = n.div(n.add(lo, hi), 2)
        u = _up(bits)
        rad = max(u.sub(hi, mid), u.sub(mid, lo))
        return cls(mid, rad, digits, lo, hi)

    @classmethod
    def exact(cls, value, digits: int = DEFAULT_DIGITS) -> "CertifiedReal":
        """Enclose an exact int, Fraction, decimal string or float."""
        lo, hi = _exact_bounds(value, bits_for(digits))
        return cls.from_bounds(lo, hi, digits)

    @classmethod
    def ball(cls, midpoint, radius, digits: int = DEFAULT_DIGITS) -> "CertifiedReal":
        bits = bits_for(digits)
        m_lo, m_hi = _exact_bounds(midpoint, bits)
        r_hi = _exact_bounds(radius, bits)[1]
        if r_hi < 0:
            raise ValueError("negative radius")
        return cls.from_bounds(_down(bits).sub(m_lo, r_hi), _up(bits).add(m_hi, r_hi), digits)

    def _coerce(self, other) -> "CertifiedReal":
        if isinstance(other, CertifiedReal):
            return other
        return CertifiedReal.exact(other, self.precision_digits)

    def _finish(self, lo, hi, digits: int, *scales) -> "CertifiedReal":
        out = CertifiedReal.from_bounds(lo, hi, digits)
        scale = max([abs(out.midpoint), mpfr(1)] + [abs(s) for s in scales])
        if out.radius > _tolerance(digits) * scale:
            raise PrecisionExhausted(
                f"radius {float(out.radius):.3g} too wide for {digits} digits", digits
            )
        return out

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Number) -> "CertifiedReal":
        o = self._coerce(other)
        digits = max(self.precision_digits, o.precision_digits)
        bits = bits_for(digits)
        lo = _down(bits).add(self.lower, o.lower)
        hi = _up(bits).add(self.upper, o.upper)
        return self._finish(lo, hi, digits, self.midpoint, o.midpoint)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "CertifiedReal":
        o = self._coerce(other)
        digits = max(self.precision_digits, o.precision_digits)
        bits = bits_for(digits)
        lo = _down(bits).sub(self.lower, o.upper)
        hi = _up(bits).sub(self.upper, o.lower)
        return self._finish(lo, hi, digits, self.midpoint, o.midpoint)

    def __rsub__(self, other: Number) -> "CertifiedReal":
        return self._coerce(other) - self

    def __neg__(self) -> "CertifiedReal":
        return CertifiedReal.from_bounds(_neg(self.upper), _neg(self.lower), self.precision_digits)

    def __abs__(self) -> "CertifiedReal":
        if self.lower >= 0:
            return self
        if self.upper <= 0:
            return -self
        return CertifiedReal.from_bounds(
            mpfr(0), max(_neg(self.lower), self.upper), self.precision_digits
        )

    def __mul__(self, other: Number) -> "CertifiedReal":
        o = self._coerce(other)
        digits = max(self.precision_digits, o.precision_digits)
        bits = bits_for(digits)
        d, u = _down(bits), _up(bits)
        if self.lower >= 0 and o.lower >= 0:
            lo = d.mul(self.lower, o.lower)
            hi = u.mul(self.upper, o.upper)
        else:
            pairs = [(a, b) for a in (self.lower, self.upper) for b in (o.lower, o.upper)]
            lo = min(d.mul(a, b) for a, b in pairs)
            hi = max(u.mul(a, b) for a, b in pairs)
        return self._finish(lo, hi, digits)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "CertifiedReal":
        o = self._coerce(other)
        if o.lower <= 0 <= o.upper:
            raise PrecisionExhausted("divisor ball contains zero", o.precision_digits)
        digits = max(self.precision_digits, o.precision_digits)
        bits = bits_for(digits)
        d, u = _down(bits), _up(bits)
        pairs = [(a, b) for a in (self.lower, self.upper) for b in (o.lower, o.upper)]
        lo = min(d.div(a, b) for a, b in pairs)
        hi = max(u.div(a, b) for a, b in pairs)
        return self._finish(lo, hi, digits)

    def __rtruediv__(self, other: Number) -> "CertifiedReal":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "CertifiedReal":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        digits = self.precision_digits
        if n == 0:
            return CertifiedReal.exact(1, digits)
        if n < 0:
            return 1 / (self ** (-n))
        bits = bits_for(digits)
        d, u = _down(bits), _up(bits)
        if self.lower >= 0:
            return self._finish(d.pow(self.lower, n), u.pow(self.upper, n), digits)
        if self.upper <= 0:
            p = (-self) ** n
            return p if n % 2 == 0 else -p
        if n % 2:
            return self._finish(d.pow(self.lower, n), u.pow(self.upper, n), digits)
        top = max(_neg(self.lower), self.upper)
        return self._finish(mpfr(0), u.pow(top, n), digits)

    # -- monotone elementary functions --------------------------------------

    def _monotone(self, name: str) -> "CertifiedReal":
        bits = bits_for(self.precision_digits)
        lo = getattr(_down(bits), name)(self.lower)
        if self.lower == self.upper:
            # one evaluation: the exact value lies within one ulp above lo
            hi = _up(bits).next_above(lo)
        else:
            hi = getattr(_up(bits), name)(self.upper)
        return self._finish(lo, hi, self.precision_digits, self.midpoint)

    def log(self) -> "CertifiedReal":
        if self.upper <= 0:
            raise ValueError("log of a nonpositive number")
        if self.lower <= 0:
            raise PrecisionExhausted("log argument not certified positive", self.precision_digits)
        return self._monotone("log")

    def exp(self) -> "CertifiedReal":
        return self._monotone("exp")

    def sqrt(self) -> "CertifiedReal":
        if self.upper < 0:
            raise ValueError("sqrt of a negative number")
        if self.lower < 0:
            raise PrecisionExhausted("sqrt argument not certified nonnegative", self.precision_digits)
        return self._monotone("sqrt")

    def cbrt(self) -> "CertifiedReal":
        return self._monotone("cbrt")

    # -- certified decisions --------------------------------------------------

    def floor(self) -> int:
        lo, hi = floor_int(self.lower), floor_int(self.upper)
        if lo != hi:
            raise PrecisionExhausted("floor is ambiguous", self.precision_digits)
        return lo

    def sign(self) -> int:
        if self.lower > 0:
            return 1
        if self.upper < 0:
            return -1
        if self.lower == self.upper == 0:
            return 0
        raise PrecisionExhausted("sign is ambiguous", self.precision_digits)

    def contains(self, value) -> bool:
        if isinstance(value, CertifiedReal):
            return self.lower <= value.lower and value.upper <= self.upper
        if isinstance(value, Fraction):
            value = mpq(value.numerator, value.denominator)
        return self.lower <= value <= self.upper

    def overlaps(self, other: "CertifiedReal") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def __lt__(self, other: Number) -> bool:
        o = self._coerce(other)
        if self.upper < o.lower:
            return True
        if self.lower >= o.upper:
            return False
        raise PrecisionExhausted("comparison is ambiguous", self.precision_digits)

    def __le__(self, other: Number) -> bool:
        o = self._coerce(other)
        if self.upper <= o.lower:
            return True
        if self.lower > o.upper:
            return False
        raise PrecisionExhausted("comparison is ambiguous", self.precision_digits)

    def __gt__(self, other: Number) -> bool:
        return self._coerce(other) < self

    def __ge__(self, other: Number) -> bool:
        return self._coerce(other) <= self

    # -- presentation --------------------------------------------------------

    def __float__(self) -> float:
        return float(self.midpoint)

    def lower_float(self) -> float:
        """Largest double not above ``lower``."""
        x = float(self.lower)
        return math.nextafter(x, -math.inf) if x > self.lower else x

    def upper_float(self) -> float:
        x = float(self.upper)
        return math.nextafter(x, math.inf) if x < self.upper else x

    def to_string(self, sig: int = 20) -> str:
        return gmpy2.mpfr(self.midpoint, bits_for(sig)).__format__(f".{sig}g")

    def __repr__(self) -> str:
        return (
            f"CertifiedReal({self.to_string(20)} ± {float(self.radius):.3g}, "
            f"digits={self.precision_digits})"
        )


def certified_log(value, digits: int = DEFAULT_DIGITS) -> CertifiedReal:
    return CertifiedReal.exact(value, digits).log()


def retry_precision(fn: Callable[[int], T], digits: int, max_digits: int = MAX_DIGITS) -> tuple[T, int]:
    """Call ``fn(digits)``, doubling ``digits`` on :class:`PrecisionExhausted`."""
    while True:
        try:
            return fn(digits), digits
        except PrecisionExhausted:
            if digits * 2 > max_digits:
                raise
            digits *= 2
