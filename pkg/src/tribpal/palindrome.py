"""Palindromic concatenations of two distinct repdigits: d1^ell d2^m d1^ell."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .recurrence import trib_lucas_prefix


@dataclass(frozen=True, order=True)
class PatternParams:
    d1: int
    d2: int
    ell: int
    m: int

    def __post_init__(self):
        if not 1 <= self.d1 <= 9:
            raise ValueError(f"d1 must be in 1..9, got {self.d1}")
        if not 0 <= self.d2 <= 9:
            raise ValueError(f"d2 must be in 0..9, got {self.d2}")
        if self.d1 == self.d2:
            raise ValueError("d1 and d2 must differ")
        if self.ell < 1 or self.m < 1:
            raise ValueError("block lengths must be positive")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.d1, self.d2, self.ell, self.m)


@dataclass(frozen=True, order=True)
class PatternSolution:
    n: int
    params: PatternParams

    @property
    def value(self) -> int:
        return compose(self.params)


def compose(params: PatternParams) -> int:
    """Closed form (d1 10^(2l+m) - (d1-d2) 10^(l+m) + (d1-d2) 10^l - d1) / 9."""
    d1, d2, ell, m = params.as_tuple()
    numerator = d1 * 10 ** (2 * ell + m) - (d1 - d2) * 10 ** (ell + m) + (d1 - d2) * 10**ell - d1
    value, rem = divmod(numerator, 9)
    if rem:
        raise ArithmeticError("closed form is not integral")  # cannot happen for valid params
    return value


def compose_digits(params: PatternParams) -> int:
    d1, d2, ell, m = params.as_tuple()
    return int(str(d1) * ell + str(d2) * m + str(d1) * ell)


def recognize(N: int) -> Optional[PatternParams]:
    """Return the unique pattern parameters producing N, or None."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    s = str(N)
    d1 = s[0]
    ell = len(s) - len(s.lstrip(d1))
    middle_len = len(s) - 2 * ell
    if middle_len < 1:
        return None
    if s[-ell:] != d1 * ell:
        return None
    middle = s[ell : ell + middle_len]
    d2 = middle[0]
    if d2 == d1 or middle != d2 * middle_len:
        return None
    return PatternParams(int(d1), int(d2), ell, middle_len)


def search_low_range(n_max: int) -> list[PatternSolution]:
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    found = []
    for n, value in enumerate(trib_lucas_prefix(n_max)):
        params = recognize(value)
        if params is not None:
            found.append(PatternSolution(n, params))
    return found
