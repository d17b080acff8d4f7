"""Exact interval arithmetic with rational endpoints.

Used to certify quantities derived from irrational eigenvalues: every
operation returns an interval guaranteed to contain the true value, with
no floating-point rounding anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        assert self.lo <= self.hi

    @staticmethod
    def point(x) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other) -> "Interval":
        other = _coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Interval":
        other = _coerce(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        other = _coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        inv = Interval(1 / other.hi, 1 / other.lo)
        return self * inv

    def __rtruediv__(self, other) -> "Interval":
        return _coerce(other) / self

    def square(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            return Interval(Fraction(0), max(self.lo * self.lo, self.hi * self.hi))
        vals = (self.lo * self.lo, self.hi * self.hi)
        return Interval(min(vals), max(vals))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(Fraction(x))


def interval_sum(items) -> Interval:
    total = Interval.point(0)
    for it in items:
        total = total + it
    return total
