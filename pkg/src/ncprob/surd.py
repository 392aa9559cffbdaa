"""Exact arithmetic in a quadratic field Q[sqrt(d)].

Normalized sums S_n / sqrt(n) scale odd cumulants by irrational factors; this
keeps those computations exact. Values whose irrational part vanishes collapse
back to :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import InvalidInputError


def _squarefree_split(m: int) -> tuple[int, int]:
    """Return (s, r) with m = s**2 * r; r is squarefree when m < 10**12."""
    s, r = 1, m
    k = 2
    while k * k <= r and k <= 10**6:
        while r % (k * k) == 0:
            r //= k * k
            s *= k
        k += 1
    return s, r


class QuadraticSurd:
    """The number ``a + b*sqrt(d)`` with rational a, b and squarefree integer d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    @staticmethod
    def make(a, b, d):
        """Canonical constructor; returns a Fraction when the surd part vanishes."""
        a, b, d = Fraction(a), Fraction(b), Fraction(d)
        if d < 0:
            raise InvalidInputError("only real quadratic fields are supported")
        if b == 0 or d == 0:
            return a
        # sqrt(p/q) = sqrt(p*q)/q
        m = d.numerator * d.denominator
        s, r = _squarefree_split(m)
        b = b * s / d.denominator
        if r == 1:
            return a + b
        return QuadraticSurd(a, b, r)

    @classmethod
    def sqrt(cls, x):
        return cls.make(0, 1, x)

    def _coerce(self, other):
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise InvalidInputError(
                    f"cannot mix sqrt({self.d}) and sqrt({other.d})"
                )
            return other.a, other.b
        if isinstance(other, (int, Rational)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return QuadraticSurd.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return QuadraticSurd.make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        a, b = c
        return QuadraticSurd.make(
            self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d
        )

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.d
        return QuadraticSurd.make(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadraticSurd):
            return self * other.inverse()
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return QuadraticSurd.make(self.a / c[0], self.b / c[0], self.d)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Fraction(1), self
        while k:
            if k & 1:
                result = base * result
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Rational)):
            return False  # canonical surds always carry a nonzero irrational part
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        sa, sb = (self.a > 0) - (self.a < 0), (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: the larger square wins
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, QuadraticSurd):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadraticSurd({self.a}, {self.b}, {self.d})"

    def __str__(self):
        b = f"{self.b}*sqrt({self.d})" if self.b != 1 else f"sqrt({self.d})"
        if self.b == -1:
            b = f"-sqrt({self.d})"
        if self.a == 0:
            return b
        sign = "" if b.startswith("-") else "+"
        return f"{self.a}{sign}{b}"


def exact_sqrt(x):
    """sqrt of a nonnegative rational, as Fraction when possible else QuadraticSurd."""
    return QuadraticSurd.sqrt(x)
