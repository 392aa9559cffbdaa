"""Moment and cumulant sequences (finite-order truncations, exact entries)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InvalidInputError
from .surd import QuadraticSurd


class Flavor(str, enum.Enum):
    CLASSICAL = "classical"
    FREE = "free"
    BOOLEAN = "boolean"
    MONOTONE = "monotone"

    @classmethod
    def parse(cls, value) -> "Flavor":
        if isinstance(value, Flavor):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(f.value for f in cls)
            raise InvalidInputError(f"unknown flavor {value!r} (expected one of {names})")


def exact(x):
    """Coerce to an exact scalar (Fraction or QuadraticSurd); floats are rejected."""
    if isinstance(x, QuadraticSurd):
        return x
    if isinstance(x, bool):
        raise InvalidInputError("booleans are not numbers here")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise InvalidInputError(f"not a rational number: {x!r}")
    raise InvalidInputError(f"expected an exact rational, got {type(x).__name__} {x!r}")


def _exact_tuple(values) -> tuple:
    out = tuple(exact(v) for v in values)
    if not out:
        raise InvalidInputError("sequence order must be >= 1")
    return out


@dataclass(frozen=True)
class MomentSeq:
    """Raw moments m_1..m_N; m_0 = 1 is implicit."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", _exact_tuple(self.values))

    @property
    def N(self) -> int:
        return len(self.values)

    def moment(self, n: int):
        if n == 0:
            return Fraction(1)
        if not 1 <= n <= self.N:
            raise InvalidInputError(f"moment m_{n} not available (order {self.N})")
        return self.values[n - 1]

    def truncate(self, N: int) -> "MomentSeq":
        if N > self.N:
            raise InvalidInputError(f"cannot truncate order {self.N} to {N}")
        return MomentSeq(self.values[:N])

    def __str__(self):
        return ",".join(str(v) for v in self.values)


@dataclass(frozen=True)
class CumulantSeq:
    """Cumulants of one flavor: c_n, kappa_n, r_n or h_n for n = 1..N."""

    flavor: Flavor
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "flavor", Flavor.parse(self.flavor))
        object.__setattr__(self, "values", _exact_tuple(self.values))

    @property
    def N(self) -> int:
        return len(self.values)

    def cumulant(self, n: int):
        if not 1 <= n <= self.N:
            raise InvalidInputError(f"cumulant of order {n} not available (order {self.N})")
        return self.values[n - 1]

    def truncate(self, N: int) -> "CumulantSeq":
        if N > self.N:
            raise InvalidInputError(f"cannot truncate order {self.N} to {N}")
        return CumulantSeq(self.flavor, self.values[:N])

    def __str__(self):
        return ",".join(str(v) for v in self.values)


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    """Parse ``"0,1,3/2"`` into Fractions."""
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    if not parts:
        raise InvalidInputError("empty number list")
    return tuple(exact(p) for p in parts)
