"""Polynomials and rational functions over Q, with certified real-root isolation.

Polynomials are tuples of Fractions, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``. Real roots are isolated with Sturm
sequences and refined by bisection, so every reported interval provably
contains exactly one root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInputError
from .surd import QuadraticSurd

Poly = tuple

DEFAULT_ROOT_TOL = Fraction(1, 10**30)


def poly(coeffs) -> Poly:
    out = [c if isinstance(c, QuadraticSurd) else Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p: Poly) -> int:
    return len(p) - 1


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def psub(p: Poly, q: Poly) -> Poly:
    return padd(p, pneg(q))


def pscale(p: Poly, c) -> Poly:
    return poly(c * x for x in p)


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def ppow(p: Poly, k: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(k):
        out = pmul(out, p)
    return out


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] / lead
        q[shift] = c
        if c:
            for j, bc in enumerate(b):
                rem[shift + j] -= c * bc
    return poly(q), poly(rem[: len(b) - 1])


def monic(p: Poly) -> Poly:
    if not p:
        return p
    return pscale(p, 1 / p[-1])


def pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, monic(pdivmod(a, b)[1])
    return monic(a)


def pxgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g monic."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    lead = r0[-1]
    return pscale(r0, 1 / lead), pscale(s0, 1 / lead), pscale(t0, 1 / lead)


def pinvmod(a: Poly, m: Poly) -> Poly:
    """Inverse of a modulo m (they must be coprime)."""
    g, s, _ = pxgcd(a, m)
    if g != (Fraction(1),):
        raise InvalidInputError("polynomials are not coprime")
    return pdivmod(s, m)[1]


def pderiv(p: Poly) -> Poly:
    return poly(i * c for i, c in enumerate(p) if i)


def peval(p: Poly, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def peval_float(p: Poly, x: complex) -> complex:
    acc = 0j
    for c in reversed(p):
        acc = acc * x + float(c)
    return acc


def is_squarefree(p: Poly) -> bool:
    return degree(pgcd(p, pderiv(p))) == 0


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, pderiv(p)]
    while seq[-1]:
        seq.append(pneg(pdivmod(seq[-2], seq[-1])[1]))
    seq.pop()
    return seq


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(seq: Sequence[Poly], x) -> int:
    return _variations(_sign(peval(q, x)) for q in seq)


def _variations_at_inf(seq: Sequence[Poly], sign: int) -> int:
    return _variations(
        _sign(q[-1]) * (sign ** degree(q) if sign < 0 else 1) for q in seq
    )


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Distinct real roots in (lo, hi]; None means -inf / +inf."""
    if degree(p) < 1:
        return 0
    seq = sturm_sequence(p)
    v_lo = _variations_at_inf(seq, -1) if lo is None else _variations_at(seq, lo)
    v_hi = _variations_at_inf(seq, 1) if hi is None else _variations_at(seq, hi)
    return v_lo - v_hi


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every root satisfies |x| < bound."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in the closed interval [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo or fl + 1 <= hi:
        return Fraction(math.ceil(lo))
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


@dataclass(frozen=True)
class RealRoot:
    """A real root certified to lie in [lo, hi]; ``value`` is a representative.

    When ``exact`` is true the root is rational and equals ``value``.
    """

    lo: Fraction
    hi: Fraction
    value: Fraction
    exact: bool

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _no_roots_in(p: Poly, lo: Fraction, hi: Fraction) -> bool:
    if degree(p) < 1:
        return True
    if peval(p, lo) == 0 or peval(p, hi) == 0:
        return False
    return count_real_roots(p, lo, hi) == 0


def _refine(p: Poly, lo: Fraction, hi: Fraction, tol: Fraction, avoid: Sequence[Poly]) -> RealRoot:
    # Plain bisection, then one simplest-rational probe: a rational root with
    # denominator q is the simplest rational in any interval narrower than 1/q^2.
    s_lo = _sign(peval(p, lo))
    while True:
        if hi - lo <= tol:
            t = simplest_between(lo, hi)
            if peval(p, t) == 0:
                return RealRoot(t, t, t, True)
            if all(_no_roots_in(q, lo, hi) for q in avoid):
                return RealRoot(lo, hi, t, False)
        s = (lo + hi) / 2
        v = peval(p, s)
        if v == 0:
            return RealRoot(s, s, s, True)
        if _sign(v) == s_lo:
            lo = s
        else:
            hi = s


def isolate_real_roots(p: Poly, tol=DEFAULT_ROOT_TOL, avoid: Sequence[Poly] = ()) -> list[RealRoot]:
    """All real roots of a squarefree polynomial, sorted increasingly.

    Each irrational root is refined until its interval is at most ``tol`` wide
    and contains no root of any polynomial in ``avoid``; rational roots are
    detected exactly.
    """
    p = poly(p)
    if degree(p) < 1:
        return []
    if not is_squarefree(p):
        raise InvalidInputError("root isolation needs a squarefree polynomial")
    seq = sturm_sequence(p)
    bound = root_bound(p)
    out: list[RealRoot] = []

    def split(lo, hi, v_lo, v_hi):
        # roots in (lo, hi); neither endpoint is a root
        count = v_lo - v_hi
        if count == 0:
            return
        if count == 1:
            out.append(_refine(p, lo, hi, Fraction(tol), avoid))
            return
        # split at a non-root; among deg+1 distinct candidates one must work
        candidates = [simplest_between((3 * lo + hi) / 4, (lo + 3 * hi) / 4)]
        candidates += [lo + (hi - lo) * j / (degree(p) + 2) for j in range(1, degree(p) + 2)]
        mid = next(c for c in candidates if peval(p, c) != 0)
        v_mid = _variations_at(seq, mid)
        split(lo, mid, v_lo, v_mid)
        split(mid, hi, v_mid, v_hi)

    split(-bound, bound, _variations_at(seq, -bound), _variations_at(seq, bound))
    out.sort(key=lambda r: r.value)
    return out


@dataclass(frozen=True)
class RationalFn:
    """num/den over Q, stored reduced with a monic denominator."""

    num: Poly
    den: Poly = (Fraction(1),)

    def __post_init__(self):
        num, den = poly(self.num), poly(self.den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = (Fraction(1),)
        else:
            g = pgcd(num, den)
            if degree(g) > 0:
                num, den = pdivmod(num, g)[0], pdivmod(den, g)[0]
            lead = den[-1]
            num, den = pscale(num, 1 / lead), pscale(den, 1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def const(cls, c) -> "RationalFn":
        return cls(poly([c]))

    @classmethod
    def identity(cls) -> "RationalFn":
        return cls(poly([0, 1]))

    @staticmethod
    def _lift(other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFn.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RationalFn(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(pneg(self.num), self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RationalFn(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalFn":
        if not self.num:
            raise ZeroDivisionError("reciprocal of the zero function")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def compose(self, inner: "RationalFn") -> "RationalFn":
        """self(inner(z))."""
        d = max(degree(self.num), degree(self.den), 0)
        a, b = inner.num, inner.den
        a_pows = [ppow(a, i) for i in range(d + 1)]
        b_pows = [ppow(b, i) for i in range(d + 1)]

        def homog(p):
            acc: Poly = ()
            for i, c in enumerate(p):
                acc = padd(acc, pscale(pmul(a_pows[i], b_pows[d - i]), c))
            return acc

        return RationalFn(homog(self.num), homog(self.den))

    def __call__(self, x):
        if isinstance(x, complex) or isinstance(x, float):
            return peval_float(self.num, x) / peval_float(self.den, x)
        return peval(self.num, x) / peval(self.den, x)

    def split_polynomial(self) -> tuple[Poly, "RationalFn"]:
        """Return (polynomial part, strictly proper remainder)."""
        q, r = pdivmod(self.num, self.den)
        return q, RationalFn(r, self.den)

    def series_at_infinity(self, count: int) -> list[Fraction]:
        """Coefficients c_0..c_{count-1} of a strictly proper f = sum c_j z^{-j-1}."""
        num, den = self.num, self.den
        k = degree(den)
        if num and degree(num) >= k:
            raise InvalidInputError("series_at_infinity needs a strictly proper function")
        coeffs: list[Fraction] = []
        for t in range(count):
            idx = k - 1 - t
            c = num[idx] if 0 <= idx < len(num) else Fraction(0)
            for j in range(max(0, k - t), k):
                c -= den[j] * coeffs[j + t - k]
            coeffs.append(c)
        return coeffs

    def __str__(self):
        return f"({_pstr(self.num)})/({_pstr(self.den)})"


def _pstr(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            z = "z" if i == 1 else f"z^{i}"
            terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
    return " + ".join(terms).replace("+ -", "- ")
