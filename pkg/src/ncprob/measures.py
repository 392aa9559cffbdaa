"""Finitely supported measures and their exact rational transforms.

A measure's Cauchy transform G(z) = sum_i w_i / (z - b_i) is a rational
function over Q whenever the atoms and weights are rational. Boolean and
monotone convolution act on G through F = 1/G and K = z - F, so their results
are again rational functions, but the new atoms are roots of a polynomial and
can be irrational. Such measures keep the exact G alongside atom values that
are certified to lie within ``ROOT_TOL`` of the true roots (``exact=False``);
moments are always read off G, so they stay exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import (
    InternalInvariantError,
    InvalidInputError,
    NotAMeasureError,
    UnsupportedOperationError,
)
from .rational import (
    DEFAULT_ROOT_TOL,
    RationalFn,
    count_real_roots,
    degree,
    is_squarefree,
    isolate_real_roots,
    pderiv,
    pdivmod,
    peval,
    pinvmod,
    pmul,
    poly,
)
from .sequences import MomentSeq, exact

ROOT_TOL = DEFAULT_ROOT_TOL

_Z = RationalFn.identity()


def _cauchy_from_atoms(atoms, weights) -> RationalFn:
    g = RationalFn(())
    for b, w in zip(atoms, weights):
        g = g + RationalFn(poly([w]), poly([-b, 1]))
    return g


@dataclass(frozen=True)
class FiniteMeasure:
    """Finite nonnegative measure sum_i weights[i] * delta(atoms[i]).

    ``cauchy`` is the exact Cauchy transform. With ``exact=False`` the atoms
    and weights are certified approximations and ``cauchy`` is authoritative.
    """

    atoms: tuple = ()
    weights: tuple = ()
    cauchy: RationalFn | None = field(default=None, compare=False, repr=False)
    exact: bool = True

    def __post_init__(self):
        atoms = tuple(exact(a) for a in self.atoms)
        weights = tuple(exact(w) for w in self.weights)
        if len(atoms) != len(weights):
            raise InvalidInputError("atoms and weights differ in length")
        if any(a2 <= a1 for a1, a2 in zip(atoms, atoms[1:])):
            raise InvalidInputError("atoms must be strictly increasing")
        if any(w < 0 for w in weights):
            raise InvalidInputError("weights must be nonnegative")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)
        if self.cauchy is None:
            if not self.exact:
                raise InvalidInputError("inexact measures must carry their Cauchy transform")
            object.__setattr__(self, "cauchy", _cauchy_from_atoms(atoms, weights))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], **kw):
        """Build from (atom, weight) pairs in any order; repeated atoms are merged."""
        merged: dict[Fraction, Fraction] = {}
        for a, w in pairs:
            a, w = exact(a), exact(w)
            merged[a] = merged.get(a, Fraction(0)) + w
        items = sorted((a, w) for a, w in merged.items() if w != 0)
        return cls(tuple(a for a, _ in items), tuple(w for _, w in items), **kw)

    def __len__(self):
        return len(self.atoms)

    @property
    def total_mass(self) -> Fraction:
        return self.raw_moments(0)[0]

    def raw_moments(self, N: int) -> list[Fraction]:
        """m_0..m_N (m_0 is the total mass), exact."""
        return self.cauchy.series_at_infinity(N + 1)

    def to_json_dict(self) -> dict:
        out = {
            "atoms": [str(a) for a in self.atoms],
            "weights": [str(w) for w in self.weights],
        }
        if not self.exact:
            out["exact"] = False
            out["cauchy"] = {
                "num": [str(c) for c in self.cauchy.num],
                "den": [str(c) for c in self.cauchy.den],
            }
        return out

    @classmethod
    def from_json_dict(cls, data: dict):
        try:
            atoms, weights = data["atoms"], data["weights"]
        except (KeyError, TypeError):
            raise InvalidInputError("measure JSON needs 'atoms' and 'weights' lists")
        cauchy = None
        is_exact = bool(data.get("exact", True))
        if "cauchy" in data:
            cauchy = RationalFn(
                poly(exact(c) for c in data["cauchy"]["num"]),
                poly(exact(c) for c in data["cauchy"]["den"]),
            )
        return cls(tuple(atoms), tuple(weights), cauchy=cauchy, exact=is_exact)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


@dataclass(frozen=True)
class AtomicMeasure(FiniteMeasure):
    """Finitely supported probability measure."""

    def __post_init__(self):
        super().__post_init__()
        if not self.atoms:
            raise InvalidInputError("a probability measure needs at least one atom")
        if any(w <= 0 for w in self.weights):
            raise InvalidInputError("weights must be positive")
        if self.exact and sum(self.weights) != 1:
            raise InvalidInputError(f"weights sum to {sum(self.weights)}, not 1")

    def moments(self, N: int) -> MomentSeq:
        return MomentSeq(self.raw_moments(N)[1:])

    @classmethod
    def dirac(cls, c=0) -> "AtomicMeasure":
        return cls((exact(c),), (Fraction(1),))


def bernoulli() -> AtomicMeasure:
    """Symmetric Bernoulli law (delta_{-1} + delta_1) / 2."""
    return AtomicMeasure((Fraction(-1), Fraction(1)), (Fraction(1, 2), Fraction(1, 2)))


@dataclass(frozen=True)
class LevyPair:
    """Generating pair (gamma, sigma): a real drift and a finite measure."""

    gamma: Fraction = Fraction(0)
    sigma: FiniteMeasure = field(default_factory=FiniteMeasure)

    def __post_init__(self):
        object.__setattr__(self, "gamma", exact(self.gamma))
        if not isinstance(self.sigma, FiniteMeasure):
            raise InvalidInputError("sigma must be a FiniteMeasure")


def cauchy_of_atomic(mu: FiniteMeasure) -> RationalFn:
    return mu.cauchy


def _check_cauchy_profile(G: RationalFn) -> None:
    if not G.num or degree(G.num) != degree(G.den) - 1 or G.num[-1] != 1:
        raise InvalidInputError(f"{G} does not behave like 1/z at infinity")


def _real_simple_poles(num, den, tol, extra_avoid=()):
    # Poles of num/den (reduced, den monic) with residues; None when a pole is
    # complex or repeated.
    if not is_squarefree(den):
        return None
    if count_real_roots(den) != degree(den):
        return None
    dden = pderiv(den)
    roots = isolate_real_roots(den, tol, avoid=(num, dden) + tuple(extra_avoid))
    residues = [peval(num, r.value) / peval(dden, r.value) for r in roots]
    return roots, residues


def measure_from_rational_G(G: RationalFn, tol=None) -> AtomicMeasure:
    """Atoms are the poles of G, weights its residues."""
    try:
        _check_cauchy_profile(G)
    except InvalidInputError as exc:
        raise NotAMeasureError(f"not the Cauchy transform of a probability measure: {exc}")
    found = _real_simple_poles(G.num, G.den, ROOT_TOL if tol is None else tol)
    if found is None:
        raise NotAMeasureError(f"{G} has a complex or repeated pole")
    roots, residues = found
    if any(w <= 0 for w in residues):
        raise NotAMeasureError(f"{G} has a nonpositive residue")
    is_exact = all(r.exact for r in roots)
    return AtomicMeasure(
        tuple(r.value for r in roots), tuple(residues), cauchy=G, exact=is_exact
    )


def moments_of_rational_G(G: RationalFn, N: int) -> MomentSeq:
    _check_cauchy_profile(G)
    return MomentSeq(G.series_at_infinity(N + 1)[1:])


def _assemble(G: RationalFn, what: str) -> AtomicMeasure:
    try:
        return measure_from_rational_G(G)
    except (NotAMeasureError, InvalidInputError) as exc:
        raise InternalInvariantError(f"{what} did not produce a probability measure: {exc}")


def self_energy(mu: FiniteMeasure) -> RationalFn:
    """K(z) = z - 1/G(z)."""
    return _Z - mu.cauchy.reciprocal()


def boolean_convolve(mu1: AtomicMeasure, mu2: AtomicMeasure) -> AtomicMeasure:
    K = self_energy(mu1) + self_energy(mu2)
    return _assemble((_Z - K).reciprocal(), "Boolean convolution")


def monotone_convolve(mu1: AtomicMeasure, mu2: AtomicMeasure) -> AtomicMeasure:
    F = mu1.cauchy.reciprocal().compose(mu2.cauchy.reciprocal())
    return _assemble(F.reciprocal(), "monotone convolution")


def classical_convolve(mu1: AtomicMeasure, mu2: AtomicMeasure) -> AtomicMeasure:
    if not (mu1.exact and mu2.exact):
        raise UnsupportedOperationError(
            "classical convolution needs measures with exact rational atoms"
        )
    return AtomicMeasure.from_pairs(
        (a + b, v * w)
        for a, v in zip(mu1.atoms, mu1.weights)
        for b, w in zip(mu2.atoms, mu2.weights)
    )


def boolean_levy_pair(mu: AtomicMeasure, tol=None) -> LevyPair:
    """Boolean generating pair of mu from the partial fractions of K = z - 1/G.

    K(z) = alpha + sum_j rho_j / (z - p_j) and
    gamma + sum_j s_j (1 + p_j z)/(z - p_j) agree when s_j = rho_j / (1 + p_j^2)
    and gamma = alpha - sum_j s_j p_j.
    """
    tol = ROOT_TOL if tol is None else tol
    alpha_part, proper = self_energy(mu).split_polynomial()
    if degree(alpha_part) > 0:
        raise InternalInvariantError("self-energy grows at infinity")
    alpha = alpha_part[0] if alpha_part else Fraction(0)
    R, P = proper.num, proper.den
    if not R:
        return LevyPair(alpha, FiniteMeasure())
    # G_sigma = S/P with S = R / (1 + z^2) mod P
    S = pdivmod(pmul(R, pinvmod(poly([1, 0, 1]), P)), P)[1]
    found = _real_simple_poles(R, P, tol, extra_avoid=(S,))
    if found is None:
        raise InternalInvariantError("self-energy has a complex or repeated pole")
    roots, rho = found
    if any(r <= 0 for r in rho):
        raise InternalInvariantError("self-energy has a nonpositive residue")
    dP = pderiv(P)
    masses = tuple(peval(S, r.value) / peval(dP, r.value) for r in roots)
    g_sigma = RationalFn(S, P)
    sigma = FiniteMeasure(
        tuple(r.value for r in roots),
        masses,
        cauchy=g_sigma,
        exact=all(r.exact for r in roots),
    )
    m1 = g_sigma.series_at_infinity(2)[1]
    return LevyPair(alpha - m1, sigma)


def levy_kernel_transform(pair: LevyPair) -> RationalFn:
    """gamma + integral (1 + t z)/(z - t) sigma(dt), as an exact rational function.

    Uses sum_j s_j (1 + p_j z)/(z - p_j) = (1 + z^2) G_sigma(z) - m_0(sigma) z.
    """
    mass = pair.sigma.total_mass
    return RationalFn.const(pair.gamma) + RationalFn(poly([1, 0, 1])) * pair.sigma.cauchy - _Z * mass


def boolean_measure_from_levy_pair(pair: LevyPair) -> AtomicMeasure:
    """The law whose self-energy K is the Levy-Khintchine transform of ``pair``."""
    K = levy_kernel_transform(pair)
    return _assemble((_Z - K).reciprocal(), "Boolean Levy-Khintchine inversion")
