"""Numerical Cauchy transforms of named laws and the sampled weak-convergence distance.

Closed forms are used for the semicircle, arcsine and Bernoulli laws; the
normal law and density-defined laws go through adaptive Gauss-Kronrod
quadrature (QUADPACK via scipy). The distance

    d(mu, nu) = sup_{Im z >= 1} |G_mu(z) - G_nu(z)|

is estimated on the line Im z = 1, so the returned value is a lower bound of
the true supremum.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from scipy import integrate

from .errors import AccuracyError, DomainError, InvalidInputError
from .measures import AtomicMeasure
from .sequences import MomentSeq, exact
from .spectral import cauchy_cf_eval, jacobi_from_moments

QUAD_EPS = 1e-12
QUAD_FAIL = 1e-9
NORMAL_TRUNCATION = 12.0
DEFAULT_GRID_L = 10.0
DEFAULT_GRID_M = 201

KINDS = (
    "atomic",
    "discrete",
    "semicircle",
    "arcsine",
    "bernoulli_sym",
    "normal",
    "density",
    "moments_only",
)


@dataclass(frozen=True)
class LawDescriptor:
    """A probability law in one of the representations ``cauchy_eval`` understands.

    ``discrete`` is a float-valued finitely supported law (used for lattice
    laws such as a normalized Poisson variable whose weights are not rational).
    """

    kind: str
    measure: AtomicMeasure | None = None
    mean: Fraction = Fraction(0)
    variance: Fraction = Fraction(1)
    pdf: Callable[[float], float] | None = field(default=None, compare=False)
    support: tuple[float, float] | None = None
    moments: MomentSeq | None = None
    points: tuple = ()
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown law kind {self.kind!r}")
        if self.kind in ("semicircle", "arcsine", "normal") and self.variance <= 0:
            raise InvalidInputError("variance must be positive")

    @classmethod
    def atomic(cls, mu: AtomicMeasure, label="atomic"):
        return cls("atomic", measure=mu, label=label)

    @classmethod
    def discrete(cls, atoms, weights, label="discrete"):
        pts = tuple((float(a), float(w)) for a, w in zip(atoms, weights))
        total = sum(w for _, w in pts)
        if any(w < 0 for _, w in pts) or abs(total - 1) > 1e-12:
            raise InvalidInputError(f"discrete weights must be >= 0 and sum to 1 (got {total})")
        return cls("discrete", points=pts, label=label)

    @classmethod
    def semicircle(cls, mean=0, variance=1):
        return cls("semicircle", mean=exact(mean), variance=exact(variance), label="semicircle")

    @classmethod
    def arcsine(cls, mean=0, variance=1):
        return cls("arcsine", mean=exact(mean), variance=exact(variance), label="arcsine")

    @classmethod
    def bernoulli_sym(cls):
        return cls("bernoulli_sym", label="bernoulli")

    @classmethod
    def normal(cls, mean=0, variance=1):
        return cls("normal", mean=exact(mean), variance=exact(variance), label="normal")

    @classmethod
    def density(cls, pdf, support, label="density", check=True):
        lo, hi = float(support[0]), float(support[1])
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise InvalidInputError("density laws need a finite support interval")
        law = cls("density", pdf=pdf, support=(lo, hi), label=label)
        if check:
            total, err = _quad(pdf, lo, hi)
            if abs(total - 1) > 1e-10:
                raise InvalidInputError(f"density integrates to {total!r}, not 1")
        return law

    @classmethod
    def moments_only(cls, m: MomentSeq, label="moments"):
        return cls("moments_only", moments=m, label=label)

    @property
    def std(self) -> float:
        return math.sqrt(float(self.variance))


def _quad(f, lo, hi, points=None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(
            f, lo, hi, epsabs=QUAD_EPS, epsrel=QUAD_EPS, limit=500, points=points
        )
    if not err <= QUAD_FAIL:
        raise AccuracyError(
            f"quadrature on [{lo}, {hi}] reached only {err:.3g}", achieved=err
        )
    return val, err


def _cauchy_quad(pdf, lo, hi, z: complex) -> complex:
    u, v = z.real, z.imag
    pts = [u] if lo < u < hi else None
    re, _ = _quad(lambda x: pdf(x) * (u - x) / ((u - x) ** 2 + v * v), lo, hi, pts)
    im, _ = _quad(lambda x: -pdf(x) * v / ((u - x) ** 2 + v * v), lo, hi, pts)
    return complex(re, im)


def _sqrt_product(w: complex, a: float) -> complex:
    # sqrt(w - a) * sqrt(w + a): the branch of sqrt(w^2 - a^2) that behaves like w
    return cmath.sqrt(w - a) * cmath.sqrt(w + a)


def semicircle_pdf(x: float, mean=0.0, variance=1.0) -> float:
    s = math.sqrt(variance)
    t = (x - mean) / s
    return math.sqrt(max(4 - t * t, 0.0)) / (2 * math.pi) / s


def arcsine_pdf(x: float, mean=0.0, variance=1.0) -> float:
    s = math.sqrt(variance)
    t = (x - mean) / s
    if abs(t) >= math.sqrt(2):
        return 0.0
    return 1 / (math.pi * math.sqrt(2 - t * t)) / s


def normal_pdf(x: float, mean=0.0, variance=1.0) -> float:
    return math.exp(-((x - mean) ** 2) / (2 * variance)) / math.sqrt(2 * math.pi * variance)


TETILLA_EDGE = math.sqrt((11 + 5 * math.sqrt(5)) / 2)


def tetilla_pdf(t: float) -> float:
    """Density of the free commutator s1 s2 + s2 s1 of two free standard semicircles."""
    t = abs(t)
    if t > TETILLA_EDGE:
        return 0.0
    if t < 1e-7:
        return 1 / math.pi  # limit at the origin
    disc = max(t * t * (1 + 11 * t * t - t**4) / 27, 0.0)
    h = ((18 * t * t + 1) / 27 + math.sqrt(disc)) ** (1 / 3)
    return math.sqrt(3) / (2 * math.pi * t) * (h - (3 * t * t + 1) / (9 * h))


def tetilla_law() -> LawDescriptor:
    return LawDescriptor.density(tetilla_pdf, (-TETILLA_EDGE, TETILLA_EDGE), label="tetilla")


def cauchy_eval(law: LawDescriptor, z: complex) -> complex:
    z = complex(z)
    if z.imag < 1:
        raise DomainError(f"need Im z >= 1, got {z}")
    kind = law.kind
    if kind == "atomic":
        mu = law.measure
        return sum(float(w) / (z - float(b)) for b, w in zip(mu.atoms, mu.weights))
    if kind == "discrete":
        return sum(w / (z - b) for b, w in law.points)
    if kind == "bernoulli_sym":
        # z/(z^2 - 1), summed over poles so it agrees bitwise with the atomic form
        return 0.5 / (z + 1) + 0.5 / (z - 1)
    if kind in ("semicircle", "arcsine"):
        s = law.std
        w = (z - float(law.mean)) / s
        if kind == "semicircle":
            return (w - _sqrt_product(w, 2.0)) / 2 / s
        return 1 / _sqrt_product(w, math.sqrt(2)) / s
    if kind == "normal":
        m, var = float(law.mean), float(law.variance)
        half = NORMAL_TRUNCATION * math.sqrt(var)
        return _cauchy_quad(lambda x: normal_pdf(x, m, var), m - half, m + half, z)
    if kind == "density":
        lo, hi = law.support
        return _cauchy_quad(law.pdf, lo, hi, z)
    # moments_only: truncated continued fraction with zero tail
    J = jacobi_from_moments(law.moments)
    return cauchy_cf_eval(J, z)


def grid_points(L: float = DEFAULT_GRID_L, M: int = DEFAULT_GRID_M) -> list[complex]:
    if M < 2:
        raise InvalidInputError("grid needs at least 2 points")
    if L <= 0:
        raise InvalidInputError("grid half-width must be positive")
    return [complex(-L + 2 * L * j / (M - 1), 1.0) for j in range(M)]


def weak_distance(law1: LawDescriptor, law2: LawDescriptor, L: float = DEFAULT_GRID_L,
                  M: int = DEFAULT_GRID_M) -> float:
    return max(abs(cauchy_eval(law1, z) - cauchy_eval(law2, z)) for z in grid_points(L, M))


def quadrature_moments(law: LawDescriptor, N: int) -> list[float]:
    """m_1..m_N of a density law by adaptive quadrature (absolute tolerance 1e-9)."""
    if law.kind != "density":
        raise InvalidInputError("quadrature moments need a density law")
    lo, hi = law.support
    return [_quad(lambda x, n=n: x**n * law.pdf(x), lo, hi)[0] for n in range(1, N + 1)]


def _shifted(centered: list[Fraction], mean: Fraction, N: int) -> MomentSeq:
    # moments of mean + Y from those of Y (centered[0] = 1)
    return MomentSeq(
        [sum(comb(n, j) * mean ** (n - j) * centered[j] for j in range(n + 1)) for n in range(1, N + 1)]
    )


def law_moments(law: LawDescriptor, N: int) -> MomentSeq:
    """Exact moments m_1..m_N where the law has them in closed form."""
    kind = law.kind
    if kind == "atomic":
        return law.measure.moments(N)
    if kind == "moments_only":
        return law.moments.truncate(N)
    if kind == "bernoulli_sym":
        return MomentSeq([Fraction(1 - n % 2) for n in range(1, N + 1)])
    if kind in ("semicircle", "arcsine", "normal"):
        v = law.variance
        even = {
            "semicircle": lambda k: Fraction(comb(2 * k, k), k + 1) * v**k,
            "arcsine": lambda k: Fraction(comb(2 * k, k)) * (v / 2) ** k,
            "normal": lambda k: math.prod(range(1, 2 * k, 2)) * v**k,
        }[kind]
        centered = [Fraction(1)] + [
            even(n // 2) if n % 2 == 0 else Fraction(0) for n in range(1, N + 1)
        ]
        return _shifted(centered, law.mean, N)
    raise InvalidInputError(f"no exact moments for a {kind} law")
