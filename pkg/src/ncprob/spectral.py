"""Jacobi parameters, finite-support detection and continued-fraction Cauchy transforms.

Convention: from moments m_1..m_N we compute every parameter they determine,
beta_j for 2j+1 <= N and gamma_j for 2j+2 <= N. A parameter list whose last
gamma is zero is *terminated*: the measure has exactly len(betas) atoms and
the continued fraction is finite.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainError,
    InvalidInputError,
    InvalidMomentSequenceError,
    OrderLimitError,
)
from .measures import AtomicMeasure, measure_from_rational_G
from .rational import RationalFn, padd, pmul, poly, pscale
from .sequences import MomentSeq, exact

_Z = RationalFn.identity()


@dataclass(frozen=True)
class JacobiParams:
    betas: tuple
    gammas: tuple = ()

    def __post_init__(self):
        betas = tuple(exact(b) for b in self.betas)
        gammas = tuple(exact(g) for g in self.gammas)
        if not betas:
            raise InvalidInputError("Jacobi parameters need at least beta_0")
        if len(gammas) not in (len(betas) - 1, len(betas)):
            raise InvalidInputError(
                f"{len(betas)} betas need {len(betas) - 1} or {len(betas)} gammas"
            )
        if any(g < 0 for g in gammas):
            raise InvalidInputError("gammas must be nonnegative")
        if any(g == 0 for g in gammas[:-1]) or (
            gammas and gammas[-1] == 0 and len(gammas) != len(betas)
        ):
            raise InvalidInputError("no parameters may follow a vanishing gamma")
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "gammas", gammas)

    @classmethod
    def point_mass(cls, c=0) -> "JacobiParams":
        return cls((exact(c),), (Fraction(0),))

    @property
    def levels(self) -> int:
        return len(self.betas)

    @property
    def terminated(self) -> bool:
        return bool(self.gammas) and self.gammas[-1] == 0

    @property
    def determined_order(self) -> int | None:
        """Largest N for which m_1..m_N are fixed by these parameters (None = all)."""
        if self.terminated:
            return None
        return min(2 * len(self.betas), 2 * len(self.gammas) + 1)

    def truncate(self, levels: int) -> "JacobiParams":
        """Keep beta_0..beta_{levels-1} and gamma_0..gamma_{levels-1}."""
        if levels < 1:
            raise InvalidInputError("need at least one level")
        return JacobiParams(self.betas[:levels], self.gammas[:levels])

    def to_json_dict(self) -> dict:
        return {"beta": [str(b) for b in self.betas], "gamma": [str(g) for g in self.gammas]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "JacobiParams":
        try:
            return cls(tuple(data["beta"]), tuple(data.get("gamma", ())))
        except (KeyError, TypeError):
            raise InvalidInputError("Jacobi JSON needs a 'beta' list")

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def jacobi_from_moments(m: MomentSeq) -> JacobiParams:
    """Monic orthogonal recursion by exact Gram-Schmidt against the moment functional."""
    mm = [Fraction(1)] + list(m.values)
    N = m.N

    def L(p):
        return sum((c * mm[i] for i, c in enumerate(p)), Fraction(0))

    x = poly([0, 1])
    p_prev, p_cur = (), poly([1])
    norm = Fraction(1)
    betas, gammas = [], []
    j = 0
    while 2 * j + 1 <= N:
        beta = L(pmul(x, pmul(p_cur, p_cur))) / norm
        betas.append(beta)
        if 2 * j + 2 > N:
            break
        p_next = padd(pmul(padd(x, poly([-beta])), p_cur), pscale(p_prev, -gammas[-1]) if gammas else ())
        norm_next = L(pmul(p_next, p_next))
        gamma = norm_next / norm
        if gamma < 0:
            raise InvalidMomentSequenceError(
                f"gamma_{j} = {gamma} < 0: not the moment sequence of a probability measure"
            )
        gammas.append(gamma)
        if gamma == 0:
            J = JacobiParams(tuple(betas), tuple(gammas))
            if moments_from_jacobi(J, N) != m:
                raise InvalidMomentSequenceError(
                    f"moments beyond order {2 * j + 2} are inconsistent with a "
                    f"{j + 1}-point measure"
                )
            return J
        p_prev, p_cur, norm = p_cur, p_next, norm_next
        j += 1
    return JacobiParams(tuple(betas), tuple(gammas))


def _cf_rational(J: JacobiParams) -> RationalFn:
    # Finite fraction; an untruncated last gamma gets a point-mass tail 1/z,
    # which fixes every moment the parameters determine.
    A = J.levels
    g = RationalFn(())
    if len(J.gammas) == A and not J.terminated:
        g = _Z.reciprocal()
    for j in reversed(range(A)):
        coef = J.gammas[j] if j < len(J.gammas) else Fraction(0)
        g = (_Z - J.betas[j] - g * coef).reciprocal()
    return g


def moments_from_jacobi(J: JacobiParams, N: int) -> MomentSeq:
    """Expand the continued fraction at infinity.

    m_n is the weighted count of Motzkin paths of length n: an up step weighs
    1, a flat step at height j weighs beta_j and a down step to height j
    weighs gamma_j. Works over any exact field (rationals or Q[sqrt d]).
    """
    if N < 1:
        raise InvalidInputError("order must be >= 1")
    limit = J.determined_order
    if limit is not None and N > limit:
        raise OrderLimitError(f"these Jacobi parameters only determine m_1..m_{limit}")
    betas, gammas = list(J.betas), list(J.gammas)
    if len(gammas) == len(betas) and not J.terminated:
        betas.append(Fraction(0))  # point-mass tail, see _cf_rational
    S = len(betas)
    w = [Fraction(1)] + [Fraction(0)] * (S - 1)
    out = []
    for _ in range(N):
        nxt = []
        for j in range(S):
            v = betas[j] * w[j]
            if j > 0:
                v = v + w[j - 1]
            if j + 1 < S:
                v = v + gammas[j] * w[j + 1]
            nxt.append(v)
        w = nxt
        out.append(w[0])
    return MomentSeq(out)


def finite_support_rank(J: JacobiParams) -> int | None:
    return J.levels if J.terminated else None


def cauchy_of_jacobi(J: JacobiParams) -> RationalFn:
    """Exact Cauchy transform of a terminating parameter list."""
    if not J.terminated:
        raise InvalidInputError("Jacobi parameters do not terminate")
    return _cf_rational(J)


def atomic_from_terminating_jacobi(J: JacobiParams) -> AtomicMeasure:
    return measure_from_rational_G(cauchy_of_jacobi(J))


def cauchy_cf_eval(J: JacobiParams, z: complex, tail: complex | None = None) -> complex:
    """Evaluate 1/(z - b_0 - g_0/(z - b_1 - ... - g_n * tail)) bottom-up.

    ``tail`` stands for G_nu(z) at the deepest level and is multiplied by the
    last gamma; it is ignored when the last gamma is absent or zero.
    """
    z = complex(z)
    if z.imag < 1:
        raise DomainError(f"need Im z >= 1, got {z}")
    v = complex(tail) if tail is not None else 0j
    if cmath.isnan(v) or cmath.isinf(v):
        raise InvalidInputError("tail must be finite")
    for j in reversed(range(J.levels)):
        coef = float(J.gammas[j]) if j < len(J.gammas) else 0.0
        v = 1 / (z - float(J.betas[j]) - coef * v)
    return v
