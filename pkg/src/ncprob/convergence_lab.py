"""Executable limit theorems: CLT families, Poisson to normal, Poisson and
compound-Poisson criteria, and the tetilla law.

Each report walks an explicit one-parameter family of infinitely divisible
laws (cumulant perturbations decaying like 1/n), records the fourth moment
exactly and a sampled weak distance to the limit law. Both laws in a distance
are always evaluated through the same representation: exact atomic measures
when the member's Jacobi parameters terminate (Boolean families), otherwise
truncated continued fractions of equal depth.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .analysis import (
    DEFAULT_GRID_L,
    DEFAULT_GRID_M,
    LawDescriptor,
    law_moments,
    quadrature_moments,
    tetilla_law,
    weak_distance,
)
from .cumulant_calculus import (
    bp_map,
    compound_poisson_cumulants,
    dilate_cumulants,
    moments_from_cumulants,
    power_cumulants,
)
from .errors import InvalidInputError
from .measures import AtomicMeasure, bernoulli
from .sequences import CumulantSeq, Flavor, MomentSeq
from .spectral import JacobiParams, atomic_from_terminating_jacobi, jacobi_from_moments
from .surd import QuadraticSurd

RATE_NOTE = (
    "monotone decrease and decade drop of the distance are engineering checks; "
    "no convergence rate is claimed"
)

Family = Callable[[int], CumulantSeq]


@dataclass(frozen=True)
class ReportRow:
    n: int
    moments: MomentSeq
    fourth_moment: object
    distance: float | None = None
    jacobi: JacobiParams | None = None


@dataclass
class ExperimentReport:
    label: str
    rows: list[ReportRow]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        ns = [r.n for r in self.rows]
        if ns != sorted(ns):
            raise InvalidInputError("report rows must be ordered by n")
        if len({r.moments.N for r in self.rows}) > 1:
            raise InvalidInputError("rows disagree on moment order")

    @property
    def distances(self) -> list[float]:
        return [r.distance for r in self.rows]

    def to_json_dict(self, precision: int = 12) -> dict:
        rows = []
        for r in self.rows:
            row = {
                "n": r.n,
                "moments": [str(v) for v in r.moments.values],
                "fourth_moment": str(r.fourth_moment),
                "distance": _fmt(r.distance, precision),
            }
            if r.jacobi is not None:
                row.update(r.jacobi.to_json_dict())
            rows.append(row)
        return {"label": self.label, "metadata": self.metadata, "rows": rows}

    def to_json(self, precision: int = 12) -> str:
        return json.dumps(self.to_json_dict(precision), indent=2, sort_keys=True)

    def to_csv(self, precision: int = 12) -> str:
        N = self.rows[0].moments.N if self.rows else 0
        nb = max((r.jacobi.levels for r in self.rows if r.jacobi), default=0)
        ng = max((len(r.jacobi.gammas) for r in self.rows if r.jacobi), default=0)
        header = (
            ["n"] + [f"m_{i}" for i in range(1, N + 1)] + ["fourth_moment", "distance"]
            + [f"beta_{i}" for i in range(nb)] + [f"gamma_{i}" for i in range(ng)]
        )
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in self.rows:
            betas = [str(b) for b in r.jacobi.betas] if r.jacobi else []
            gammas = [str(g) for g in r.jacobi.gammas] if r.jacobi else []
            w.writerow(
                [r.n] + [str(v) for v in r.moments.values]
                + [str(r.fourth_moment), _fmt(r.distance, precision)]
                + betas + [""] * (nb - len(betas)) + gammas + [""] * (ng - len(gammas))
            )
        return buf.getvalue()


def _fmt(x: float | None, precision: int) -> str:
    return "" if x is None else format(x, f".{precision}g")


def inv_sqrt(n: int):
    """1/sqrt(n) exactly (rational when n is a perfect square)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    return QuadraticSurd.make(0, Fraction(1, n), n)


def clt_sequence(flavor, base: CumulantSeq, n: int) -> CumulantSeq:
    """Cumulants of (X_1 + ... + X_n)/sqrt(n) for independent copies of X in the given flavor."""
    base = bp_map(base, flavor)
    if base.N < 2 or base.values[0] != 0 or base.values[1] != 1:
        raise InvalidInputError("base must have value_1 = 0 and value_2 = 1")
    return dilate_cumulants(power_cumulants(base, n), inv_sqrt(n))


def clt_family(flavor, base: CumulantSeq) -> Family:
    return lambda n: clt_sequence(flavor, base, n)


def poisson_to_normal(n: int, order: int = 6) -> MomentSeq:
    """Moments of (X_n - n)/sqrt(n) for X_n ~ Poisson(n)."""
    c = CumulantSeq(Flavor.CLASSICAL, [0] + [n] * (order - 1))
    return moments_from_cumulants(dilate_cumulants(c, inv_sqrt(n)))


def gaussian_levy_family(flavor, order: int = 8) -> Family:
    """Laws with Levy measure (1 - 1/n) delta_0 + (delta_{-1} + delta_1)/(4n).

    Cumulants (0, 1, 0, 1/n, 0, 1/n, ...): mean 0, variance 1, converging to
    the flavor's Gaussian.
    """
    flavor = Flavor.parse(flavor)

    def member(n):
        return CumulantSeq(
            flavor,
            [Fraction(0), Fraction(1)] + [Fraction(1, n) if k % 2 == 0 else Fraction(0) for k in range(3, order + 1)],
        )

    return member


def perturbed_family(target: CumulantSeq, perturbation: CumulantSeq) -> Family:
    """n -> target + perturbation / n (cumulantwise)."""
    if target.N != perturbation.N:
        raise InvalidInputError("target and perturbation orders differ")
    perturbation = bp_map(perturbation, target.flavor)
    return lambda n: CumulantSeq(
        target.flavor, [a + b / n for a, b in zip(target.values, perturbation.values)]
    )


def constant_family(c: CumulantSeq) -> Family:
    return lambda n: c


def flavor_gaussian(flavor) -> LawDescriptor:
    return {
        Flavor.CLASSICAL: LawDescriptor.normal(),
        Flavor.FREE: LawDescriptor.semicircle(),
        Flavor.BOOLEAN: LawDescriptor.bernoulli_sym(),
        Flavor.MONOTONE: LawDescriptor.arcsine(),
    }[Flavor.parse(flavor)]


def _is_rational(m: MomentSeq) -> bool:
    return not any(isinstance(v, QuadraticSurd) for v in m.values)


def _atomic_from_moments(m: MomentSeq) -> AtomicMeasure | None:
    if not _is_rational(m):
        return None
    J = jacobi_from_moments(m)
    return atomic_from_terminating_jacobi(J) if J.terminated else None


def _target_moments(target, order: int) -> MomentSeq:
    if isinstance(target, CumulantSeq):
        return moments_from_cumulants(target, order)
    return law_moments(target, order)


def _distance(member: MomentSeq, flavor: Flavor, target, target_atomic: LawDescriptor | None,
              order: int, L: float, M: int, member_law: LawDescriptor | None):
    if member_law is not None:
        return weak_distance(member_law, target, L, M), "explicit"
    if flavor is Flavor.BOOLEAN and target_atomic is not None:
        mu = _atomic_from_moments(member)
        if mu is not None:
            return weak_distance(LawDescriptor.atomic(mu), target_atomic, L, M), "atomic"
    tm = _target_moments(target, order)
    d = weak_distance(
        LawDescriptor.moments_only(member.truncate(order)),
        LawDescriptor.moments_only(tm),
        L,
        M,
    )
    return d, f"truncated-jacobi(order {order})"


def _target_atomic(target, flavor: Flavor, order: int) -> LawDescriptor | None:
    # atomic form of the target, used only when the member is atomic as well
    if isinstance(target, LawDescriptor):
        if target.kind == "bernoulli_sym":
            return LawDescriptor.atomic(bernoulli(), label=target.label)
        return target if target.kind == "atomic" else None
    if flavor is not Flavor.BOOLEAN:
        return None
    mu = _atomic_from_moments(moments_from_cumulants(target, order))
    return LawDescriptor.atomic(mu) if mu is not None else None


def _report(label, family: Family, flavor, target, n_list: Sequence[int], order: int,
            L: float, M: int, normalized: bool, jacobi_order: int | None = None,
            law_of: Callable[[int], LawDescriptor] | None = None,
            metadata: dict | None = None) -> ExperimentReport:
    flavor = Flavor.parse(flavor)
    if order < 4:
        raise InvalidInputError("reports need at least four moments")
    target_atomic = None if law_of is not None else _target_atomic(target, flavor, order)
    rows, routes = [], set()
    for n in sorted(n_list):
        c = bp_map(family(n), flavor)
        if c.N < order:
            raise InvalidInputError(f"family member n={n} has order {c.N} < {order}")
        if normalized and (c.values[0] != 0 or c.values[1] != 1):
            raise InvalidInputError(f"family member n={n} is not mean 0, variance 1")
        m = moments_from_cumulants(c, order)
        jac = None
        if jacobi_order is not None:
            boolean_image = moments_from_cumulants(bp_map(c, Flavor.BOOLEAN), jacobi_order)
            jac = jacobi_from_moments(boolean_image)
        member_law = law_of(n) if law_of is not None else None
        d, route = _distance(m, flavor, target, target_atomic, order, L, M, member_law)
        routes.add(route)
        rows.append(ReportRow(n, m, m.moment(4), d, jac))
    meta = {
        "flavor": flavor.value,
        "order": order,
        "grid": {"L": L, "M": M},
        "distance_route": sorted(routes),
        "note": RATE_NOTE,
    }
    meta.update(metadata or {})
    return ExperimentReport(label, rows, meta)


def fourth_moment_report(family: Family, flavor, limit_law: LawDescriptor, n_list,
                         order: int = 8, L: float = DEFAULT_GRID_L, M: int = DEFAULT_GRID_M,
                         law_of=None, label: str = "fourth-moment") -> ExperimentReport:
    return _report(label, family, flavor, limit_law, n_list, order, L, M, True,
                   law_of=law_of, metadata={"limit_law": limit_law.label})


def poisson_lattice_law(n: int) -> LawDescriptor:
    """(X - n)/sqrt(n) for X ~ Poisson(n), truncated where the tail is below 1e-17."""
    kmax = int(n + 40 * math.sqrt(n) + 60)
    logw = [k * math.log(n) - n - math.lgamma(k + 1) for k in range(kmax + 1)]
    weights = [math.exp(v) for v in logw]
    total = math.fsum(weights)
    s = math.sqrt(n)
    return LawDescriptor.discrete(
        [(k - n) / s for k in range(kmax + 1)],
        [w / total for w in weights],
        label=f"poisson({n}) normalized",
    )


def poisson_normal_report(n_list, order: int = 6, L: float = DEFAULT_GRID_L,
                          M: int = DEFAULT_GRID_M) -> ExperimentReport:
    def family(n):
        return dilate_cumulants(CumulantSeq(Flavor.CLASSICAL, [0] + [n] * (order - 1)), inv_sqrt(n))

    return fourth_moment_report(
        family, Flavor.CLASSICAL, LawDescriptor.normal(), n_list, order, L, M,
        law_of=poisson_lattice_law, label="poisson-to-normal",
    )


def flavor_poisson_cumulants(flavor, order: int) -> CumulantSeq:
    return CumulantSeq(flavor, [1] * order)


def poisson_criterion_report(family: Family, flavor, n_list, order: int = 8,
                             L: float = DEFAULT_GRID_L, M: int = DEFAULT_GRID_M) -> ExperimentReport:
    """Members against the flavor's Poisson law (all cumulants equal to 1)."""
    target = flavor_poisson_cumulants(flavor, order)
    return _report("poisson-criterion", family, flavor, target, n_list, order, L, M, False,
                   metadata={"target_moments": [str(v) for v in moments_from_cumulants(target).values]})


def rate_family(flavor, order: int = 8) -> Family:
    """Poisson laws of rate 1 + 1/n: every cumulant equals 1 + 1/n."""
    return lambda n: CumulantSeq(flavor, [1 + Fraction(1, n)] * order)


def compound_poisson_report(family: Family, flavor, lam, nu: AtomicMeasure, n_list,
                            order: int | None = None, L: float = DEFAULT_GRID_L,
                            M: int = DEFAULT_GRID_M, label: str = "compound-poisson") -> ExperimentReport:
    """Members against pi(lam, nu); rows carry the Jacobi parameters (levels 0..k)
    of each member's Boolean preimage, k = number of jumps of nu away from 0."""
    k = sum(1 for b in nu.atoms if b != 0)
    needed = 2 * k + 2
    order = max(needed, 4) if order is None else order
    if order < needed:
        raise InvalidInputError(f"need at least {needed} moments for a {k}-atomic jump law")
    target = compound_poisson_cumulants(lam, nu, flavor, order)
    boolean_target = moments_from_cumulants(bp_map(target, Flavor.BOOLEAN), needed)
    meta = {
        "k": k,
        "moments_used": needed,
        "rate": str(lam),
        "jumps": nu.to_json_dict(),
        "target_moments": [str(v) for v in moments_from_cumulants(target).values],
        "target_jacobi": jacobi_from_moments(boolean_target).to_json_dict(),
    }
    return _report(label, family, flavor, target, n_list, order, L, M, False,
                   jacobi_order=needed, metadata=meta)


def tetilla_target(order: int = 6) -> CumulantSeq:
    """Free compound Poisson with rate 2 and symmetric Bernoulli jumps."""
    return compound_poisson_cumulants(2, bernoulli(), Flavor.FREE, order)


def tetilla_report(n_list, L: float = DEFAULT_GRID_L, M: int = DEFAULT_GRID_M) -> ExperimentReport:
    target = tetilla_target(6)
    report = compound_poisson_report(
        perturbed_family(target, target), Flavor.FREE, 2, bernoulli(), n_list,
        L=L, M=M, label="tetilla",
    )
    exact_m = moments_from_cumulants(target).values
    quad_m = quadrature_moments(tetilla_law(), 6)
    report.metadata["density_moments"] = [format(v, ".12g") for v in quad_m]
    report.metadata["density_max_abs_error"] = format(
        max(abs(float(a) - b) for a, b in zip(exact_m, quad_m)), ".3g"
    )
    return report
