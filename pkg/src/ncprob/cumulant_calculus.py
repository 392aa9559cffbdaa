"""Moment-cumulant formulas for the classical, free, Boolean and monotone flavors.

Every flavor writes m_n as a weighted sum over a partition family of products
f_pi = prod_{V in pi} f_|V|:

    classical  P(n)    weight 1
    free       NC(n)   weight 1
    boolean    I(n)    weight 1
    monotone   M(n)    weight 1/|pi|!  per (pi, order) pair

Since f_pi only depends on the multiset of block sizes, each family is
enumerated once per n and collapsed into a table {block sizes: total weight}.
For monotone the number of nesting-compatible orders of pi is
|pi|! / prod(subtree sizes), so pi contributes 1/prod(subtree sizes).
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import InvalidInputError, UnsupportedOperationError
from .measures import AtomicMeasure, FiniteMeasure, LevyPair
from .partitions import (
    _nc_blocks,
    check_size,
    iter_compositions,
    iter_rgs,
    Partition,
    subtree_sizes,
)
from .sequences import CumulantSeq, Flavor, MomentSeq, exact
from .surd import QuadraticSurd

__all__ = [
    "LevyPair",
    "block_weights",
    "bp_map",
    "compound_poisson_cumulants",
    "convolve_cumulants",
    "cumulants_from_moments",
    "dilate_cumulants",
    "levy_pair_from_compound_poisson",
    "levy_pair_to_cumulants",
    "moments_from_cumulants",
    "power_cumulants",
]


@lru_cache(maxsize=None)
def _block_weights(flavor: Flavor, n: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    table: Counter = Counter()
    if flavor is Flavor.CLASSICAL:
        for rgs in iter_rgs(n):
            sizes = Counter(rgs).values()
            table[tuple(sorted(sizes, reverse=True))] += 1
    elif flavor is Flavor.FREE:
        for blocks in _nc_blocks(1, n):
            table[tuple(sorted(map(len, blocks), reverse=True))] += 1
    elif flavor is Flavor.BOOLEAN:
        for sizes in iter_compositions(n):
            table[tuple(sorted(sizes, reverse=True))] += 1
    else:
        for blocks in _nc_blocks(1, n):
            p = Partition(n, tuple(blocks))
            table[tuple(sorted(p.block_sizes, reverse=True))] += Fraction(
                1, math.prod(subtree_sizes(p))
            )
    return tuple(sorted((k, Fraction(v)) for k, v in table.items()))


def block_weights(flavor, n: int) -> dict[tuple[int, ...], Fraction]:
    """Total formula weight of each block-size multiset (sizes sorted decreasingly)."""
    check_size(n)
    return dict(_block_weights(Flavor.parse(flavor), n))


def _partition_sum(values, table, skip_full: bool):
    total = Fraction(0)
    for sizes, w in table:
        if skip_full and len(sizes) == 1:
            continue
        term = w
        for s in sizes:
            term = term * values[s - 1]
            if term == 0:
                break
        total = total + term
    return total


def moments_from_cumulants(c: CumulantSeq, N: int | None = None) -> MomentSeq:
    N = c.N if N is None else N
    if N < 1 or N > c.N:
        raise InvalidInputError(f"need 1 <= N <= {c.N}, got {N}")
    check_size(N)
    out = []
    for n in range(1, N + 1):
        out.append(_partition_sum(c.values, _block_weights(c.flavor, n), False))
    return MomentSeq(out)


def cumulants_from_moments(m: MomentSeq, flavor) -> CumulantSeq:
    """Invert the moment-cumulant formula by peeling off the one-block term."""
    flavor = Flavor.parse(flavor)
    check_size(m.N)
    f = []
    for n in range(1, m.N + 1):
        f.append(m.values[n - 1] - _partition_sum(f + [0], _block_weights(flavor, n), True))
    return CumulantSeq(flavor, f)


def convolve_cumulants(x: CumulantSeq, y: CumulantSeq) -> CumulantSeq:
    if x.flavor is not y.flavor:
        raise InvalidInputError(f"cannot add {x.flavor.value} and {y.flavor.value} cumulants")
    if x.flavor is Flavor.MONOTONE:
        raise UnsupportedOperationError(
            "monotone convolution is not additive in monotone cumulants"
        )
    N = min(x.N, y.N)
    return CumulantSeq(x.flavor, [a + b for a, b in zip(x.values[:N], y.values[:N])])


def power_cumulants(x: CumulantSeq, t) -> CumulantSeq:
    """Cumulants of the convolution power x^{*t} (t >= 0)."""
    t = exact(t)
    if isinstance(t, QuadraticSurd) or t < 0:
        raise InvalidInputError(f"convolution power must be a nonnegative rational, got {t}")
    return CumulantSeq(x.flavor, [t * v for v in x.values])


def dilate_cumulants(x: CumulantSeq, s) -> CumulantSeq:
    """Cumulants of sX: the n-th value is multiplied by s**n."""
    s = exact(s)
    return CumulantSeq(x.flavor, [v * s**n for n, v in enumerate(x.values, start=1)])


def bp_map(x: CumulantSeq, target_flavor) -> CumulantSeq:
    """Bercovici-Pata image: the same numbers read as cumulants of another flavor."""
    return CumulantSeq(Flavor.parse(target_flavor), x.values)


def levy_pair_to_cumulants(p: LevyPair, N: int, flavor=Flavor.FREE) -> CumulantSeq:
    """Cumulants of the law with generating pair p; the formula is the same for every flavor.

    value_1 = gamma + int t sigma(dt);  value_n = int t^(n-2) (1 + t^2) sigma(dt).
    """
    if N < 1:
        raise InvalidInputError("order must be >= 1")
    m = p.sigma.raw_moments(N)
    values = [p.gamma + m[1]] + [m[n - 2] + m[n] for n in range(2, N + 1)]
    return CumulantSeq(flavor, values)


def compound_poisson_cumulants(lam, nu: AtomicMeasure, flavor, N: int) -> CumulantSeq:
    lam = exact(lam)
    if not isinstance(lam, Rational) or lam <= 0:
        raise InvalidInputError(f"rate must be a positive rational, got {lam}")
    return CumulantSeq(flavor, [lam * v for v in nu.moments(N).values])


def levy_pair_from_compound_poisson(lam, nu: AtomicMeasure) -> LevyPair:
    lam = exact(lam)
    if not isinstance(lam, Rational) or lam <= 0:
        raise InvalidInputError(f"rate must be a positive rational, got {lam}")
    if not nu.exact:
        raise InvalidInputError("jump distribution must have exact rational atoms")
    jumps = [(b, w) for b, w in zip(nu.atoms, nu.weights) if b != 0]
    gamma = sum((lam * w * b / (1 + b * b) for b, w in jumps), Fraction(0))
    sigma = FiniteMeasure.from_pairs((b, lam * w * b * b / (1 + b * b)) for b, w in jumps)
    return LevyPair(gamma, sigma)
