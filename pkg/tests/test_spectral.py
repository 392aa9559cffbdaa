from fractions import Fraction

import pytest

from conftest import random_atomic
from ncprob.analysis import cauchy_eval, LawDescriptor
from ncprob.cumulant_calculus import moments_from_cumulants
from ncprob.errors import DomainError, InvalidInputError, InvalidMomentSequenceError, OrderLimitError
from ncprob.measures import AtomicMeasure, bernoulli
from ncprob.sequences import CumulantSeq, MomentSeq
from ncprob.spectral import (
    JacobiParams,
    atomic_from_terminating_jacobi,
    cauchy_cf_eval,
    finite_support_rank,
    jacobi_from_moments,
    moments_from_jacobi,
)

F = Fraction


def test_bernoulli():
    J = jacobi_from_moments(MomentSeq((0, 1, 0, 1, 0, 1)))
    assert J == JacobiParams((0, 0), (1, 0))
    assert finite_support_rank(J) == 2


def test_semicircle_levels():
    # every parameter fixed by six moments: beta_0..beta_2, gamma_0..gamma_2
    J = jacobi_from_moments(MomentSeq((0, 1, 0, 2, 0, 5)))
    assert J.betas == (0, 0, 0)
    assert J.gammas[:2] == (1, 1)
    assert J.gammas == (1, 1, 1)
    assert finite_support_rank(J.truncate(3)) is None


def test_arcsine_levels():
    m = moments_from_cumulants(CumulantSeq("monotone", (0, 1, 0, 0, 0, 0)))
    J = jacobi_from_moments(m)
    assert J.betas == (0, 0, 0)
    assert J.gammas[:2] == (1, F(1, 2))
    assert moments_from_jacobi(J, 6) == m


def test_invalid_moments():
    with pytest.raises(InvalidMomentSequenceError):
        jacobi_from_moments(MomentSeq((0, -1)))
    with pytest.raises(InvalidMomentSequenceError):
        jacobi_from_moments(MomentSeq((0, 1, 0, 1, 0, 2)))  # Bernoulli until m_6


def test_moments_from_jacobi_examples():
    assert moments_from_jacobi(JacobiParams.point_mass(0), 2).values == (0, 0)
    assert moments_from_jacobi(JacobiParams((0, 0), (1, 0)), 9).values == (0, 1) * 4 + (0,)
    c = F(-2, 3)
    assert moments_from_jacobi(JacobiParams.point_mass(c), 5).values == tuple(c**n for n in range(1, 6))
    with pytest.raises(OrderLimitError):
        moments_from_jacobi(JacobiParams((0, 0), (1,)), 4)


@pytest.mark.parametrize("k", range(1, 6))
def test_roundtrip_random_atomic(k, rng):
    for _ in range(4):
        mu = random_atomic(rng, k)
        m = mu.moments(10)
        J = jacobi_from_moments(m)
        assert moments_from_jacobi(J, 10) == m
        assert finite_support_rank(J) == k
        assert atomic_from_terminating_jacobi(J) == mu


def test_atomic_from_jacobi():
    assert atomic_from_terminating_jacobi(JacobiParams.point_mass(3)) == AtomicMeasure.dirac(3)
    assert atomic_from_terminating_jacobi(JacobiParams((0, 0), (1, 0))) == bernoulli()
    assert atomic_from_terminating_jacobi(JacobiParams((F(1, 2), F(1, 2)), (F(1, 4), 0))) == AtomicMeasure(
        (0, 1), (F(1, 2), F(1, 2))
    )
    with pytest.raises(InvalidInputError):
        atomic_from_terminating_jacobi(JacobiParams((0, 0), (1,)))


def test_params_validation():
    with pytest.raises(InvalidInputError):
        JacobiParams((0,), (-1,))
    with pytest.raises(InvalidInputError):
        JacobiParams((0, 0, 0), (0, 1))
    J = JacobiParams((0, 1), (2, 0))
    assert JacobiParams.from_json_dict(J.to_json_dict()) == J
    assert J.to_json_dict() == {"beta": ["0", "1"], "gamma": ["2", "0"]}


def test_cf_eval():
    assert cauchy_cf_eval(JacobiParams.point_mass(0), 1j) == pytest.approx(-1j)
    assert cauchy_cf_eval(JacobiParams((0, 0), (1, 0)), 2j) == pytest.approx(2j / -5)
    with pytest.raises(DomainError):
        cauchy_cf_eval(JacobiParams.point_mass(0), 0.5j)


def test_truncation_converges_to_semicircle():
    target = cauchy_eval(LawDescriptor.semicircle(), 2j)
    errs = [abs(cauchy_cf_eval(JacobiParams((0,) * k, (1,) * k), 2j) - target) for k in (1, 2, 4, 8, 16)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-8


def test_cf_bounded(rng):
    grid = [complex(x / 4, 1) for x in range(-40, 41)]
    for _ in range(10):
        k = rng.randint(1, 5)
        J = JacobiParams(tuple(F(rng.randint(-9, 9), 3) for _ in range(k)), tuple(F(rng.randint(1, 9), 2) for _ in range(k)))
        tail = complex(rng.uniform(-1, 1), -rng.uniform(0, 1))
        assert all(abs(cauchy_cf_eval(J, z, tail)) <= 1 + 1e-12 for z in grid)


def test_perturbed_parameters_converge():
    limit = JacobiParams((0, 0), (1, 0))
    grid = [complex(x / 2, 1) for x in range(-20, 21)]
    exact = [cauchy_cf_eval(limit, z) for z in grid]

    def gap(n):
        J = JacobiParams((0, 0), (1, F(1, n)))
        return max(abs(cauchy_cf_eval(J, z, tail=-0.5j) - e) for z, e in zip(grid, exact))

    gaps = [gap(n) for n in (1, 10, 100, 1000)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-2
