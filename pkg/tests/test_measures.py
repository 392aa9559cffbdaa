import json
import math
from fractions import Fraction

import pytest

from conftest import random_atomic
from ncprob.cumulant_calculus import (
    convolve_cumulants,
    cumulants_from_moments,
    levy_pair_to_cumulants,
    moments_from_cumulants,
    power_cumulants,
)
from ncprob.errors import InvalidInputError, NotAMeasureError
from ncprob.measures import (
    AtomicMeasure,
    FiniteMeasure,
    LevyPair,
    bernoulli,
    boolean_convolve,
    boolean_levy_pair,
    boolean_measure_from_levy_pair,
    cauchy_of_atomic,
    classical_convolve,
    measure_from_rational_G,
    moments_of_rational_G,
    monotone_convolve,
)
from ncprob.rational import RationalFn, poly

F = Fraction
half = F(1, 2)
bern01 = AtomicMeasure((0, 1), (half, half))


def test_measure_invariants():
    with pytest.raises(InvalidInputError):
        AtomicMeasure((0, 1), (half, F(1, 3)))
    with pytest.raises(InvalidInputError):
        AtomicMeasure((1, 0), (half, half))
    with pytest.raises(InvalidInputError):
        AtomicMeasure((0, 1), (1, 0))
    assert AtomicMeasure.from_pairs([(1, half), (0, F(1, 4)), (1, F(1, 4))]) == AtomicMeasure((0, 1), (F(1, 4), F(3, 4)))


def test_cauchy_examples():
    assert cauchy_of_atomic(AtomicMeasure.dirac(0)) == RationalFn(poly([1]), poly([0, 1]))
    assert cauchy_of_atomic(bernoulli()) == RationalFn(poly([0, 1]), poly([-1, 0, 1]))
    assert cauchy_of_atomic(bern01) == RationalFn(poly([-half, 1]), poly([0, -1, 1]))


def test_measure_from_G():
    assert measure_from_rational_G(RationalFn(poly([1]), poly([0, 1]))) == AtomicMeasure.dirac(0)
    assert measure_from_rational_G(RationalFn(poly([0, 1]), poly([-1, 0, 1]))) == bernoulli()
    with pytest.raises(NotAMeasureError):
        measure_from_rational_G(RationalFn(poly([1]), poly([1, 0, 1])))
    with pytest.raises(NotAMeasureError, match="complex"):
        measure_from_rational_G(RationalFn(poly([0, 1]), poly([1, 0, 1])))
    with pytest.raises(NotAMeasureError):
        measure_from_rational_G(RationalFn(poly([-1, 1]), poly([0, 0, 1])))  # double pole
    with pytest.raises(NotAMeasureError):
        # residues 3/2 and -1/2
        measure_from_rational_G(RationalFn(poly([2, 1]), poly([-1, 0, 1])))


def test_cauchy_inverse_roundtrip(rng):
    for k in range(1, 6):
        mu = random_atomic(rng, k)
        assert measure_from_rational_G(cauchy_of_atomic(mu)) == mu


def test_moments_of_G(rng):
    assert moments_of_rational_G(RationalFn(poly([1]), poly([0, 1])), 4).values == (0,) * 4
    assert moments_of_rational_G(cauchy_of_atomic(bernoulli()), 6).values == (0, 1, 0, 1, 0, 1)
    assert moments_of_rational_G(cauchy_of_atomic(bern01), 5).values == (half,) * 5
    for _ in range(5):
        mu = random_atomic(rng, 4)
        direct = tuple(sum(w * b**n for b, w in zip(mu.atoms, mu.weights)) for n in range(1, 9))
        assert moments_of_rational_G(cauchy_of_atomic(mu), 8).values == direct
    with pytest.raises(InvalidInputError):
        moments_of_rational_G(RationalFn(poly([1, 1]), poly([0, 1])), 3)


def test_boolean_convolve_examples():
    mu = random_atomic(__import__("random").Random(3), 3)
    assert boolean_convolve(mu, AtomicMeasure.dirac(0)) == mu
    bb = boolean_convolve(bernoulli(), bernoulli())
    assert not bb.exact
    assert bb.raw_moments(4)[1:] == [0, 2, 0, 4]
    assert [float(a) for a in bb.atoms] == pytest.approx([-math.sqrt(2), math.sqrt(2)], abs=1e-15)
    assert [float(w) for w in bb.weights] == pytest.approx([0.5, 0.5], abs=1e-15)
    r = convolve_cumulants(cumulants_from_moments(bern01.moments(6), "boolean"),
                           cumulants_from_moments(AtomicMeasure.dirac(1).moments(6), "boolean"))
    assert boolean_convolve(bern01, AtomicMeasure.dirac(1)).raw_moments(6)[1:] == list(moments_from_cumulants(r).values)


def test_boolean_convolve_algebra(rng):
    for _ in range(4):
        a, b, c = (random_atomic(rng, rng.randint(1, 3)) for _ in range(3))
        ab, ba = boolean_convolve(a, b), boolean_convolve(b, a)
        assert ab.cauchy == ba.cauchy and ab.atoms == ba.atoms
        assert boolean_convolve(ab, c).cauchy == boolean_convolve(a, boolean_convolve(b, c)).cauchy


def test_boolean_cumulants_add(rng):
    for _ in range(4):
        a, b = random_atomic(rng, 3), random_atomic(rng, 2)
        lhs = cumulants_from_moments(MomentSeqOf(boolean_convolve(a, b), 8), "boolean")
        rhs = convolve_cumulants(cumulants_from_moments(a.moments(8), "boolean"),
                                 cumulants_from_moments(b.moments(8), "boolean"))
        assert lhs == rhs


def MomentSeqOf(mu, N):
    from ncprob.sequences import MomentSeq
    return MomentSeq(mu.raw_moments(N)[1:])


def test_monotone_convolve(rng):
    mu = random_atomic(rng, 3)
    assert monotone_convolve(mu, AtomicMeasure.dirac(0)) == mu
    assert monotone_convolve(AtomicMeasure.dirac(0), mu) == mu
    b, d1 = bernoulli(), AtomicMeasure.dirac(1)
    assert monotone_convolve(b, d1).cauchy != monotone_convolve(d1, b).cauchy
    a, c = random_atomic(rng, 2), random_atomic(rng, 2)
    assert monotone_convolve(monotone_convolve(a, mu), c).cauchy == monotone_convolve(a, monotone_convolve(mu, c)).cauchy


def test_monotone_power_matches_doubled_cumulants():
    b = bernoulli()
    h = cumulants_from_moments(b.moments(8), "monotone")
    bb = monotone_convolve(b, b)
    assert bb.raw_moments(8)[1:] == list(moments_from_cumulants(power_cumulants(h, 2)).values)


def test_first_moment_additive(rng):
    for _ in range(5):
        a, b = random_atomic(rng, 3), random_atomic(rng, 2)
        m = a.moments(1).values[0] + b.moments(1).values[0]
        for conv in (classical_convolve, boolean_convolve, monotone_convolve):
            assert conv(a, b).raw_moments(1)[1] == m


def test_classical_convolve(rng):
    mu = random_atomic(rng, 4)
    assert classical_convolve(mu, AtomicMeasure.dirac(0)) == mu
    assert classical_convolve(bernoulli(), bernoulli()) == AtomicMeasure((-2, 0, 2), (F(1, 4), half, F(1, 4)))


def test_boolean_levy_pair_examples():
    p = boolean_levy_pair(bernoulli())
    assert p.gamma == 0 and p.sigma == FiniteMeasure((0,), (1,))
    p = boolean_levy_pair(AtomicMeasure.dirac(F(3, 2)))
    assert p.gamma == F(3, 2) and len(p.sigma) == 0


def test_boolean_levy_pair_structure(rng):
    for k in range(1, 5):
        for _ in range(3):
            mu = random_atomic(rng, k)
            p = boolean_levy_pair(mu)
            assert len(p.sigma) == k - 1
            assert levy_pair_to_cumulants(p, 8, "boolean") == cumulants_from_moments(mu.moments(8), "boolean")
            assert boolean_measure_from_levy_pair(p).cauchy == mu.cauchy


def test_json_roundtrip():
    mu = AtomicMeasure((F(-1, 3), 2), (F(1, 4), F(3, 4)))
    data = json.loads(mu.to_json())
    assert data == {"atoms": ["-1/3", "2"], "weights": ["1/4", "3/4"]}
    assert AtomicMeasure.from_json_dict(data) == mu
    bb = boolean_convolve(bernoulli(), bernoulli())
    back = AtomicMeasure.from_json_dict(json.loads(bb.to_json()))
    assert back.cauchy == bb.cauchy
