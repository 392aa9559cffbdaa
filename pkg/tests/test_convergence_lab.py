import csv
import io
import json
from fractions import Fraction

import pytest

from ncprob.analysis import LawDescriptor
from ncprob.cumulant_calculus import compound_poisson_cumulants, cumulants_from_moments, moments_from_cumulants
from ncprob.errors import InvalidInputError
from ncprob.convergence_lab import (
    ExperimentReport,
    ReportRow,
    clt_family,
    clt_sequence,
    compound_poisson_report,
    constant_family,
    flavor_gaussian,
    fourth_moment_report,
    gaussian_levy_family,
    perturbed_family,
    poisson_criterion_report,
    poisson_normal_report,
    poisson_to_normal,
    rate_family,
    tetilla_report,
    tetilla_target,
)
from ncprob.measures import AtomicMeasure, bernoulli
from ncprob.sequences import CumulantSeq, Flavor, MomentSeq
from ncprob.surd import QuadraticSurd

F = Fraction
DECADES = [1, 10, 100]
LIMIT_M4 = {"classical": 3, "free": 2, "boolean": 1, "monotone": F(3, 2)}
THREE_POINT = AtomicMeasure((-2, 0, 2), (F(1, 8), F(3, 4), F(1, 8)))


def assert_converging(distances):
    assert all(b <= a for a, b in zip(distances[1:], distances[2:]))
    assert distances[-1] < distances[0] / 10


@pytest.mark.parametrize("flavor", list(LIMIT_M4))
def test_clt_fourth_moment_exact(flavor):
    base = CumulantSeq(flavor, (0, 1, F(2, 3), F(5, 7), 0, 0))
    for n in (1, 2, 3, 7, 49):
        c = clt_sequence(flavor, base, n)
        assert c.values[1] == 1
        assert c.values[3] == F(5, 7) / n
        m4 = moments_from_cumulants(c).values[3]
        limit = moments_from_cumulants(CumulantSeq(flavor, (0, 1, 0, 0))).values[3]
        assert limit == LIMIT_M4[flavor]
        assert m4 - limit == F(5, 7) / n


def test_clt_odd_cumulants_are_surds():
    c = clt_sequence("free", CumulantSeq("free", (0, 1, 1)), 3)
    assert c.values[2] == QuadraticSurd.sqrt(3) / 3
    assert clt_sequence("free", CumulantSeq("free", (0, 1, 1)), 4).values[2] == F(1, 2)


def test_clt_examples():
    r4 = F(3)
    base = CumulantSeq("boolean", (0, 1, 0, r4))
    for n in (1, 5, 20):
        assert moments_from_cumulants(clt_sequence("boolean", base, n)).values[3] == 1 + r4 / n
    free = CumulantSeq("free", (0, 1, 0, 1))
    assert moments_from_cumulants(clt_sequence("free", free, 10)).values[3] == 2 + F(1, 10)
    assert clt_sequence("monotone", base, 1) == CumulantSeq("monotone", base.values)
    with pytest.raises(InvalidInputError):
        clt_sequence("free", CumulantSeq("free", (0, 2, 0, 0)), 3)


def test_poisson_to_normal_values():
    assert poisson_to_normal(1).moment(4) == 4
    assert poisson_to_normal(4).moment(4) == F(13, 4)
    assert poisson_to_normal(100).moment(4) == F(301, 100)
    assert poisson_to_normal(2).moment(4) == 3 + F(1, 2)
    assert isinstance(poisson_to_normal(2).moment(3), QuadraticSurd)


def test_poisson_normal_report_converges():
    r = poisson_normal_report([1, 4, 16, 64, 256])
    assert [row.fourth_moment for row in r.rows] == [3 + F(1, n) for n in (1, 4, 16, 64, 256)]
    ds = r.distances
    assert all(b < a for a, b in zip(ds, ds[1:]))
    assert ds[-1] < ds[0] / 10


@pytest.mark.parametrize("flavor", list(LIMIT_M4))
def test_gaussian_levy_family(flavor):
    r = fourth_moment_report(gaussian_levy_family(flavor), flavor, flavor_gaussian(flavor), DECADES)
    assert [row.fourth_moment for row in r.rows] == [LIMIT_M4[flavor] + F(1, n) for n in DECADES]
    assert_converging(r.distances)


@pytest.mark.parametrize("flavor", list(LIMIT_M4))
def test_clt_family_converges(flavor):
    base = cumulants_from_moments(THREE_POINT.moments(8), flavor)
    r = fourth_moment_report(clt_family(flavor, base), flavor, flavor_gaussian(flavor), DECADES)
    assert r.rows[-1].fourth_moment - LIMIT_M4[flavor] == base.values[3] / 100
    assert_converging(r.distances)


def test_boolean_clt_uses_atomic_route():
    base = cumulants_from_moments(THREE_POINT.moments(8), "boolean")
    r = fourth_moment_report(clt_family("boolean", base), "boolean", LawDescriptor.bernoulli_sym(), DECADES)
    assert r.metadata["distance_route"] == ["atomic"]
    assert r.rows[-1].fourth_moment == 1 + base.values[3] / 100


def test_constant_family_at_limit():
    for flavor in LIMIT_M4:
        c = CumulantSeq(flavor, (0, 1) + (0,) * 6)
        r = fourth_moment_report(constant_family(c), flavor, flavor_gaussian(flavor), [1, 5], L=5, M=21)
        assert r.distances == [0.0, 0.0]


def test_normalization_enforced():
    with pytest.raises(InvalidInputError):
        fourth_moment_report(lambda n: CumulantSeq("free", (1, 1, 0, 0)), "free", LawDescriptor.semicircle(), [1])


def test_poisson_criterion():
    r = poisson_criterion_report(rate_family("boolean"), "boolean", DECADES)
    assert r.metadata["target_moments"][:4] == ["1", "2", "4", "8"]
    assert_converging(r.distances)
    fr = poisson_criterion_report(rate_family("free"), "free", DECADES)
    assert_converging(fr.distances)
    assert fr.metadata["target_moments"][:4] == ["1", "2", "5", "14"]
    m = [row.moments.values[:4] for row in fr.rows]
    gaps = [max(abs(a - b) for a, b in zip(v, (1, 2, 5, 14))) for v in m]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    const = poisson_criterion_report(constant_family(CumulantSeq("boolean", (1,) * 8)), "boolean", [1, 2])
    assert const.distances == [0.0, 0.0]


def test_compound_poisson_one_atom():
    nu = AtomicMeasure.dirac(1)
    target = compound_poisson_cumulants(1, nu, "boolean", 4)
    r = compound_poisson_report(perturbed_family(target, CumulantSeq("boolean", (0, 1, 0, 0))), "boolean", 1, nu, DECADES)
    assert r.metadata["k"] == 1 and r.metadata["moments_used"] == 4
    assert r.metadata["target_jacobi"] == {"beta": ["1", "1"], "gamma": ["1", "0"]}
    g1 = [row.jacobi.gammas[1] for row in r.rows]
    assert all(b < a for a, b in zip(g1, g1[1:])) and g1[-1] < F(1, 50)
    assert_converging(r.distances)
    same = compound_poisson_report(constant_family(target), "boolean", 1, nu, [1, 3])
    assert same.distances == [0.0, 0.0]
    assert same.rows[0].moments == same.rows[1].moments and same.rows[0].jacobi == same.rows[1].jacobi


def test_tetilla():
    assert tetilla_target().values == (0, 2, 0, 2, 0, 2)
    m = moments_from_cumulants(tetilla_target()).values
    assert m[1] == 2 and m[3] == 10
    r = tetilla_report([1, 10, 100])
    assert r.metadata["moments_used"] == 6
    assert float(r.metadata["density_max_abs_error"]) < 1e-6
    assert_converging(r.distances)
    assert r.distances[-1] < 1e-2


def test_report_serialization():
    r = poisson_normal_report([1, 4])
    data = json.loads(r.to_json())
    assert data["rows"][1]["fourth_moment"] == "13/4"
    assert "engineering" in data["metadata"]["note"]
    rows = list(csv.reader(io.StringIO(r.to_csv())))
    assert rows[0] == ["n", "m_1", "m_2", "m_3", "m_4", "m_5", "m_6", "fourth_moment", "distance"]
    assert rows[2][0] == "4" and rows[2][7] == "13/4"
    assert r.to_json() == poisson_normal_report([4, 1]).to_json()


def test_report_invariants():
    row = ReportRow(1, MomentSeq((0, 1, 0, 2)), 2)
    with pytest.raises(InvalidInputError):
        ExperimentReport("x", [ReportRow(2, row.moments, 2), row])
    with pytest.raises(InvalidInputError):
        ExperimentReport("x", [row, ReportRow(2, MomentSeq((0, 1)), 0)])
