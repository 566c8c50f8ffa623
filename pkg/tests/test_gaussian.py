"""Gaussian ascent for vector-sector data."""
import math
from fractions import Fraction

from blca.gaussian import (BUDGET, CONVERGED, DIVERGED, GaussianPoint,
                           bcct_finiteness, gaussian_bl_constant,
                           gaussian_objective)
from blca.groups import ElementaryGroup, HaarRecord
from blca.homs import BlockHom, Datum

F = Fraction

R1 = ElementaryGroup(a=1)
R2 = ElementaryGroup(a=2)


def young_datum():
    maps = [BlockHom(R2, R1, RR=[[1, 0]]),
            BlockHom(R2, R1, RR=[[0, 1]]),
            BlockHom(R2, R1, RR=[[1, 1]])]
    return Datum(R2, maps, [F(3, 2)] * 3)


def test_holder_line_converges_to_one():
    d = Datum(R1, [BlockHom(R1, R1, RR=[[1]])] * 3, [F(3)] * 3)
    res = gaussian_bl_constant(d)
    assert res.status == CONVERGED
    assert abs(res.value - 1.0) < 1e-8


def test_young_sharp_constant():
    res = gaussian_bl_constant(young_datum())
    assert res.status == CONVERGED
    assert abs(res.value - math.sqrt(3) / 2) < 1e-8
    v = bcct_finiteness(young_datum())
    assert v.finite and v.homogeneous


def test_objective_at_identity():
    # covariance sum for unit choices has determinant 12/9
    obj = gaussian_objective(young_datum(), GaussianPoint.identity([1, 1, 1]))
    assert abs(obj - 1 / math.sqrt(12 / 9)) < 1e-12


def test_axes_p2_diverges():
    axes = [BlockHom(R2, R1, RR=[[1, 0]]), BlockHom(R2, R1, RR=[[0, 1]])]
    d = Datum(R2, axes, [F(2), F(2)])
    res = gaussian_bl_constant(d)
    assert res.status == DIVERGED
    assert res.value == math.inf
    v = bcct_finiteness(d)
    assert not v.finite and v.certified and not v.homogeneous


def test_axes_p1_gives_one():
    axes = [BlockHom(R2, R1, RR=[[1, 0]]), BlockHom(R2, R1, RR=[[0, 1]])]
    d = Datum(R2, axes, [F(1), F(1)])
    res = gaussian_bl_constant(d)
    assert res.status == CONVERGED
    assert abs(res.value - 1.0) < 1e-8
    assert bcct_finiteness(d).finite


def test_trivial_domain():
    R0 = ElementaryGroup()
    res = gaussian_bl_constant(Datum(R0, [BlockHom(R0, R0)], [F(2)]))
    assert res.status == CONVERGED and res.value == 1.0


def test_measure_scaling_covariance():
    Rs = ElementaryGroup(a=2, haar=HaarRecord(vector_scale=F(5)))
    Rt = ElementaryGroup(a=1, haar=HaarRecord(vector_scale=F(7)))
    maps = [BlockHom(Rs, Rt, RR=[[1, 0]]),
            BlockHom(Rs, Rt, RR=[[0, 1]]),
            BlockHom(Rs, Rt, RR=[[1, 1]])]
    res = gaussian_bl_constant(Datum(Rs, maps, [F(3, 2)] * 3))
    expected = (math.sqrt(3) / 2) * 5.0 * 7.0 ** (-2.0)
    assert abs(res.value - expected) < 1e-8


def test_infinite_exponent_drops_out():
    d = Datum(R1, [BlockHom(R1, R1, RR=[[1]]), BlockHom(R1, R1, RR=[[1]])],
              [F(1), None])
    res = gaussian_bl_constant(d)
    assert res.status == CONVERGED
    assert abs(res.value - 1.0) < 1e-8


def test_budget_status_exists():
    # a starved budget must be reported honestly, not as convergence
    res = gaussian_bl_constant(young_datum(), budget=2)
    assert res.status in (BUDGET, CONVERGED)
    assert res.sweeps <= 2 or res.status == CONVERGED
