"""End-to-end decision pipeline, reductions, and the duality identity."""
import math
from fractions import Fraction

import pytest

from blca.errors import BadSubgroup, EmptyDatum, NotUnitExponent
from blca.exact import ExactValue
from blca.groups import ElementaryGroup, HaarRecord
from blca.homs import BlockHom, ClosedSubgroup, Datum
from blca.structure import (FINITE, INFINITE, UNKNOWN, bl_constant,
                            dual_datum, duality_check, reduce_p_infinity,
                            reduce_p_one, reduce_transversal)

F = Fraction

T = ElementaryGroup(b=1)
T2 = ElementaryGroup(b=2)
R1 = ElementaryGroup(a=1)
R2 = ElementaryGroup(a=2)
Z1 = ElementaryGroup(c=1)
Z2g = ElementaryGroup(c=2)
K = ElementaryGroup(torsion=(2, 2))
C2 = ElementaryGroup(torsion=(2,))


def young_datum():
    return Datum(R2, [BlockHom(R2, R1, RR=[[1, 0]]),
                      BlockHom(R2, R1, RR=[[0, 1]]),
                      BlockHom(R2, R1, RR=[[1, 1]])], [F(3, 2)] * 3)


def test_holder_circle_exact_one():
    d = Datum(T, [BlockHom(T, T, TT=[[1]]), BlockHom(T, T, TT=[[1]])], [2, 2])
    rep = bl_constant(d)
    assert rep.kind == FINITE
    assert rep.exact is not None and rep.exact.as_fraction() == 1
    assert rep.certification == "exact"
    assert rep.is_finite()


def test_axes_of_z2_infinite_with_witness():
    d = Datum(Z2g, [BlockHom(Z2g, Z1, ZZ=[[1, 0]]),
                    BlockHom(Z2g, Z1, ZZ=[[0, 1]])], [2, 2])
    rep = bl_constant(d)
    assert rep.kind == INFINITE
    assert rep.certification == "certified"
    assert any(f.name == "free" and f.kind == INFINITE for f in rep.factors)
    assert rep.witnesses
    assert rep.total == math.inf


def test_line_times_klein_four():
    rk = ElementaryGroup(a=1, torsion=(2, 2))
    rt = ElementaryGroup(a=1, torsion=(2,))
    s1 = BlockHom(rk, rt, RR=[[1]], FF=[[1, 0]])
    s2 = BlockHom(rk, rt, RR=[[1]], FF=[[0, 1]])
    rep = bl_constant(Datum(rk, [s1, s2], [2, 2]))
    assert rep.kind == FINITE
    assert abs(rep.value - 2.0) < 1e-8
    fin = [f for f in rep.factors if f.name == "finite"][0]
    assert fin.exact is not None and fin.exact.as_fraction() == 2


def test_all_infinite_exponents():
    rep = bl_constant(Datum(T, [BlockHom(T, T, TT=[[1]])], [None]))
    assert rep.kind == FINITE and rep.exact.as_fraction() == 1
    assert not rep.factors
    rep = bl_constant(Datum(R1, [BlockHom(R1, R1, RR=[[1]])], [None]))
    assert rep.kind == INFINITE


def test_torus_young_near_one_infinite():
    homs = [BlockHom(T2, T, TT=[[1, 0]]), BlockHom(T2, T, TT=[[0, 1]]),
            BlockHom(T2, T, TT=[[1, 1]])]
    rep = bl_constant(Datum(T2, homs, [F(21, 20)] * 3))
    assert rep.kind == INFINITE
    assert any(f.name == "torus" and f.kind == INFINITE for f in rep.factors)
    rep2 = bl_constant(Datum(T2, homs, [2, 2, 2]))
    assert rep2.kind == FINITE and rep2.exact.as_fraction() == 1


def test_non_open_image_infinite():
    rep = bl_constant(Datum(Z1, [BlockHom(Z1, R1, ZR=[[1]])], [2]))
    assert rep.kind == INFINITE and rep.certification == "certified"


def test_klein_p_one_primal_and_reduced():
    d = Datum(K, [BlockHom(K, C2, FF=[[1, 0]]), BlockHom(K, C2, FF=[[0, 1]])],
              [1, F(3, 2)])
    want = float(ExactValue.of(2) ** F(1, 3))
    rep = bl_constant(d)
    assert rep.exact is not None and abs(rep.value - want) < 1e-12
    red = reduce_p_one(d, 0)
    assert abs(bl_constant(red).value - want) < 1e-12


def test_weighted_reduction_carries_kernel_mass():
    kw = K.with_haar(HaarRecord(f_point=F(3)))
    ta = C2.with_haar(HaarRecord(f_point=F(5)))
    tb = C2.with_haar(HaarRecord(f_point=F(7)))
    d = Datum(kw, [BlockHom(kw, ta, FF=[[1, 0]]),
                   BlockHom(kw, tb, FF=[[0, 1]])], [1, 2])
    want = 6.0 / (5.0 * math.sqrt(14.0))
    assert abs(bl_constant(d).value - want) < 1e-12
    red = reduce_p_one(d, 0)
    assert red.domain.torsion == (2,)
    assert red.domain.haar.f_point == F(3, 5)
    assert abs(bl_constant(red).value - want) < 1e-12


def test_vector_p_one_cascade():
    d = Datum(R2, [BlockHom(R2, R1, RR=[[1, 0]]),
                   BlockHom(R2, R1, RR=[[0, 1]])], [1, 1])
    rep = bl_constant(d)
    assert rep.kind == FINITE and rep.exact.as_fraction() == 1
    mid = reduce_p_one(d, 0)
    assert mid.J == 1 and mid.exponents == (F(1),)
    with pytest.raises(EmptyDatum) as exc:
        reduce_p_one(mid, 0)
    assert exc.value.resolution == 1


def test_reduce_p_one_guards():
    d = Datum(K, [BlockHom(K, C2, FF=[[1, 0]]),
                  BlockHom(K, C2, FF=[[0, 1]])], [2, 2])
    with pytest.raises(NotUnitExponent):
        reduce_p_one(d, 0)
    single = Datum(K, [BlockHom(K, C2, FF=[[1, 0]])], [1])
    with pytest.raises(EmptyDatum) as exc:
        reduce_p_one(single, 0)
    assert exc.value.resolution == 2


def test_transversal_noncompact_blows_up():
    d = Datum(R2, [BlockHom(R2, R1, RR=[[1, 0]]),
                   BlockHom(R2, R1, RR=[[0, 1]])], [2, 2])
    n = ClosedSubgroup(R2, [[F(0), F(1)]], [])
    assert reduce_transversal(d, 1, n) == math.inf
    with pytest.raises(BadSubgroup):
        reduce_transversal(d, 0, n)  # map 1 does not kill n
    triv = ClosedSubgroup(R2, [], [])
    assert reduce_transversal(d, 1, triv) is d


def test_transversal_compact_preserves_constant():
    d = Datum(T2, [BlockHom(T2, T, TT=[[1, 0]]),
                   BlockHom(T2, T, TT=[[0, 1]])], [2, 2])
    n = ClosedSubgroup(T2, [[F(1), F(0)]], [])
    out = reduce_transversal(d, 0, n)
    assert isinstance(out, Datum)
    assert out.domain.b == 1
    before, after = bl_constant(d), bl_constant(out)
    assert before.kind == after.kind == FINITE
    assert abs(before.value - after.value) < 1e-12


def test_reduce_p_infinity_drops_indices():
    d = Datum(T, [BlockHom(T, T, TT=[[1]]), BlockHom(T, T, TT=[[1]])],
              [2, None])
    d2 = reduce_p_infinity(d)
    assert d2.J == 1 and d2.exponents == (F(2),)
    assert bl_constant(d).exact.as_fraction() == 1


def test_dual_of_circle_holder():
    d = Datum(T, [BlockHom(T, T, TT=[[1]]), BlockHom(T, T, TT=[[1]])], [2, 2])
    dd = dual_datum(d)
    assert (dd.domain.a, dd.domain.b, dd.domain.c) == (0, 0, 1)
    assert dd.exponents == (F(2), F(2))
    vals = [h.ZZ[0][0] for h in dd.homs]
    assert sorted(abs(v) for v in vals) == [1, 1]
    assert vals[0] * vals[1] < 0
    assert abs(bl_constant(dd).value - 1.0) < 1e-12
    chk = duality_check(d)
    assert chk.passed is True
    assert abs(chk.ratio - 1.0) < 1e-9


def test_young_duality():
    rep = bl_constant(young_datum())
    want = math.sqrt(3.0) / 2.0
    assert rep.kind == FINITE and abs(rep.value - want) < 1e-6
    chk = duality_check(young_datum(), tol=1e-4)
    assert chk.passed is True
    assert abs(chk.scale - want) < 1e-12
    assert abs(chk.dual.value - 1.0) < 1e-6


def test_duality_both_infinite():
    d = Datum(Z2g, [BlockHom(Z2g, Z1, ZZ=[[1, 0]]),
                    BlockHom(Z2g, Z1, ZZ=[[0, 1]])], [2, 2])
    chk = duality_check(d)
    assert chk.passed is True and chk.ratio is None


def test_duality_finite_exact():
    d = Datum(K, [BlockHom(K, C2, FF=[[1, 0]]), BlockHom(K, C2, FF=[[0, 1]])],
              [2, 2])
    chk = duality_check(d)
    assert chk.passed is True
    assert chk.ratio == 1.0
    assert chk.scale == 1.0
    assert chk.primal.value == 2.0 and chk.dual.value == 2.0


def test_mixed_product_of_sectors():
    m = ElementaryGroup(a=1, b=1)
    hm = BlockHom(m, m, RR=[[1]], TT=[[1]])
    rep = bl_constant(Datum(m, [hm, hm], [2, 2]))
    assert rep.kind == FINITE and abs(rep.value - 1.0) < 1e-7


def test_sector_mixing_dual_preserves_constant():
    tk = ElementaryGroup(b=1, torsion=(2,))
    mix1 = BlockHom(tk, T, TT=[[1]], FT=[[F(1, 2)]])
    mix2 = BlockHom(tk, T, TT=[[2]], FT=[[F(1, 2)]])
    d = Datum(tk, [mix1, mix2], [2, 2])
    rep = bl_constant(d)
    assert rep.kind == FINITE and rep.exact.as_fraction() == 2
    assert bl_constant(dual_datum(d)).kind == FINITE
    chk = duality_check(d)
    assert chk.passed is True


def test_report_shape():
    rep = bl_constant(young_datum())
    doc = rep.to_dict()
    assert doc["kind"] == FINITE
    assert isinstance(doc["factors"], list)
    assert {"FINITE", "INFINITE", "UNKNOWN"} == {FINITE, INFINITE, UNKNOWN}
