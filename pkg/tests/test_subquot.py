"""Kernel quotients, corestrictions, and the four-factor splitting."""
from fractions import Fraction

import pytest

from blca.errors import Degenerate, NotProper
from blca.groups import ElementaryGroup, HaarRecord
from blca.homs import BlockHom, Datum, is_surjective, joint_kernel
from blca.subquot import (corestrict_open, decompose, discrete_image_lattice,
                          kernel_embedding, make_nondegenerate,
                          merge_finite_coordinates)

F = Fraction

R = ElementaryGroup(a=1)
R2 = ElementaryGroup(a=2)
T = ElementaryGroup(b=1)
Z = ElementaryGroup(c=1)
Z2 = ElementaryGroup(torsion=(2,))
Z4 = ElementaryGroup(torsion=(4,))
pt = ElementaryGroup()


def test_compact_kernel_quotiented():
    g = ElementaryGroup(a=1, b=1)
    sigma = BlockHom(g, R, RR=[[F(1)]])
    res = make_nondegenerate(Datum(g, [sigma], [F(2)]))
    nd = res.datum
    assert (nd.domain.a, nd.domain.b, nd.domain.c, nd.domain.k) == (1, 0, 0, 0)
    assert nd.domain.haar.scalar() == 1
    assert nd.homs[0].RR == [[F(1)]]
    assert len(res.ledger) == 1
    assert res.quotient_map is not None
    assert nd.homs[0].compose(res.quotient_map) == sigma
    assert joint_kernel(nd).is_trivial()


def test_quotient_pushes_measure_forward():
    g = ElementaryGroup(a=1, b=1, haar=HaarRecord(torus_total=F(5)))
    nd = make_nondegenerate(Datum(g, [BlockHom(g, R, RR=[[F(1)]])],
                                  [F(2)])).datum
    assert nd.domain.haar.scalar() == 5
    assert nd.domain.a == 1


def test_full_torus_kernel_leaves_weighted_point():
    t5 = ElementaryGroup(b=1, haar=HaarRecord(torus_total=F(5)))
    res = make_nondegenerate(Datum(t5, [BlockHom(t5, pt)], [F(2)]))
    assert res.datum.domain.is_trivial()
    assert res.datum.domain.total_mass() == 5


def test_corestrict_doubling_on_z():
    res = make_nondegenerate(Datum(Z, [BlockHom(Z, Z, ZZ=[[2]])], [F(2)]))
    h = res.datum.homs[0]
    assert is_surjective(h)
    assert h.ZZ == [[1]]
    assert h.codomain.haar.z_point == 1
    assert "map 0" in res.ledger[0]
    assert res.quotient_map is None


def test_corestrict_finite_embedding():
    emb = BlockHom(Z2, Z4, FF=[[2]])
    res = make_nondegenerate(Datum(Z2, [emb], [F(2)]))
    h = res.datum.homs[0]
    assert h.codomain.torsion == (2,)
    assert h.FF == [[1]]
    assert h.codomain.haar.f_point == 1


def test_finite_quotient_carries_mass():
    red = BlockHom(Z4, Z2, FF=[[1]])
    res = make_nondegenerate(Datum(Z4, [red], [F(2)]))
    nd = res.datum
    assert nd.domain.torsion == (2,)
    assert nd.domain.haar.f_point == 2
    assert nd.homs[0].FF == [[1]]
    assert nd.homs[0].codomain == Z2
    assert nd.homs[0].compose(res.quotient_map) == red


def test_nondegenerate_input_untouched():
    d = Datum(R, [BlockHom(R, R, RR=[[F(1)]])], [F(2)])
    res = make_nondegenerate(d)
    assert res.datum == d
    assert res.ledger == ()
    assert make_nondegenerate(res.datum).datum == res.datum


def test_idempotent_after_quotient():
    g = ElementaryGroup(a=1, b=1)
    nd = make_nondegenerate(Datum(g, [BlockHom(g, R, RR=[[F(1)]])],
                                  [F(2)])).datum
    again = make_nondegenerate(nd)
    assert again.datum == nd and again.ledger == ()


def test_non_open_image_warned_not_fixed():
    line = BlockHom(R, R2, RR=[[F(1)], [F(0)]])
    keep = BlockHom(R, R, RR=[[F(1)]])
    res = make_nondegenerate(Datum(R, [keep, line], [F(2), F(2)]))
    assert res.datum.homs[1] == line
    assert any("not open" in line_ for line_ in res.ledger)


def test_improper_rejected():
    half = BlockHom(Z, T, ZT=[[F(1, 2)]])
    with pytest.raises(NotProper):
        make_nondegenerate(Datum(Z, [half], [F(2)]))


def test_decompose_block_diagonal():
    M = ElementaryGroup(a=1, b=1, c=1, torsion=(2,),
                        haar=HaarRecord(F(3), F(5), F(7), F(11)))
    dm = Datum(M, [BlockHom.identity(M)], [F(2)])
    d_t, d_v, d_f, d_z = decompose(dm)
    assert d_t.domain.b == 1 and d_t.domain.haar.torus_total == 5
    assert d_t.homs[0].TT == [[1]]
    assert d_v.domain.a == 1 and d_v.domain.haar.vector_scale == 3
    assert d_v.homs[0].RR == [[F(1)]]
    assert d_f.domain.torsion == (2,) and d_f.domain.haar.f_point == 11
    assert d_f.homs[0].FF == [[1]]
    assert d_z.domain.c == 1 and d_z.domain.haar.z_point == 7
    assert d_z.homs[0].ZZ == [[1]]
    assert d_t.exponents == dm.exponents
    # the domain scalar distributes across the four factors without loss
    slots = (d_t.domain.haar.torus_total * d_v.domain.haar.vector_scale
             * d_f.domain.haar.f_point * d_z.domain.haar.z_point)
    assert slots == M.haar.scalar()


def test_decompose_rejects_degenerate():
    with pytest.raises(Degenerate):
        decompose(Datum(Z, [BlockHom(Z, Z, ZZ=[[2]])], [F(2)]))
    g = ElementaryGroup(a=1, b=1)
    with pytest.raises(Degenerate):
        decompose(Datum(g, [BlockHom(g, R, RR=[[F(1)]])], [F(2)]))


def test_mixed_kernel_full_pipeline():
    gt = ElementaryGroup(b=1, torsion=(2,))
    sm = BlockHom(gt, T, TT=[[2]], FT=[[F(1, 2)]])
    res = make_nondegenerate(Datum(gt, [sm], [F(3, 2)]))
    assert joint_kernel(res.datum).is_trivial()
    assert all(is_surjective(h) for h in res.datum.homs)
    assert res.datum.homs[0].compose(res.quotient_map) == sm
    assert res.datum.domain.total_mass() == gt.total_mass()


def test_discrete_image_lattice():
    h = BlockHom(Z, Z, ZZ=[[2]])
    lat = discrete_image_lattice(h)
    assert lat.contains([2]) and not lat.contains([1])


def test_corestrict_open_rejects_escaping_image():
    h = BlockHom(Z, Z, ZZ=[[1]])
    lat = discrete_image_lattice(BlockHom(Z, Z, ZZ=[[2]]))
    with pytest.raises(Degenerate):
        corestrict_open(h, lat)


def test_merge_finite_coordinates():
    chain, gens = merge_finite_coordinates([2, 4])
    assert list(chain) == [2, 4]
    assert len(gens) == 2
    # coprime blocks merge into one cyclic factor
    chain2, gens2 = merge_finite_coordinates([2, 3])
    assert list(chain2) == [6]
    assert len(gens2) == 1
    assert merge_finite_coordinates([]) == ([], [])


def test_kernel_embedding_weil_mass():
    # Z/4 -> Z/2 with weighted measures: the kernel inclusion carries the
    # fiber mass ratio
    g = Z4.with_haar(HaarRecord(f_point=F(3)))
    t = Z2.with_haar(HaarRecord(f_point=F(5)))
    h = BlockHom(g, t, FF=[[1]])
    iota = kernel_embedding(h)
    assert iota.codomain == g
    ker = iota.domain
    assert ker.finite_order == 2
    # fibers integrate against the target measure back to the domain total:
    # mass(N) * mass(H) = mass(G), here f * 2 * 10 = 12
    mass_n = ker.haar.f_point * ker.finite_order
    mass_h = t.haar.f_point * t.finite_order
    mass_g = g.haar.f_point * g.finite_order
    assert mass_n * mass_h == mass_g
    assert ker.haar.f_point == F(3, 5)
