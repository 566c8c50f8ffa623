"""Subspace growth conditions for free and torus data."""
from fractions import Fraction

import pytest

from blca.errors import ShapeMismatch
from blca.groups import ElementaryGroup, LatticeSubgroup
from blca.homs import BlockHom, ClosedSubgroup, Datum
from blca.intmat import mat_vec, rational_rank
from blca.rank import (FAILS, HOLDS_CERTIFIED, LIKELY_HOLDS, RankVerdict,
                       dual_rank_condition, growth_index, homogeneity_check,
                       rank_condition)

F = Fraction

T = ElementaryGroup(b=1)
T2 = ElementaryGroup(b=2)


def test_growth_index_groups():
    assert growth_index(ElementaryGroup(a=2, b=1, c=3, torsion=(2,))) == 5
    assert growth_index(ElementaryGroup(b=4, torsion=(8,))) == 0
    assert growth_index(LatticeSubgroup.from_generators((0, 4), [[2, 1]])) == 1
    sub = ClosedSubgroup(ElementaryGroup(a=1, b=1), [[F(1), F(0)]], [])
    assert growth_index(sub) == 1


def test_rank_condition_identity_holds():
    v = rank_condition([[[1]], [[1]]], [2, 2])
    assert v.status == HOLDS_CERTIFIED
    assert v.ok and bool(v)


def test_rank_condition_axes_fails_with_witness():
    maps = [[[1, 0]], [[0, 1]]]
    v = rank_condition(maps, [2, 2], dim=2)
    assert v.status == FAILS
    assert v.witness is not None
    # verify the witness exactly: growth of the subspace beats the sum of
    # image growths over p
    basis = [list(w) for w in v.witness]
    dim_w = rational_rank(basis)
    spent = sum(F(1, 2) * rational_rank([mat_vec(m, w) for w in basis])
                for m in maps)
    assert F(dim_w) > spent


def test_rank_condition_young_holds():
    maps = [[[1, 0]], [[0, 1]], [[1, 1]]]
    v = rank_condition(maps, [F(3, 2)] * 3, dim=2)
    assert v.ok


def test_rank_condition_zero_dim():
    v = rank_condition([], [], dim=0)
    assert v.status == HOLDS_CERTIFIED


def test_rank_condition_p_infinite_contributes_nothing():
    # with both exponents infinite nothing can pay for growth
    v = rank_condition([[[1]], [[1]]], [None, None], dim=1)
    assert v.status == FAILS


def test_rank_condition_shape_guard():
    with pytest.raises(ShapeMismatch):
        rank_condition([[[1]]], [2, 2])
    with pytest.raises(ShapeMismatch):
        rank_condition([[[1, 0]], [[1]]], [2, 2])


def test_homogeneity_check():
    maps = [[[1, 0]], [[0, 1]], [[1, 1]]]
    assert homogeneity_check(maps, [F(3, 2)] * 3, dim=2)
    assert not homogeneity_check(maps, [2, 2, 2], dim=2)
    assert homogeneity_check([], [], dim=0)


def test_dual_rank_condition_holder_passes():
    d = Datum(T, [BlockHom(T, T, TT=[[1]]), BlockHom(T, T, TT=[[1]])], [2, 2])
    assert dual_rank_condition(d).ok


def test_dual_rank_condition_breaks_near_one():
    homs = [BlockHom(T2, T, TT=[[1, 0]]), BlockHom(T2, T, TT=[[0, 1]]),
            BlockHom(T2, T, TT=[[1, 1]])]
    bad = Datum(T2, homs, [F(21, 20)] * 3)
    v = dual_rank_condition(bad)
    assert v.status == FAILS
    good = Datum(T2, homs, [2, 2, 2])
    assert dual_rank_condition(good).ok


def test_dual_rank_condition_rejects_mixed_domain():
    g = ElementaryGroup(a=1, b=1)
    with pytest.raises(ShapeMismatch):
        dual_rank_condition(Datum(g, [BlockHom.identity(g)], [2]))


def test_verdict_truthiness():
    assert RankVerdict(HOLDS_CERTIFIED)
    assert RankVerdict(LIKELY_HOLDS)
    assert not RankVerdict(FAILS)
