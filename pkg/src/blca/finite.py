"""Exact subgroup constants on finite abelian groups.

On a finite group the inequality's best constant is a maximum over subgroups
H of (|H| m) / prod_j (|image_j(H)| m_j)^(1/p_j), so everything here is exact
arithmetic: subgroups are enumerated completely, values are ExactValue
products of rational powers, and the maximum is decided by integer
comparisons rather than floats.

The annihilator_datum construction gives the matching datum on the dual side:
its subgroup constant with conjugate exponents equals the input's, which the
test suite checks exactly on random small data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import Degenerate, ShapeMismatch, TooLarge
from .exact import ExactValue
from .groups import ElementaryGroup, HaarRecord, LatticeSubgroup, dual_group
from .homs import BlockHom, Datum, joint_kernel
from .intmat import congruence_kernel

DEFAULT_BOUND = 100000


def _require_finite(g: ElementaryGroup, what: str) -> None:
    if g.a or g.b or g.c:
        raise ShapeMismatch(f"{what} must be a finite group, got {g.describe()}")


@dataclass(frozen=True)
class SubgroupList:
    ambient: ElementaryGroup
    subgroups: Tuple[LatticeSubgroup, ...]
    sizes: Tuple[int, ...]

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(zip(self.subgroups, self.sizes))


def enumerate_subgroups(group: ElementaryGroup, bound: int = DEFAULT_BOUND) -> SubgroupList:
    """Every subgroup of a finite abelian group, each exactly once.

    Join-closure of the cyclic subgroups: every subgroup is a join of cyclic
    ones, and the canonical Hermite basis makes deduplication a set lookup.
    """
    _require_finite(group, "subgroup enumeration ambient")
    if group.finite_order > bound:
        raise TooLarge(f"group order {group.finite_order} exceeds the bound {bound}")
    orders = group.torsion
    cyclics = {LatticeSubgroup.from_generators(orders, [list(e)])
               for e in itertools.product(*(range(d) for d in orders))}
    cyclics = sorted(cyclics, key=lambda s: s.key())
    seen = set(cyclics)
    frontier = list(cyclics)
    while frontier:
        fresh = []
        for s in frontier:
            for c in cyclics:
                joined = s.join(c)
                if joined not in seen:
                    seen.add(joined)
                    fresh.append(joined)
        frontier = fresh
    ranked = sorted(seen, key=lambda s: (s.finite_size(), s.key()))
    return SubgroupList(group, tuple(ranked), tuple(s.finite_size() for s in ranked))


@dataclass(frozen=True)
class FiniteResult:
    value: ExactValue
    argmax: LatticeSubgroup
    argmax_size: int
    subgroup_count: int

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return (f"FiniteResult(value={self.value!r}~{float(self.value):.6g}, "
                f"argmax_size={self.argmax_size}, subgroups={self.subgroup_count})")


def _finite_targets(d: Datum) -> None:
    _require_finite(d.domain, "datum domain")
    for h in d.homs:
        _require_finite(h.codomain, "datum target")


def subgroup_bl_constant(d: Datum, bound: int = DEFAULT_BOUND) -> FiniteResult:
    """Exact maximum of (|H| m) / prod_j (|image_j(H)| m_j)^(1/p_j).

    m and m_j are the per-point masses from the Haar records.  Ties in the
    exact value are broken toward the largest subgroup, then the
    lexicographically smallest Hermite basis, so the argmax is deterministic.
    """
    _finite_targets(d)
    subs = enumerate_subgroups(d.domain, bound)
    m_dom = d.domain.haar.f_point
    recips = d.reciprocal_exponents()
    best_val: Optional[ExactValue] = None
    best: Optional[Tuple[int, LatticeSubgroup]] = None
    for sub, size in subs:
        val = ExactValue.of(Fraction(size) * m_dom)
        for h, r in zip(d.homs, recips):
            if r == 0:
                continue
            img = sub.image_under(h.FF, h.codomain.torsion)
            val = val / ExactValue.of(
                Fraction(img.finite_size()) * h.codomain.haar.f_point) ** r
        if best_val is None or val > best_val:
            best_val, best = val, (size, sub)
        elif val == best_val:
            assert best is not None
            if size > best[0] or (size == best[0] and sub.key() < best[1].key()):
                best = (size, sub)
    assert best_val is not None and best is not None
    return FiniteResult(best_val, best[1], best[0], len(subs))


def annihilator_datum(d: Datum) -> Datum:
    """The dual-side finite datum: characters of the product of the targets
    that kill the embedded image of the domain, projected back to each dual
    target, carrying conjugate-ready measures.

    Its subgroup constant at the conjugate exponents equals the input's
    subgroup constant exactly.  Requires a trivial joint kernel so that the
    domain embeds into the product of the targets.
    """
    _finite_targets(d)
    if not joint_kernel(d).is_trivial():
        raise Degenerate("the joint kernel must be trivial to embed the domain "
                         "into the product of the targets")
    k = d.domain.k
    target_orders: List[int] = []
    for h in d.homs:
        target_orders.extend(h.codomain.torsion)
    n = len(target_orders)
    # characters m of the target product with sum_s m_s (image x)_s / d'_s
    # integral for every domain generator x
    rows = []
    for i in range(k):
        row = []
        for h in d.homs:
            for s, dp in enumerate(h.codomain.torsion):
                row.append(Fraction(h.FF[s][i], dp))
        rows.append(row)
    if rows:
        basis = congruence_kernel(rows, [1] * k)
        perp = LatticeSubgroup.from_generators(target_orders, basis)
    else:
        perp = LatticeSubgroup.full(target_orders)
    _, gens, gen_orders = perp.structure()
    # abstract copy of the annihilator with its adapted generators
    order_f = 1
    for dd in d.domain.torsion:
        order_f *= dd
    prod_mass = Fraction(1)
    prod_size = 1
    for h in d.homs:
        prod_mass *= Fraction(h.codomain.finite_order) * h.codomain.haar.f_point
        prod_size *= h.codomain.finite_order
    perp_mass = Fraction(order_f) * d.domain.haar.f_point / prod_mass
    dom = ElementaryGroup(torsion=tuple(gen_orders),
                          haar=HaarRecord(f_point=perp_mass))
    duals = [dual_group(h.codomain) for h in d.homs]
    homs = []
    offset = 0
    for h, gdual in zip(d.homs, duals):
        kj = gdual.k
        block = [[gens[i][offset + s] for i in range(len(gens))] for s in range(kj)]
        homs.append(BlockHom(dom, gdual, FF=block))
        offset += kj
    return Datum(dom, homs, d.conjugate_exponents())


@dataclass(frozen=True)
class TowerResult:
    values: Tuple[ExactValue, ...]
    monotone: bool
    first_violation: Optional[int] = None

    def floats(self) -> Tuple[float, ...]:
        return tuple(float(v) for v in self.values)


def tower_limit(data: Sequence[Datum], bound: int = DEFAULT_BOUND) -> TowerResult:
    """Subgroup constants along a finite approximation tower.

    The caller supplies the levels (quotient data with compatible measures);
    the values then increase toward the limiting constant, and a decrease is
    flagged because it means the level normalizations are inconsistent.
    """
    values = tuple(subgroup_bl_constant(level, bound).value for level in data)
    for i in range(1, len(values)):
        if values[i] < values[i - 1]:
            return TowerResult(values, False, i)
    return TowerResult(values, True)
