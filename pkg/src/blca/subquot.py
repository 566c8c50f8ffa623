"""Degeneracy removal and the block-diagonal factorization.

Two normalizations turn a proper datum into one where every later computation
is safe: quotient the domain by the compact joint kernel, and shrink every
codomain onto the (open) image of its map.  Both are instances of one
primitive, corestriction onto an open subgroup: an open subgroup of an
elementary group is the full vector and torus sectors times a lattice in the
discrete sector, so corestriction is integer linear algebra in an adapted
basis of that lattice.

The kernel quotient runs the primitive on the dual side.  The annihilator of
a compact subgroup is open in the dual, the adjoints of the maps land inside
it because they kill nothing the kernel pairs with, and dualizing back gives
the quotient datum.  The measure bookkeeping comes out on its own: restricting
the dual measure to the annihilator and dualizing again is exactly the
pushforward measure on the quotient, i.e. the kernel is normalized to total
mass one.

decompose then reads the four diagonal blocks off a nondegenerate datum; the
off-diagonal blocks carry no constant of their own and are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import Degenerate, NotProper
from .groups import ElementaryGroup, HaarRecord, LatticeSubgroup, dual_group
from .homs import (BlockHom, ClosedSubgroup, Datum, adjoint_hom, image_is_open,
                   is_proper, is_surjective, joint_kernel)
from .intmat import (congruence_kernel, det_rational, diagonal_of, from_columns,
                     integer_kernel, rational_kernel, smith_normal_form,
                     solve_integer, solve_rational)


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _fold_discrete_haar(haar: HaarRecord, c_new: int, k_new: int) -> HaarRecord:
    """Scale record for an open subgroup whose discrete sector shrank.

    Point masses on the discrete sector are preserved (that is what
    restriction of Haar measure does); when one of the two discrete sectors
    disappears its scale folds into the survivor so scalar() stays honest.
    """
    point = haar.z_point * haar.f_point
    if c_new and k_new:
        return haar
    if c_new:
        return HaarRecord(haar.vector_scale, haar.torus_total, point, Fraction(1))
    return HaarRecord(haar.vector_scale, haar.torus_total, Fraction(1), point)


def discrete_image_lattice(h: BlockHom) -> LatticeSubgroup:
    """Projection of the image of h to the codomain's Z^c x F sector."""
    cod = h.codomain
    gens = []
    for i in range(h.domain.c):
        gens.append([h.ZZ[r][i] for r in range(cod.c)]
                    + [h.ZF[r][i] for r in range(cod.k)])
    for i in range(h.domain.k):
        gens.append([0] * cod.c + [h.FF[r][i] for r in range(cod.k)])
    return LatticeSubgroup.from_generators(cod.discrete_orders(), gens)


def corestrict_open(h: BlockHom, lattice: LatticeSubgroup) -> BlockHom:
    """Corestrict h onto the open subgroup (full R and T sectors) x lattice.

    The discrete part of the image of h must lie inside the lattice; the
    rewritten discrete blocks express each output in the lattice's adapted
    generators.  Vector and torus sector blocks pass through unchanged.
    """
    cod = h.codomain
    if lattice.orders != cod.discrete_orders():
        raise Degenerate("lattice does not live in the codomain's discrete sector")
    free_cols, tors_cols, tors_orders = lattice.structure()
    c_new, k_new = len(free_cols), len(tors_orders)
    new_cod = ElementaryGroup(a=cod.a, b=cod.b, c=c_new, torsion=tuple(tors_orders),
                              haar=_fold_discrete_haar(cod.haar, c_new, k_new))
    n = cod.c + cod.k
    solver_cols = list(free_cols) + list(tors_cols)
    for i, d in enumerate(lattice.orders):
        if d:
            solver_cols.append([d if j == i else 0 for j in range(n)])
    mat = from_columns(solver_cols, n) if solver_cols else []

    def rewrite(col, finite_source):
        if not any(col):
            return [0] * c_new, [0] * k_new
        y = solve_integer(mat, col)
        if y is None:
            raise Degenerate("map image escapes the subgroup being corestricted to")
        free = y[:c_new]
        tors = [y[c_new + i] % tors_orders[i] for i in range(k_new)]
        if finite_source and any(free):
            raise Degenerate("finite-order image with a free coordinate")
        return free, tors

    zz = [[0] * h.domain.c for _ in range(c_new)]
    zf = [[0] * h.domain.c for _ in range(k_new)]
    ff = [[0] * h.domain.k for _ in range(k_new)]
    for i in range(h.domain.c):
        col = ([h.ZZ[r][i] for r in range(cod.c)]
               + [h.ZF[r][i] for r in range(cod.k)])
        free, tors = rewrite(col, False)
        for r in range(c_new):
            zz[r][i] = free[r]
        for r in range(k_new):
            zf[r][i] = tors[r]
    for i in range(h.domain.k):
        col = [0] * cod.c + [h.FF[r][i] for r in range(cod.k)]
        _, tors = rewrite(col, True)
        for r in range(k_new):
            ff[r][i] = tors[r]
    return BlockHom(h.domain, new_cod, RR=h.RR, RT=h.RT, TT=h.TT, ZR=h.ZR,
                    ZT=h.ZT, ZZ=zz, ZF=zf, FT=h.FT, FF=ff)


def merge_finite_coordinates(orders: List[int]):
    """Canonical form of a direct sum of cyclic blocks Z/orders[i].

    Returns (chain, gens): chain is the ascending divisibility sequence of the
    sum, and gens[r] gives the coordinates of the r-th canonical generator in
    the original blocks.  Both empty when there are no blocks.
    """
    if not orders:
        return [], []
    _, tors_cols, chain = LatticeSubgroup.full(tuple(orders)).structure()
    return chain, tors_cols


def kernel_embedding(h: BlockHom) -> BlockHom:
    """Inclusion of an elementary model of ker h into h's domain.

    Needs a sector-diagonal surjective map.  The returned map's domain is the
    kernel re-expressed as an elementary group; its Haar record is the fiber
    measure, i.e. the one for which the domain measure disintegrates as
    (kernel) x (codomain) sector by sector.  The continuous sectors pick up
    the jacobian of the chosen parametrization, so the record depends on the
    basis only through the measure it induces on the kernel.
    """
    g, cod = h.domain, h.codomain
    for name in ("RT", "ZR", "ZT", "ZF", "FT"):
        blk = getattr(h, name)
        if any(any(row) for row in blk):
            raise Degenerate(f"kernel model needs a sector-diagonal map; "
                             f"block {name} is nonzero")
    if not is_surjective(h):
        raise Degenerate("kernel model needs a surjective map; corestrict "
                         "onto the open image first")

    # vector sector: kernel basis plus a section, whose combined determinant
    # is the jacobian tying the fiber scale to the two Lebesgue scales
    if g.a:
        basis = rational_kernel(h.RR) if h.RR else \
            [[Fraction(1) if i == j else Fraction(0) for i in range(g.a)]
             for j in range(g.a)]
        section = []
        for i in range(cod.a):
            rhs = [Fraction(1) if r == i else Fraction(0) for r in range(cod.a)]
            sol = solve_rational(h.RR, rhs)
            if sol is None:
                raise Degenerate("vector block is not surjective")
            section.append(sol)
        jac = abs(det_rational(from_columns(list(basis) + section, g.a)))
    else:
        basis, jac = [], Fraction(1)
    a_n = len(basis)

    # torus sector: diagonalize; zero diagonal slots stay toral, slots with
    # entry d > 1 become cyclic generators wound 1/d of the way along
    torus_cols: List[List[int]] = []
    torus_tors: List[Tuple[List[int], int]] = []
    if g.b:
        if cod.b and any(any(row) for row in h.TT):
            _, dmat, v = smith_normal_form(h.TT)
            diag = diagonal_of(dmat)
        else:
            diag = []
            v = _identity(g.b)
        vcols = [[v[r][i] for r in range(g.b)] for i in range(g.b)]
        for i in range(g.b):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                torus_cols.append(vcols[i])
            elif d > 1:
                torus_tors.append((vcols[i], d))
    b_n = len(torus_cols)
    compact_component_count = 1
    for _, d in torus_tors:
        compact_component_count *= d

    # free sector
    if g.c:
        free_basis = integer_kernel(h.ZZ) if h.ZZ else \
            [[1 if i == j else 0 for i in range(g.c)] for j in range(g.c)]
    else:
        free_basis = []
    c_n = len(free_basis)

    # finite sector
    if g.k:
        if cod.k:
            rows = [[Fraction(h.FF[r][i], cod.torsion[r]) for i in range(g.k)]
                    for r in range(cod.k)]
            lat = LatticeSubgroup.from_generators(
                g.torsion, congruence_kernel(rows, [1] * cod.k))
        else:
            lat = LatticeSubgroup.full(g.torsion)
        _, f_cols, f_orders = lat.structure()
    else:
        f_cols, f_orders = [], []

    # glue the two finite contributions into one canonical chain
    chain, gens = merge_finite_coordinates(
        [d for _, d in torus_tors] + list(f_orders))
    split = len(torus_tors)
    ft_block = [[Fraction(0)] * len(gens) for _ in range(g.b)]
    ff_block = [[0] * len(gens) for _ in range(g.k)]
    for r, gen in enumerate(gens):
        for i, (col, d) in enumerate(torus_tors):
            for row in range(g.b):
                ft_block[row][r] += Fraction(gen[i] * col[row], d)
        for j in range(len(f_orders)):
            for row in range(g.k):
                ff_block[row][r] += gen[split + j] * f_cols[j][row]

    gh, ch = g.haar, cod.haar
    haar = HaarRecord(
        vector_scale=gh.vector_scale * jac / ch.vector_scale,
        torus_total=gh.torus_total / ch.torus_total,
        z_point=gh.z_point / ch.z_point,
        f_point=gh.f_point / (ch.f_point * compact_component_count))
    model = ElementaryGroup(a=a_n, b=b_n, c=c_n, torsion=tuple(chain), haar=haar)
    return BlockHom(
        model, g,
        RR=from_columns(basis, g.a) if g.a else None,
        TT=from_columns(torus_cols, g.b) if g.b else None,
        FT=ft_block if (g.b and gens) else None,
        ZZ=from_columns(free_basis, g.c) if g.c else None,
        FF=ff_block if (g.k and gens) else None)


def _annihilator_of_compact_kernel(N: ClosedSubgroup, g: ElementaryGroup) -> LatticeSubgroup:
    """Characters of G vanishing on the compact subgroup N, as a lattice in
    the dual's discrete sector Z^b x F-hat."""
    b, k = g.b, g.k
    rows, moduli = [], []
    for v in N.lie:
        rows.append([Fraction(x) for x in v[g.a:]] + [Fraction(0)] * k)
        moduli.append(0)
    for el in N.gens:
        rows.append([Fraction(t) for t in el.t]
                    + [Fraction(el.u[s], g.torsion[s]) for s in range(k)])
        moduli.append(1)
    orders = (0,) * b + g.torsion
    if not rows:
        return LatticeSubgroup.full(orders)
    return LatticeSubgroup.from_generators(orders, congruence_kernel(rows, moduli))


def lattice_inclusion_hom(lattice: LatticeSubgroup, ghat: ElementaryGroup) -> BlockHom:
    """Inclusion of the open subgroup (full R and T sectors) x lattice.

    The subgroup carries the restricted measure, point masses kept, matching
    what corestrict_open builds as a codomain for the same lattice.
    """
    free_cols, tors_cols, tors_orders = lattice.structure()
    c_new, k_new = len(free_cols), len(tors_orders)
    sub = ElementaryGroup(a=ghat.a, b=ghat.b, c=c_new, torsion=tuple(tors_orders),
                          haar=_fold_discrete_haar(ghat.haar, c_new, k_new))
    return BlockHom(
        sub, ghat,
        RR=_identity(ghat.a),
        TT=_identity(ghat.b),
        ZZ=[[col[r] for col in free_cols] for r in range(ghat.c)],
        ZF=[[col[ghat.c + r] for col in free_cols] for r in range(ghat.k)],
        FF=[[col[ghat.c + r] for col in tors_cols] for r in range(ghat.k)])


def _quotient_by_joint_kernel(d: Datum, N: ClosedSubgroup):
    g = d.domain
    for v in N.lie:
        if any(v[: g.a]):
            raise NotProper("the joint kernel has a noncompact vector direction")
    for el in N.gens:
        if any(el.x) or any(el.m):
            raise NotProper("the joint kernel has a noncompact discrete direction")
    ghat = dual_group(g)
    ann = _annihilator_of_compact_kernel(N, g)
    new_taus = [corestrict_open(adjoint_hom(h), ann) for h in d.homs]
    new_domain = dual_group(new_taus[0].codomain)
    new_homs = [adjoint_hom(t) for t in new_taus]
    quotient_map = adjoint_hom(lattice_inclusion_hom(ann, ghat))
    note = (f"quotiented the domain by its compact joint kernel "
            f"(lie rank {N.lie_rank()}, {len(N.gens)} discrete generators); "
            f"new domain {new_domain.describe()}, kernel normalized to total mass 1, "
            f"quotient carries the pushforward measure")
    return Datum(new_domain, new_homs, d.exponents), quotient_map, note


@dataclass(frozen=True)
class NondegenerateResult:
    datum: Datum
    ledger: Tuple[str, ...]
    quotient_map: Optional[BlockHom] = None

    def __iter__(self):
        return iter((self.datum, self.ledger))


def make_nondegenerate(d: Datum) -> NondegenerateResult:
    """Equivalent datum with trivial joint kernel and surjective maps.

    Quotients the domain by the compact joint kernel, then corestricts every
    codomain onto its image when that image is open.  A non-open image is left
    alone with a ledger warning: corestriction there would change the constant
    (and for finite exponents the constant is infinite anyway).  Idempotent.
    """
    report = is_proper(d)
    if not report:
        raise NotProper(report.reason)
    ledger: List[str] = []
    cur = d
    quotient_map = None
    N = joint_kernel(cur)
    if not N.is_trivial():
        cur, quotient_map, note = _quotient_by_joint_kernel(cur, N)
        ledger.append(note)
    homs = []
    for pos, h in enumerate(cur.homs):
        if is_surjective(h):
            homs.append(h)
            continue
        if not image_is_open(h):
            ledger.append(f"map {pos}: image is not open in {h.codomain.describe()}; "
                          f"left in place (a finite exponent there forces an "
                          f"infinite constant)")
            homs.append(h)
            continue
        h2 = corestrict_open(h, discrete_image_lattice(h))
        ledger.append(f"map {pos}: codomain corestricted to its open image "
                      f"{h2.codomain.describe()}, open-subgroup measure "
                      f"(discrete point masses kept)")
        homs.append(h2)
    out = Datum(cur.domain, homs, cur.exponents)
    return NondegenerateResult(out, tuple(ledger), quotient_map)


def _is_nondegenerate(d: Datum) -> Optional[str]:
    if not joint_kernel(d).is_trivial():
        return "the joint kernel is nontrivial"
    for pos, h in enumerate(d.homs):
        if not is_surjective(h):
            return f"map {pos} is not surjective"
    return None


def decompose(d: Datum) -> Tuple[Datum, Datum, Datum, Datum]:
    """Split a nondegenerate datum into its torus, vector, finite and free
    diagonal-block data, in that order.

    Each factor keeps its own sector's Haar scale; off-diagonal blocks are
    dropped (they do not contribute a factor of their own).
    """
    why = _is_nondegenerate(d)
    if why is not None:
        raise Degenerate(why + "; run make_nondegenerate first")
    g = d.domain
    torus_dom = ElementaryGroup(b=g.b, haar=HaarRecord(torus_total=g.haar.torus_total))
    vector_dom = ElementaryGroup(a=g.a, haar=HaarRecord(vector_scale=g.haar.vector_scale))
    finite_dom = ElementaryGroup(torsion=g.torsion, haar=HaarRecord(f_point=g.haar.f_point))
    free_dom = ElementaryGroup(c=g.c, haar=HaarRecord(z_point=g.haar.z_point))
    torus_homs, vector_homs, finite_homs, free_homs = [], [], [], []
    for h in d.homs:
        cj = h.codomain
        torus_homs.append(BlockHom(
            torus_dom, ElementaryGroup(b=cj.b, haar=HaarRecord(torus_total=cj.haar.torus_total)),
            TT=h.TT))
        vector_homs.append(BlockHom(
            vector_dom, ElementaryGroup(a=cj.a, haar=HaarRecord(vector_scale=cj.haar.vector_scale)),
            RR=h.RR))
        finite_homs.append(BlockHom(
            finite_dom, ElementaryGroup(torsion=cj.torsion, haar=HaarRecord(f_point=cj.haar.f_point)),
            FF=h.FF))
        free_homs.append(BlockHom(
            free_dom, ElementaryGroup(c=cj.c, haar=HaarRecord(z_point=cj.haar.z_point)),
            ZZ=h.ZZ))
    return (Datum(torus_dom, torus_homs, d.exponents),
            Datum(vector_dom, vector_homs, d.exponents),
            Datum(finite_dom, finite_homs, d.exponents),
            Datum(free_dom, free_homs, d.exponents))
