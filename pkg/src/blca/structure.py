"""End-to-end computation of the inequality constant, and its dual form.

The pipeline normalizes a datum until the four diagonal sectors can be read
off and priced separately: infinite exponents are dropped, improper data are
declared infinite, the compact joint kernel is quotiented away, open images
are corestricted, and the datum splits into torus, vector, finite and free
parts.  Each part has its own decision procedure (annihilator rank search,
gaussian ascent, exact subgroup maximum, rank search) and the total is the
product of the parts.

Three reduction operators are public because they are useful on their own:
reduce_p_infinity and reduce_p_one remove indices whose exponent is infinite
or one, and reduce_transversal quotients the domain by a subgroup that all
but one map annihilates.  Unit exponents are eliminated inside the vector
factor during the pipeline, where kernels stay within one sector; there the
gaussian supremum at exponent one is typically approached only along a
degenerate limit, which the reduction removes.

Every numeric claim in a report carries a certification level:

    exact      value produced by rational arithmetic and a certified search
    certified  an INFINITE verdict backed by an explicit witness
    numerical  floating-point optimization under a certified finiteness test
    heuristic  a search that found no violation but could not certify

A report is UNKNOWN when some part depends on an uncertified search and no
part is outright infinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple

from .errors import (BadSubgroup, Degenerate, EmptyDatum, NotUnitExponent,
                     ShapeMismatch, TooLarge)
from .exact import ExactValue
from .finite import DEFAULT_BOUND, subgroup_bl_constant
from .gaussian import bcct_finiteness, gaussian_bl_constant
from .groups import ElementaryGroup, HaarRecord, dual_group
from .homs import (BlockHom, ClosedSubgroup, Datum, adjoint_hom, image_is_open,
                   is_proper, is_surjective, kernel_info)
from .intmat import det_rational, hstack, rational_rank
from .rank import (FAILS, HOLDS_CERTIFIED, LIKELY_HOLDS, dual_rank_condition,
                   rank_condition)
from .subquot import (_annihilator_of_compact_kernel, _is_nondegenerate,
                      corestrict_open, decompose, discrete_image_lattice,
                      kernel_embedding, lattice_inclusion_hom,
                      make_nondegenerate, merge_finite_coordinates)

FINITE = "FINITE"
INFINITE = "INFINITE"
UNKNOWN = "UNKNOWN"

EXACT = "exact"
CERTIFIED = "certified"
NUMERICAL = "numerical"
HEURISTIC = "heuristic"
_LEVEL_ORDER = (EXACT, CERTIFIED, NUMERICAL, HEURISTIC)


def _weakest(levels: Sequence[str]) -> str:
    return max(levels, key=_LEVEL_ORDER.index) if levels else EXACT


# -- reports ----------------------------------------------------------------

@dataclass(frozen=True)
class FactorReport:
    """Outcome for one diagonal part of the decomposition."""

    name: str
    kind: str
    value: Optional[float]
    exact: Optional[ExactValue]
    certification: str
    witness: Optional[object] = None
    notes: Tuple[str, ...] = ()

    def to_dict(self):
        return {
            "name": self.name,
            "kind": self.kind,
            "value": self.value,
            "exact": repr(self.exact) if self.exact is not None else None,
            "certification": self.certification,
            "witness": repr(self.witness) if self.witness is not None else None,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ConstantReport:
    """Total constant with its provenance.

    kind is FINITE, INFINITE or UNKNOWN; value is the numeric total (inf when
    INFINITE, possibly None when UNKNOWN); exact is present when every part
    was decided by rational arithmetic.  certification is the weakest level
    among the parts that produced the verdict.
    """

    kind: str
    value: Optional[float]
    exact: Optional[ExactValue]
    certification: str
    factors: Tuple[FactorReport, ...]
    ledger: Tuple[str, ...]
    witnesses: Tuple[object, ...]

    @property
    def total(self) -> Optional[float]:
        if self.kind == INFINITE:
            return math.inf
        return self.value

    def is_finite(self) -> bool:
        return self.kind == FINITE

    def to_dict(self):
        return {
            "kind": self.kind,
            "value": None if self.value is None else (
                "inf" if math.isinf(self.value) else self.value),
            "exact": repr(self.exact) if self.exact is not None else None,
            "certification": self.certification,
            "factors": [f.to_dict() for f in self.factors],
            "ledger": list(self.ledger),
            "witnesses": [repr(w) for w in self.witnesses],
        }

    def __repr__(self):
        if self.kind == FINITE:
            return f"ConstantReport(FINITE, value={self.value:.12g}, {self.certification})"
        return f"ConstantReport({self.kind}, {self.certification})"


# -- exponent reductions ----------------------------------------------------

def reduce_p_infinity(d: Datum) -> Datum:
    """Drop every index whose exponent is infinite; the constant is unchanged.

    A function bounded in the sup norm contributes at most its bound as a
    multiplicative factor, and the extremal choice is the constant 1, so such
    indices never constrain the supremum.

    Raises EmptyDatum when no index survives; the constant is then the total
    mass of the domain (infinite when the domain is noncompact), carried in
    the exception's resolution field.
    """
    keep = [j for j, p in enumerate(d.exponents) if p is not None]
    if len(keep) == d.J:
        return d
    if not keep:
        mass = d.domain.total_mass()
        raise EmptyDatum(
            "every exponent is infinite; the inequality compares the domain "
            "mass against the constant",
            resolution=mass if mass is not None else math.inf)
    return Datum(d.domain, [d.homs[j] for j in keep],
                 [d.exponents[j] for j in keep])


def _point_kernel_inclusion(h: BlockHom) -> BlockHom:
    """Inclusion of the trivial group as the kernel of an isomorphism.

    The single point carries the ratio of the two measures; for triangular
    block structure the jacobian is the product of the diagonal jacobians,
    of which only the vector one can differ from 1.
    """
    g, cod = h.domain, h.codomain
    det = abs(det_rational(h.RR)) if g.a else Fraction(1)
    gh, ch = g.haar, cod.haar
    mass = (gh.vector_scale / (ch.vector_scale * det)
            * gh.torus_total / ch.torus_total
            * gh.z_point / ch.z_point
            * gh.f_point / ch.f_point)
    model = ElementaryGroup(haar=HaarRecord(f_point=mass))
    return BlockHom.zero(model, g)


def _kernel_inclusion(h: BlockHom) -> BlockHom:
    """Kernel of h as an embedded elementary group with the fiber measure.

    Non-surjective maps with open image are corestricted first; a trivial
    kernel is handled for arbitrary block structure, a nontrivial one needs
    a sector-diagonal map.
    """
    if not is_surjective(h):
        if not image_is_open(h):
            raise Degenerate(
                "kernel reduction needs an open image; a non-open image "
                "already forces an infinite constant at any finite exponent")
        h = corestrict_open(h, discrete_image_lattice(h))
    if kernel_info(h).is_trivial():
        return _point_kernel_inclusion(h)
    return kernel_embedding(h)


def reduce_p_one(d: Datum, k: int) -> Datum:
    """Restrict the datum to the kernel of the k-th map when p_k = 1.

    The surviving maps are composed with the kernel inclusion and index k
    disappears; the kernel carries the fiber measure, which is what makes
    the constant come out unchanged.  k is 0-based.

    Raises NotUnitExponent unless p_k = 1, and EmptyDatum when k was the
    only index (resolution then holds the kernel's total mass, or infinity).
    """
    if not 0 <= k < d.J:
        raise ShapeMismatch(f"index {k} out of range for {d.J} maps")
    if d.exponents[k] != 1:
        raise NotUnitExponent(
            f"index {k} has exponent {d.exponents[k]}, not 1")
    iota = _kernel_inclusion(d.homs[k])
    rest = [(d.homs[j].compose(iota), d.exponents[j])
            for j in range(d.J) if j != k]
    if not rest:
        n = iota.domain
        mass = n.total_mass()
        raise EmptyDatum(
            "the unit-exponent index was the only one; the constant is the "
            "mass of its kernel",
            resolution=mass if mass is not None else math.inf)
    return Datum(iota.domain, [h for h, _ in rest], [p for _, p in rest])


# -- transversal quotient ---------------------------------------------------

def _maps_to_identity(h: BlockHom, n: ClosedSubgroup) -> bool:
    g = h.domain
    for v in n.lie:
        vx, vt = v[: g.a], v[g.a:]
        img_x = [sum(h.RR[r][i] * vx[i] for i in range(g.a))
                 for r in range(h.codomain.a)]
        img_t = [sum(h.RT[r][i] * vx[i] for i in range(g.a))
                 + sum(h.TT[r][i] * vt[i] for i in range(g.b))
                 for r in range(h.codomain.b)]
        if any(img_x) or any(img_t):
            return False
    for el in n.gens:
        out = h.apply(el)
        if any(out.x) or any(out.t) or any(out.m) or any(out.u):
            return False
    return True


def _compact_image_subgroup(h: BlockHom, n: ClosedSubgroup) -> ClosedSubgroup:
    g, cod = h.domain, h.codomain
    lie = []
    for v in n.lie:
        vt = v[g.a:]
        lie.append([Fraction(0)] * cod.a
                   + [sum(Fraction(h.TT[r][i]) * vt[i] for i in range(g.b))
                      for r in range(cod.b)])
    gens = [h.apply(el) for el in n.gens]
    return ClosedSubgroup(cod, lie, gens)


def reduce_transversal(d: Datum, k: int, n: ClosedSubgroup):
    """Quotient by a closed subgroup every map but the k-th annihilates.

    Returns math.inf when the subgroup is noncompact and p_k > 1: functions
    can then ride along the subgroup for free on the left while only the
    k-th norm notices, and it does not notice enough.  For compact n the
    result is the quotient datum: the domain becomes G/n, the k-th target
    becomes its quotient by the image of n, and both carry pushforward
    measures, so the constant is preserved.
    """
    if not 0 <= k < d.J:
        raise ShapeMismatch(f"index {k} out of range for {d.J} maps")
    if n.group != d.domain:
        raise ShapeMismatch("the subgroup must live in the datum's domain")
    for j, h in enumerate(d.homs):
        if j != k and not _maps_to_identity(h, n):
            raise BadSubgroup(
                f"map {j} does not annihilate the subgroup, so the quotient "
                f"datum is not defined")
    if n.is_trivial():
        return d
    if not n.is_compact():
        p = d.exponents[k]
        if p is None or p > 1:
            return math.inf
        raise Degenerate(
            "a noncompact transversal subgroup with exponent 1 at the "
            "surviving index is outside this reduction; use reduce_p_one")
    g = d.domain
    ghat = dual_group(g)
    ann = _annihilator_of_compact_kernel(n, g)
    new_homs: List[BlockHom] = []
    for j, h in enumerate(d.homs):
        if j == k:
            image = _compact_image_subgroup(h, n)
            ann_k = _annihilator_of_compact_kernel(image, h.codomain)
            incl_k = lattice_inclusion_hom(ann_k, dual_group(h.codomain))
            tau = adjoint_hom(h).compose(incl_k)
            new_homs.append(adjoint_hom(corestrict_open(tau, ann)))
        else:
            new_homs.append(adjoint_hom(corestrict_open(adjoint_hom(h), ann)))
    return Datum(new_homs[0].domain, new_homs, d.exponents)


# -- factor evaluation ------------------------------------------------------

def _scale_correction(fd: Datum) -> ExactValue:
    """Measure correction for a part whose unit-normalized constant is 1:
    domain scale times the product of target scales to the power -1/p."""
    val = ExactValue.of(fd.domain.haar.scalar())
    for h, r in zip(fd.homs, fd.reciprocal_exponents()):
        if r:
            val = val / ExactValue.of(h.codomain.haar.scalar()) ** r
    return val


def _rank_decided_factor(name: str, fd: Datum, verdict) -> FactorReport:
    corr = _scale_correction(fd)
    if verdict.status == FAILS:
        return FactorReport(
            name, INFINITE, math.inf, None, CERTIFIED, witness=verdict.witness,
            notes=("growth along the witness subgroup outruns the right-hand "
                   "side; no finite constant exists",))
    cert = EXACT if verdict.status == HOLDS_CERTIFIED else HEURISTIC
    notes = ()
    if verdict.status == LIKELY_HOLDS:
        notes = ("the rank search found no violation but could not certify "
                 "completeness; the value assumes the condition holds",)
    return FactorReport(name, FINITE, float(corr), corr, cert, notes=notes)


def _torus_factor(fd: Datum, depth: int, samples: int, seed: int) -> FactorReport:
    verdict = dual_rank_condition(fd, depth=depth, samples=samples, seed=seed)
    return _rank_decided_factor("torus", fd, verdict)


def _free_factor(fd: Datum, depth: int, samples: int, seed: int) -> FactorReport:
    verdict = rank_condition([h.ZZ for h in fd.homs], fd.exponents,
                             depth=depth, samples=samples, seed=seed,
                             dim=fd.domain.c)
    return _rank_decided_factor("free", fd, verdict)


def _finite_factor(fd: Datum, bound: int) -> FactorReport:
    try:
        res = subgroup_bl_constant(fd, bound=bound)
    except TooLarge as exc:
        return FactorReport("finite", UNKNOWN, None, None, HEURISTIC,
                            notes=(str(exc),))
    return FactorReport(
        "finite", FINITE, float(res.value), res.value, EXACT,
        notes=(f"maximum over {res.subgroup_count} subgroups, attained at "
               f"one of size {res.argmax_size}",))


def _vector_factor(fd: Datum, tol: float, budget: int, restarts: int,
                   seed: int, depth: int, samples: int) -> FactorReport:
    notes: List[str] = []
    while True:
        for j, h in enumerate(fd.homs):
            if rational_rank(h.RR) < h.codomain.a:
                return FactorReport(
                    "vector", INFINITE, math.inf, None, CERTIFIED,
                    witness=f"map {j} has image a proper subspace",
                    notes=tuple(notes) + (
                        "a map onto a proper (hence non-open) subspace "
                        "forces an infinite constant at finite exponents",))
        k = next((j for j, p in enumerate(fd.exponents) if p == 1), None)
        if k is None:
            break
        if fd.J == 1:
            kernel = _kernel_inclusion(fd.homs[0]).domain
            notes.append("removed the last unit-exponent index; the value "
                         "is the mass of its kernel")
            if kernel.is_compact():
                mass = kernel.total_mass()
                return FactorReport("vector", FINITE, float(mass),
                                    ExactValue.of(mass), EXACT,
                                    notes=tuple(notes))
            return FactorReport(
                "vector", INFINITE, math.inf, None, CERTIFIED,
                witness="noncompact kernel at exponent 1",
                notes=tuple(notes))
        fd = reduce_p_one(fd, k)
        notes.append(f"removed unit-exponent index {k} by restricting to "
                     f"its kernel")
    verdict = bcct_finiteness(fd, depth=depth, samples=samples, seed=seed)
    if not verdict.finite:
        witness = verdict.rank.witness
        detail = verdict.detail or "finiteness test failed"
        return FactorReport("vector", INFINITE, math.inf, None,
                            CERTIFIED if verdict.certified else HEURISTIC,
                            witness=witness, notes=tuple(notes) + (detail,))
    base = HEURISTIC if verdict.rank.status == LIKELY_HOLDS else NUMERICAL
    if verdict.rank.status == LIKELY_HOLDS:
        notes.append("finiteness rests on an uncertified rank search")
    if fd.domain.a == 0 and all(h.codomain.a == 0 for h in fd.homs):
        corr = _scale_correction(fd)
        return FactorReport("vector", FINITE, float(corr), corr,
                            EXACT if base == NUMERICAL else base,
                            notes=tuple(notes))
    res = gaussian_bl_constant(fd, tol=tol, budget=budget, restarts=restarts,
                               seed=seed)
    if math.isinf(res.value):
        return FactorReport(
            "vector", UNKNOWN, None, None, HEURISTIC,
            notes=tuple(notes) + (
                "the gaussian ascent diverged although the finiteness test "
                "passed; the two decisions disagree",))
    notes.append(f"gaussian ascent {res.status.lower()} after {res.sweeps} "
                 f"sweeps")
    return FactorReport("vector", FINITE, res.value, None, base,
                        notes=tuple(notes))


# -- the pipeline -----------------------------------------------------------

def _early_report(kind, value, exact, cert, ledger, witnesses=()):
    return ConstantReport(kind, value, exact, cert, (), tuple(ledger),
                          tuple(witnesses))


def bl_constant(d: Datum, *, tol: float = 1e-10, budget: int = 100000,
                restarts: int = 5, seed: int = 0, depth: int = 6,
                samples: int = 1000, max_finite: int = DEFAULT_BOUND
                ) -> ConstantReport:
    """Decide finiteness of the constant and compute it.

    Pipeline: drop infinite exponents, reject improper data as INFINITE,
    normalize (kernel quotient, image corestriction), declare INFINITE if a
    non-open image survives at the now all-finite exponents, split into the
    four diagonal parts, price each part, multiply.
    """
    ledger: List[str] = []
    try:
        d2 = reduce_p_infinity(d)
    except EmptyDatum as exc:
        ledger.append(str(exc))
        mass = d.domain.total_mass()
        if mass is None:
            ledger.append("the domain is noncompact, so its mass is infinite")
            return _early_report(INFINITE, math.inf, None, CERTIFIED, ledger)
        return _early_report(FINITE, float(mass), ExactValue.of(mass), EXACT,
                             ledger)
    if d2.J != d.J:
        ledger.append(f"dropped {d.J - d2.J} index(es) with infinite "
                      f"exponent")
    proper = is_proper(d2)
    if not proper:
        ledger.append(proper.reason)
        return _early_report(INFINITE, math.inf, None, CERTIFIED, ledger,
                             witnesses=(proper.reason,))
    norm = make_nondegenerate(d2)
    ledger.extend(norm.ledger)
    d3 = norm.datum
    why = _is_nondegenerate(d3)
    if why is not None:
        ledger.append(f"{why}; with every exponent finite this forces an "
                      f"infinite constant")
        return _early_report(INFINITE, math.inf, None, CERTIFIED, ledger,
                             witnesses=(why,))
    torus_d, vector_d, finite_d, free_d = decompose(d3)
    factors = (
        _torus_factor(torus_d, depth, samples, seed),
        _vector_factor(vector_d, tol, budget, restarts, seed, depth, samples),
        _finite_factor(finite_d, max_finite),
        _free_factor(free_d, depth, samples, seed),
    )
    witnesses = tuple(f.witness for f in factors if f.witness is not None)
    infinite = [f for f in factors if f.kind == INFINITE]
    if infinite:
        cert = _weakest([f.certification for f in infinite])
        return ConstantReport(INFINITE, math.inf, None, cert, factors,
                              tuple(ledger), witnesses)
    value: Optional[float] = 1.0
    exact: Optional[ExactValue] = ExactValue.one()
    for f in factors:
        if f.value is None:
            value = None
        elif value is not None:
            value *= f.value
        if f.exact is None:
            exact = None
        elif exact is not None:
            exact = exact * f.exact
    if exact is not None:
        value = float(exact)
    unknown = any(f.kind == UNKNOWN or f.certification == HEURISTIC
                  for f in factors)
    kind = UNKNOWN if unknown else FINITE
    cert = _weakest([f.certification for f in factors])
    return ConstantReport(kind, value, exact, cert, factors, tuple(ledger),
                          witnesses)


# -- dualization ------------------------------------------------------------

def _strip_sector_mixing(d: Datum) -> Tuple[Datum, bool]:
    homs = []
    dropped = False
    for h in d.homs:
        mixing = any(any(row)
                     for name in ("RT", "ZR", "ZT", "ZF", "FT")
                     for row in getattr(h, name))
        if mixing:
            dropped = True
            homs.append(BlockHom(h.domain, h.codomain, RR=h.RR, TT=h.TT,
                                 ZZ=h.ZZ, FF=h.FF))
        else:
            homs.append(h)
    if not dropped:
        return d, False
    return Datum(d.domain, homs, d.exponents), True


def _canonical_form(d: Datum) -> Tuple[Datum, List[str]]:
    """Equivalent datum with sector-diagonal surjective maps and trivial
    joint kernel; the constant is unchanged at every step."""
    notes: List[str] = []
    cur = d
    for _ in range(8):
        res = make_nondegenerate(cur)
        cur = res.datum
        notes.extend(res.ledger)
        why = _is_nondegenerate(cur)
        if why is not None:
            raise Degenerate(why + "; the dual form needs a nondegenerate "
                                   "datum")
        cur, dropped = _strip_sector_mixing(cur)
        if dropped:
            notes.append("dropped sector-mixing blocks; the constant agrees "
                         "with the sector-diagonal form")
        if _is_nondegenerate(cur) is None:
            return cur, notes
    raise Degenerate("canonicalization did not stabilize")


def _product_of_duals(targets: Sequence[ElementaryGroup]):
    """The product of the duals of the targets, with canonical finite
    coordinates.  Returns (group, sector offsets, finite generator columns)
    where the generator columns express each canonical finite generator in
    the concatenated per-target coordinates."""
    duals = [dual_group(t) for t in targets]
    a = sum(g.a for g in duals)
    b = sum(g.b for g in duals)
    c = sum(g.c for g in duals)
    orders: List[int] = []
    for g in duals:
        orders.extend(g.torsion)
    chain, gens = merge_finite_coordinates(orders)
    vs = Fraction(1)
    tt = Fraction(1)
    zp = Fraction(1)
    fp = Fraction(1)
    for g in duals:
        vs *= g.haar.vector_scale
        tt *= g.haar.torus_total
        zp *= g.haar.z_point
        fp *= g.haar.f_point
    group = ElementaryGroup(a=a, b=b, c=c, torsion=tuple(chain),
                            haar=HaarRecord(vs, tt, zp, fp))
    return duals, group, chain, gens


def dual_datum(d: Datum) -> Datum:
    """The annihilator-side datum: the joint embedding's annihilator inside
    the product of the dual targets, with the coordinate projections and the
    conjugate exponents.

    The input is first brought to sector-diagonal nondegenerate form (the
    constant is unchanged); Degenerate is raised when that is impossible,
    i.e. when some image stays non-open.
    """
    cur, _ = _canonical_form(d)
    targets = [h.codomain for h in cur.homs]
    duals, product, chain, gens = _product_of_duals(targets)
    taus = [adjoint_hom(h) for h in cur.homs]
    ghat = dual_group(cur.domain)

    rr = reduce(hstack, [t.RR for t in taus], []) if product.a else None
    tt = reduce(hstack, [t.TT for t in taus], []) if product.b else None
    zz = reduce(hstack, [t.ZZ for t in taus], []) if product.c else None
    ff = None
    if gens:
        cols = []
        for t in taus:
            for i in range(t.domain.k):
                cols.append([t.FF[r][i] for r in range(ghat.k)])
        ff = [[sum(gen[i] * cols[i][r] for i in range(len(gen)))
               for gen in gens] for r in range(ghat.k)]
    tau = BlockHom(product, ghat, RR=rr, TT=tt, ZZ=zz, FF=ff)
    iota = kernel_embedding(tau)

    new_homs = []
    off_a = off_b = off_c = off_f = 0
    for gd in duals:
        proj_rr = [[1 if i == off_a + r else 0 for i in range(product.a)]
                   for r in range(gd.a)] or None
        proj_tt = [[1 if i == off_b + r else 0 for i in range(product.b)]
                   for r in range(gd.b)] or None
        proj_zz = [[1 if i == off_c + r else 0 for i in range(product.c)]
                   for r in range(gd.c)] or None
        proj_ff = None
        if gd.k and gens:
            proj_ff = [[gen[off_f + r] for gen in gens] for r in range(gd.k)]
        proj = BlockHom(product, gd, RR=proj_rr, TT=proj_tt, ZZ=proj_zz,
                        FF=proj_ff)
        new_homs.append(proj.compose(iota))
        off_a += gd.a
        off_b += gd.b
        off_c += gd.c
        off_f += gd.k
    return Datum(iota.domain, new_homs, cur.conjugate_exponents())


# -- duality check ----------------------------------------------------------

@dataclass(frozen=True)
class DualityReport:
    lhs: Optional[float]
    rhs: Optional[float]
    ratio: Optional[float]
    passed: Optional[bool]
    tolerance: float
    scale: float
    primal: ConstantReport
    dual: ConstantReport
    notes: Tuple[str, ...] = ()

    def to_dict(self):
        return {
            "lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio,
            "pass": self.passed, "tolerance": self.tolerance,
            "scale": self.scale, "notes": list(self.notes),
            "primal": self.primal.to_dict(), "dual": self.dual.to_dict(),
        }


def _duality_scale(d: Datum) -> float:
    """prod_j (p^(1/p) / p'^(1/p')) ** (a_j / 2) over the target vector
    dimensions; the factor degenerates to 1 at exponent 1 or infinity."""
    out = 1.0
    for h, p in zip(d.homs, d.exponents):
        aj = h.codomain.a
        if not aj or p is None or p == 1:
            continue
        pf = float(p)
        qf = float(p / (p - 1))
        out *= (pf ** (1.0 / pf) / qf ** (1.0 / qf)) ** (aj / 2.0)
    return out


def duality_check(d: Datum, tol: float = 1e-6, **knobs) -> DualityReport:
    """Compare the constant with the scaled constant of the dual datum.

    Passes when the two finite values agree within tol relatively, or when
    both sides are infinite.  An UNKNOWN on either side is inconclusive:
    passed is None.  Keyword knobs are forwarded to bl_constant.
    """
    primal = bl_constant(d, **knobs)
    notes: List[str] = []
    try:
        dual_d = dual_datum(d)
    except Degenerate as exc:
        return DualityReport(primal.total, None, None, None, tol,
                             _duality_scale(d), primal,
                             _early_report(UNKNOWN, None, None, HEURISTIC,
                                           [str(exc)]),
                             notes=(f"dual datum unavailable: {exc}",))
    dual_rep = bl_constant(dual_d, **knobs)
    scale = _duality_scale(d)
    if primal.kind == UNKNOWN or dual_rep.kind == UNKNOWN:
        notes.append("one side is UNKNOWN; the check is inconclusive")
        return DualityReport(primal.total, None, None, None, tol, scale,
                             primal, dual_rep, tuple(notes))
    if primal.kind == INFINITE or dual_rep.kind == INFINITE:
        both = primal.kind == INFINITE and dual_rep.kind == INFINITE
        if not both:
            notes.append("finiteness disagrees between the two sides")
        return DualityReport(primal.total,
                             math.inf if dual_rep.kind == INFINITE else None,
                             None, both, tol, scale, primal, dual_rep,
                             tuple(notes))
    lhs = primal.value
    rhs = scale * dual_rep.value
    ratio = lhs / rhs if rhs else math.inf
    return DualityReport(lhs, rhs, ratio, abs(ratio - 1.0) < tol, tol, scale,
                         primal, dual_rep, tuple(notes))
