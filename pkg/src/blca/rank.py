"""Growth indices and rank-condition checkers over Q.

The discrete and vector sectors control finiteness through inequalities of
the form dim W <= sum_j dim(A_j W) / p_j over all subspaces W.  There is no
known terminating decision procedure over the full subspace lattice once the
kernels generate an infinite modular lattice, so the checker is three-valued:
FAILS carries an exact witness, HOLDS_CERTIFIED is only claimed under a
documented completeness criterion, and everything else is LIKELY_HOLDS with
the search statistics attached.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import ShapeMismatch
from .groups import ElementaryGroup, LatticeSubgroup, saturate_columns
from .homs import ClosedSubgroup, Datum, annihilator_lattice, parse_exponent
from .intmat import from_columns, matmul, rational_kernel, rational_rank

FAILS = "FAILS"
HOLDS_CERTIFIED = "HOLDS_CERTIFIED"
LIKELY_HOLDS = "LIKELY_HOLDS"


@dataclass(frozen=True)
class RankVerdict:
    status: str
    witness: Optional[Tuple[Tuple[int, ...], ...]] = None
    evidence: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAILS

    def __bool__(self):
        return self.ok


def growth_index(g: Union[ElementaryGroup, LatticeSubgroup, ClosedSubgroup]) -> int:
    """Rank of the noncompact part: a + c for a group, free rank for subgroups."""
    if isinstance(g, ElementaryGroup):
        return g.a + g.c
    if isinstance(g, LatticeSubgroup):
        return g.free_rank()
    if isinstance(g, ClosedSubgroup):
        return g.noncompact_rank()
    raise TypeError(f"growth_index does not apply to {type(g).__name__}")


# -- subspace bookkeeping ---------------------------------------------------
# Subspaces of Q^n are kept as canonical saturated Hermite bases (tuples of
# integer columns) so they can be dedup'd in sets and compared for reporting.

def _intify(vec) -> List[int]:
    denom = 1
    for x in vec:
        f = Fraction(x)
        denom = denom * f.denominator // gcd(denom, f.denominator)
    return [int(Fraction(x) * denom) for x in vec]


def _canon(cols, n) -> Tuple[Tuple[int, ...], ...]:
    cleaned = [_intify(c) for c in cols if any(Fraction(x) != 0 for x in c)]
    if not cleaned:
        return ()
    return tuple(tuple(c) for c in saturate_columns(cleaned, n))


def _sum_space(s1, s2, n):
    return _canon(list(s1) + list(s2), n)


def _meet_space(s1, s2, n):
    if not s1 or not s2:
        return ()
    stacked = from_columns([list(c) for c in s1] + [[-x for x in c] for c in s2], n)
    vecs = []
    for coeff in rational_kernel(stacked):
        alpha = coeff[: len(s1)]
        vecs.append([sum(Fraction(s1[i][r]) * alpha[i] for i in range(len(s1)))
                     for r in range(n)])
    return _canon(vecs, n)


def _full_space(n):
    return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))


def _space_dim(s) -> int:
    return len(s)


def _space_contains(big, small, n) -> bool:
    if not small:
        return True
    if not big:
        return False
    return _space_dim(_sum_space(big, small, n)) == _space_dim(big)


def _normalize_maps(maps) -> List[List[List[Fraction]]]:
    out = []
    for m in maps:
        out.append([[Fraction(x) for x in row] for row in m])
    return out


def _deficit(space, maps, recips, n) -> Fraction:
    """dim W - sum_j dim(A_j W)/p_j; positive means the inequality fails at W."""
    if not space:
        return Fraction(0)
    bmat = from_columns([list(c) for c in space], n)
    total = Fraction(len(space))
    for a_j, r in zip(maps, recips):
        if r == 0:
            continue
        img = matmul(a_j, bmat)
        total -= r * rational_rank(img)
    return total


def _witness_sort_key(space):
    return (len(space), tuple(tuple(c) for c in space))


def rank_condition(maps: Sequence[Sequence[Sequence]], p: Sequence,
                   depth: int = 6, samples: int = 1000, seed: int = 0,
                   dim: Optional[int] = None) -> RankVerdict:
    """Decide dim W <= sum_j dim(A_j W)/p_j for all subspaces W of Q^n.

    Search: (i) the sum/intersection closure of {0, Q^n, ker A_j} up to the
    given depth, (ii) seeded random subspaces with small integer bases,
    (iii) a scaling probe reporting the worst deficit seen, which is the
    blow-up exponent a gaussian concentration along that subspace realizes.
    """
    maps = _normalize_maps(maps)
    recips = [Fraction(0) if q is None else 1 / q for q in (parse_exponent(v) for v in p)]
    if len(maps) != len(recips):
        raise ShapeMismatch("one exponent per map")
    widths = {len(row) for m in maps for row in m}
    if len(widths) > 1:
        raise ShapeMismatch("maps must share their domain dimension")
    n = dim if dim is not None else (widths.pop() if widths else 0)
    if n == 0:
        return RankVerdict(HOLDS_CERTIFIED, None,
                           {"reason": "zero-dimensional domain has no nonzero subspaces"})

    kernels = []
    for m in maps:
        if not m:
            kernels.append(_full_space(n))
        else:
            kernels.append(_canon(rational_kernel(m), n))

    closure: List[tuple] = []
    seen = set()
    for s in [(), _full_space(n)] + kernels:
        if s not in seen:
            seen.add(s)
            closure.append(s)
    terminated = True
    rounds = 0
    frontier = list(closure)
    for rounds in range(1, depth + 1):
        fresh: List[tuple] = []
        base = list(closure)
        for s in frontier:
            for t in base:
                if s == t:
                    continue
                for cand in (_sum_space(s, t, n), _meet_space(s, t, n)):
                    if cand not in seen:
                        seen.add(cand)
                        fresh.append(cand)
        if not fresh:
            break
        closure.extend(fresh)
        frontier = fresh
        if len(closure) > 2000:
            terminated = False
            break
    else:
        terminated = False  # depth exhausted while new subspaces kept appearing

    deficits = [(s, _deficit(s, maps, recips, n)) for s in closure]
    worst = max((d for _, d in deficits), default=Fraction(0))
    violations = [s for s, d in deficits if d > 0]
    evidence: Dict[str, object] = {
        "closure_size": len(closure),
        "closure_terminated": terminated,
        "closure_rounds": rounds,
        "max_deficit": worst,
        "samples": 0,
    }
    if violations:
        witness = min(violations, key=_witness_sort_key)
        return RankVerdict(FAILS, witness, evidence)

    rng = random.Random(seed)
    sampled_violations = []
    for _ in range(samples):
        w = rng.randint(1, n)
        cols = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(w)]
        s = _canon(cols, n)
        if not s:
            continue
        d = _deficit(s, maps, recips, n)
        if d > worst:
            worst = d
        if d > 0:
            sampled_violations.append(s)
    evidence["samples"] = samples
    evidence["max_deficit"] = worst
    if sampled_violations:
        witness = min(sampled_violations, key=_witness_sort_key)
        return RankVerdict(FAILS, witness, evidence)

    chain = _kernels_chain(kernels, n)
    if terminated and (n <= 3 or len(maps) <= 3 or chain):
        evidence["certificate"] = (
            f"closure of kernel lattice complete (n={n}, J={len(maps)}, chain={chain})")
        return RankVerdict(HOLDS_CERTIFIED, None, evidence)
    evidence["note"] = "no violation found; completeness criterion not met"
    return RankVerdict(LIKELY_HOLDS, None, evidence)


def _kernels_chain(kernels, n) -> bool:
    by_dim = sorted(kernels, key=_space_dim)
    for small, big in zip(by_dim, by_dim[1:]):
        if not _space_contains(big, small, n):
            return False
    return True


def homogeneity_check(maps: Sequence[Sequence[Sequence]], p: Sequence,
                      dim: Optional[int] = None) -> bool:
    """Exact test of dim(domain) = sum_j rank(A_j)/p_j."""
    maps = _normalize_maps(maps)
    recips = [Fraction(0) if q is None else 1 / q for q in (parse_exponent(v) for v in p)]
    n = dim
    if n is None:
        n = 0
        for m in maps:
            if m:
                n = len(m[0])
                break
    total = Fraction(0)
    for a_j, r in zip(maps, recips):
        total += r * rational_rank(a_j)
    return Fraction(n) == total


def dual_rank_condition(torus_datum: Datum, depth: int = 6, samples: int = 1000,
                        seed: int = 0) -> RankVerdict:
    """Rank condition for the annihilator side of a pure-torus datum.

    The domain embeds in the product of the targets through its graph; the
    annihilator of that image in the product character lattice carries the
    coordinate projections, and the condition is the plain rank condition for
    those projections with the conjugate exponents.
    """
    g = torus_datum.domain
    if g.a or g.c or g.k:
        raise ShapeMismatch("dual rank condition expects a pure-torus domain")
    for h in torus_datum.homs:
        t = h.codomain
        if t.a or t.c or t.k:
            raise ShapeMismatch("dual rank condition expects pure-torus targets")
    b = g.b
    graph_cols = []
    for i in range(b):
        col = []
        for h in torus_datum.homs:
            col.extend(h.TT[r][i] for r in range(h.codomain.b))
        graph_cols.append(col)
    total_b = sum(h.codomain.b for h in torus_datum.homs)
    ann = annihilator_lattice(from_columns(graph_cols, total_b), (0,) * b)
    basis = [list(c) for c in ann.basis]
    r = len(basis)
    if r == 0:
        return RankVerdict(HOLDS_CERTIFIED, None,
                           {"reason": "trivial annihilator", "annihilator_rank": 0})
    proj_maps = []
    off = 0
    for h in torus_datum.homs:
        bj = h.codomain.b
        proj_maps.append([[Fraction(basis[i][off + s]) for i in range(r)] for s in range(bj)])
        off += bj
    verdict = rank_condition(proj_maps, torus_datum.conjugate_exponents(),
                             depth=depth, samples=samples, seed=seed)
    evidence = dict(verdict.evidence)
    evidence["annihilator_rank"] = r
    evidence["annihilator_basis"] = tuple(tuple(c) for c in ann.basis)
    return RankVerdict(verdict.status, verdict.witness, evidence)
