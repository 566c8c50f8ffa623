"""Gaussian constant for the vector sector, plus the exact finiteness test.

On R^a the supremum in the inequality is attained on centred gaussians, so
the constant is a finite-dimensional optimization over positive-definite
matrices M_j:

    obj(M) = prod_j det(M_j)^{1/2 p_j} / det(sum_j s_j^T M_j s_j / p_j)^{1/2}

maximized by cyclic fixed-point updates M_j <- (s_j Q^{-1} s_j^T)^{-1}, the
stationarity equation of obj in the j-th coordinate.  In eigencoordinates of
the coordinate problem the update reads y <- 1 + y/p_j, which walks every
eigenvalue toward the unique coordinate maximum p_j/(p_j - 1) without crossing
it, so each update is monotone ascent; that is the invariant the tests lean
on.  Divergence of the ascent is reported numerically (DIVERGED) but never
used as a certificate; certified infiniteness comes from the exact rational
checks in bcct_finiteness.

Everything here works in floats; objectives are tracked in log scale so that
near-divergent instances do not overflow before the threshold check fires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ShapeMismatch, SingularDenominator
from .homs import Datum
from .rank import RankVerdict, homogeneity_check, rank_condition

CONVERGED = "CONVERGED"
DIVERGED = "DIVERGED"
BUDGET = "BUDGET"

OBJECTIVE_CEILING = 1e8
CONDITION_CEILING = 1e12


def _vector_blocks(d: Datum) -> List[np.ndarray]:
    mats = []
    for h in d.homs:
        mats.append(np.array([[float(x) for x in row] for row in h.RR], dtype=float).reshape(
            h.codomain.a, h.domain.a))
    return mats


def _haar_scale_factor(d: Datum) -> float:
    out = float(d.domain.haar.scalar())
    for h, r in zip(d.homs, d.reciprocal_exponents()):
        out *= float(h.codomain.haar.scalar()) ** (-float(r))
    return out


class GaussianPoint:
    """One covariance-like matrix per target, symmetric positive definite."""

    __slots__ = ("mats",)

    def __init__(self, mats: Sequence):
        self.mats = []
        for m in mats:
            arr = np.array(m, dtype=float)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise ShapeMismatch("gaussian matrices must be square")
            if arr.size and np.max(np.abs(arr - arr.T)) > 1e-12:
                raise ShapeMismatch("gaussian matrices must be symmetric")
            arr = 0.5 * (arr + arr.T)
            if arr.size and np.min(np.linalg.eigvalsh(arr)) <= 0:
                raise ShapeMismatch("gaussian matrices must be positive definite")
            self.mats.append(arr)

    @classmethod
    def identity(cls, dims: Sequence[int]) -> "GaussianPoint":
        return cls([np.eye(n) for n in dims])

    def __iter__(self):
        return iter(self.mats)

    def __repr__(self):
        return f"GaussianPoint(dims={[m.shape[0] for m in self.mats]})"


def _log_objective(sigmas: Sequence[np.ndarray], recips: Sequence[float],
                   mats: Sequence[np.ndarray], a: int) -> Tuple[float, float]:
    """(log objective, condition of the denominator matrix)."""
    q = np.zeros((a, a))
    num = 0.0
    for s, r, m in zip(sigmas, recips, mats):
        if r == 0.0:
            continue
        q += r * (s.T @ m @ s)
        if m.size:
            sign, ld = np.linalg.slogdet(m)
            if sign <= 0:
                raise SingularDenominator("covariance matrix not positive definite")
            num += 0.5 * r * ld
    if a == 0:
        return num, 1.0
    sign, ld = np.linalg.slogdet(q)
    if sign <= 0:
        raise SingularDenominator("denominator matrix is singular")
    cond = float(np.linalg.cond(q))
    return num - 0.5 * ld, cond


def gaussian_objective(d: Datum, pt: GaussianPoint) -> float:
    """The gaussian ratio at pt, in the standard Lebesgue normalization.

    Haar scales on the datum are deliberately not applied here; the reported
    constant in gaussian_bl_constant carries them.
    """
    sigmas = _vector_blocks(d)
    recips = [float(r) for r in d.reciprocal_exponents()]
    if len(pt.mats) != len(sigmas):
        raise ShapeMismatch("one matrix per map")
    for s, m in zip(sigmas, pt.mats):
        if m.shape[0] != s.shape[0]:
            raise ShapeMismatch("matrix size must match the target dimension")
    log_obj, _ = _log_objective(sigmas, recips, pt.mats, d.domain.a)
    return math.exp(log_obj) if log_obj < 700 else math.inf


@dataclass(frozen=True)
class GaussianResult:
    value: float
    status: str
    sweeps: int
    point: Optional[GaussianPoint]
    diagnosis: str = ""

    def __repr__(self):
        return f"GaussianResult({self.status}, value={self.value:.12g}, sweeps={self.sweeps})"


def _ascend(sigmas, recips, a, init_mats, tol, budget):
    mats = [m.copy() for m in init_mats]
    try:
        log_obj, cond = _log_objective(sigmas, recips, mats, a)
    except SingularDenominator as exc:
        return GaussianResult(math.inf, DIVERGED, 0, None, str(exc))
    log_ceiling = math.log(OBJECTIVE_CEILING)
    for sweep in range(1, budget + 1):
        q = np.zeros((a, a))
        for s, r, m in zip(sigmas, recips, mats):
            if r:
                q += r * (s.T @ m @ s)
        for j, (s, r) in enumerate(zip(sigmas, recips)):
            if r == 0.0 or s.shape[0] == 0:
                continue
            try:
                qinv = np.linalg.inv(q)
                middle = s @ qinv @ s.T
                new_m = np.linalg.inv(middle)
            except np.linalg.LinAlgError:
                return GaussianResult(math.inf, DIVERGED, sweep, None,
                                      "singular matrix inside the coordinate update")
            new_m = 0.5 * (new_m + new_m.T)
            q += r * (s.T @ (new_m - mats[j]) @ s)
            mats[j] = new_m
        try:
            new_log_obj, cond = _log_objective(sigmas, recips, mats, a)
        except SingularDenominator as exc:
            return GaussianResult(math.inf, DIVERGED, sweep, None, str(exc))
        if new_log_obj > log_ceiling:
            return GaussianResult(math.inf, DIVERGED, sweep, None,
                                  f"objective passed {OBJECTIVE_CEILING:g}")
        if cond > CONDITION_CEILING:
            return GaussianResult(math.inf, DIVERGED, sweep, None,
                                  f"denominator condition passed {CONDITION_CEILING:g}")
        drift = abs(math.exp(new_log_obj) - math.exp(log_obj)) if new_log_obj < 700 else math.inf
        log_obj = new_log_obj
        if drift < tol:
            return GaussianResult(math.exp(log_obj), CONVERGED, sweep,
                                  GaussianPoint([m for m in mats]))
    return GaussianResult(math.exp(log_obj) if log_obj < 700 else math.inf,
                          BUDGET, budget, GaussianPoint([m for m in mats]),
                          "iteration budget exhausted")


def gaussian_bl_constant(d: Datum, tol: float = 1e-10, budget: int = 100000,
                         restarts: int = 5, seed: int = 0) -> GaussianResult:
    """Best gaussian value over an identity start plus seeded SPD restarts.

    The reported value includes the datum's Haar scales (domain scale times
    prod_j target_scale^{-1/p_j}).  DIVERGED reports infinity and wins over
    everything; otherwise the best final value decides, with BUDGET status if
    the best run did not settle.
    """
    sigmas = _vector_blocks(d)
    recips = [float(r) for r in d.reciprocal_exponents()]
    a = d.domain.a
    dims = [s.shape[0] for s in sigmas]
    scale = _haar_scale_factor(d)
    runs = [GaussianPoint.identity(dims).mats]
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        mats = []
        for n in dims:
            g = rng.standard_normal((n, n))
            mats.append(g @ g.T + 0.1 * np.eye(n))
        runs.append(mats)
    best: Optional[GaussianResult] = None
    for init in runs:
        res = _ascend(sigmas, recips, a, init, tol, budget)
        if res.status == DIVERGED:
            return GaussianResult(math.inf, DIVERGED, res.sweeps, None, res.diagnosis)
        if best is None or res.value > best.value or (
                res.value == best.value and res.status == CONVERGED and best.status != CONVERGED):
            best = res
    assert best is not None
    return GaussianResult(best.value * scale, best.status, best.sweeps, best.point,
                          best.diagnosis)


@dataclass(frozen=True)
class BcctVerdict:
    finite: bool
    certified: bool
    homogeneous: bool
    rank: RankVerdict
    detail: str = ""

    def __bool__(self):
        return self.finite


def bcct_finiteness(d: Datum, depth: int = 6, samples: int = 1000, seed: int = 0) -> BcctVerdict:
    """Exact finiteness test for a vector datum: homogeneity plus the rank
    condition on the (rational) vector blocks.

    finite=True is certified only when the rank search earned its
    certification; a FAILS rank verdict or a homogeneity mismatch certifies
    infiniteness outright.
    """
    mats = [h.RR for h in d.homs]
    a = d.domain.a
    homog = homogeneity_check(mats, d.exponents, dim=a)
    rank = rank_condition(mats, d.exponents, depth=depth, samples=samples, seed=seed, dim=a)
    if not homog:
        return BcctVerdict(False, True, False, rank, "homogeneity fails: the scaling "
                           "degree of the two sides differs, so no finite constant exists")
    if rank.status == "FAILS":
        return BcctVerdict(False, True, True, rank,
                           "rank condition fails at the witness subspace")
    certified = rank.status == "HOLDS_CERTIFIED"
    return BcctVerdict(True, certified, True, rank,
                       "homogeneity and rank condition hold" if certified else
                       "homogeneity holds; rank condition searched without violation")
