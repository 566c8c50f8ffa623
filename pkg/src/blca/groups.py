"""Elementary locally compact abelian groups R^a x T^b x Z^c x F.

F is a finite abelian group stored through its invariant factors
(d_1 | d_2 | ... , each >= 2).  A Haar measure is a positive scalar per
sector against fixed reference measures: Lebesgue on R^a, the probability
measure on T^b, counting measure on Z^c and on F.  Only products of the four
scalars enter any measure value; keeping them per sector is what lets the
four-factor split and Pontryagin duals bookkeep measures exactly.

Subgroups of the discrete-finite sector Z^c x F are `LatticeSubgroup`s: the
preimage lattice in Z^n containing the order vectors d_i e_i, held in
canonical column Hermite form so equal subgroups compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import ShapeMismatch
from .intmat import (
    det_rational,
    from_columns,
    hermite_basis,
    integer_kernel,
    mat_vec,
    matmul,
    rational_kernel,
    smith_normal_form,
    solve_integer,
    transpose,
)


def _positive_fraction(x, name: str) -> Fraction:
    q = Fraction(x)
    if q <= 0:
        raise ValueError(f"{name} must be positive")
    return q


@dataclass(frozen=True)
class HaarRecord:
    """Per-sector scale factors against the reference measures."""

    vector_scale: Fraction = Fraction(1)
    torus_total: Fraction = Fraction(1)
    z_point: Fraction = Fraction(1)
    f_point: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "vector_scale", _positive_fraction(self.vector_scale, "vector_scale"))
        object.__setattr__(self, "torus_total", _positive_fraction(self.torus_total, "torus_total"))
        object.__setattr__(self, "z_point", _positive_fraction(self.z_point, "z_point"))
        object.__setattr__(self, "f_point", _positive_fraction(self.f_point, "f_point"))

    def scalar(self) -> Fraction:
        return self.vector_scale * self.torus_total * self.z_point * self.f_point


STANDARD_HAAR = HaarRecord()


@dataclass(frozen=True)
class ElementaryGroup:
    """R^a x T^b x Z^c x F with F given by its invariant factor chain."""

    a: int = 0
    b: int = 0
    c: int = 0
    torsion: Tuple[int, ...] = ()
    haar: HaarRecord = field(default_factory=HaarRecord)

    def __post_init__(self):
        for n, v in (("a", self.a), ("b", self.b), ("c", self.c)):
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{n} must be a nonnegative integer")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def k(self) -> int:
        return len(self.torsion)

    @property
    def finite_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_compact(self) -> bool:
        return self.a == 0 and self.c == 0

    def is_discrete(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_trivial(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and not self.torsion

    def total_mass(self) -> Optional[Fraction]:
        """Total Haar mass, defined only for compact groups."""
        if not self.is_compact():
            return None
        return self.haar.scalar() * self.finite_order

    def with_haar(self, haar: HaarRecord) -> "ElementaryGroup":
        return ElementaryGroup(self.a, self.b, self.c, self.torsion, haar)

    def discrete_orders(self) -> Tuple[int, ...]:
        """Order vector of the discrete-finite sector Z^c x F (0 = free)."""
        return (0,) * self.c + self.torsion

    def describe(self) -> str:
        parts = []
        if self.a:
            parts.append(f"R^{self.a}")
        if self.b:
            parts.append(f"T^{self.b}")
        if self.c:
            parts.append(f"Z^{self.c}")
        if self.torsion:
            parts.append(" x ".join(f"Z/{d}" for d in self.torsion))
        return " x ".join(parts) if parts else "0"


def dual_group(g: ElementaryGroup) -> ElementaryGroup:
    """Pontryagin dual with Plancherel-reciprocal Haar scales.

    R^a stays, T^b and Z^c swap, F is self-dual.  Scales: the dual of a scale
    s on a sector is whatever makes the Plancherel identity hold, which works
    out to 1/s for the vector sector, 1/torus_total on the new Z sector,
    1/z_point on the new T sector and 1/(|F| f_point) on F.
    """
    h = g.haar
    dual_haar = HaarRecord(
        vector_scale=1 / h.vector_scale,
        torus_total=1 / h.z_point,
        z_point=1 / h.torus_total,
        f_point=Fraction(1) / (g.finite_order * h.f_point),
    )
    return ElementaryGroup(g.a, g.c, g.b, g.torsion, dual_haar)


class LatticeSubgroup:
    """Subgroup of Z^n with per-coordinate orders (0 = free coordinate).

    Stored as the canonical Hermite basis of the preimage lattice
    L <= Z^n with L containing every order vector d_i e_i; subgroups are equal
    iff their stored bases are equal.
    """

    __slots__ = ("orders", "basis")

    def __init__(self, orders: Sequence[int], basis: Sequence[Sequence[int]]):
        self.orders = tuple(int(d) for d in orders)
        self.basis: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in col) for col in basis)

    @property
    def n(self) -> int:
        return len(self.orders)

    @classmethod
    def from_generators(cls, orders: Sequence[int], gens: Sequence[Sequence[int]]) -> "LatticeSubgroup":
        orders = tuple(int(d) for d in orders)
        n = len(orders)
        cols = [list(g) for g in gens]
        for g in cols:
            if len(g) != n:
                raise ShapeMismatch("generator length does not match ambient rank")
        for i, d in enumerate(orders):
            if d:
                cols.append([d if j == i else 0 for j in range(n)])
        return cls(orders, hermite_basis(cols, n))

    @classmethod
    def zero(cls, orders: Sequence[int]) -> "LatticeSubgroup":
        return cls.from_generators(orders, [])

    @classmethod
    def full(cls, orders: Sequence[int]) -> "LatticeSubgroup":
        n = len(orders)
        return cls.from_generators(orders, [[1 if i == j else 0 for i in range(n)] for j in range(n)])

    def key(self):
        return (self.orders, self.basis)

    def __eq__(self, other):
        return isinstance(other, LatticeSubgroup) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LatticeSubgroup(orders={self.orders}, basis={[list(c) for c in self.basis]})"

    # -- structure ---------------------------------------------------------

    @property
    def modular_count(self) -> int:
        return sum(1 for d in self.orders if d)

    def lattice_rank(self) -> int:
        return len(self.basis)

    def free_rank(self) -> int:
        return len(self.basis) - self.modular_count

    def structure(self):
        """Adapted generators: (free_cols, torsion_cols, torsion_orders).

        torsion_orders is an ascending divisibility chain with entries >= 2;
        the subgroup is the direct sum of Z generated by each free column and
        Z/s_i generated by each torsion column.
        """
        b = [list(col) for col in self.basis]
        r = len(b)
        n = self.n
        mod_idx = [i for i, d in enumerate(self.orders) if d]
        if r == 0:
            return [], [], []
        bmat = from_columns(b, n)
        rel_cols = []
        for i in mod_idx:
            target = [self.orders[i] if j == i else 0 for j in range(n)]
            sol = solve_integer(bmat, target)
            if sol is None:
                raise RuntimeError("order vector missing from stored lattice")
            rel_cols.append(sol)
        if not rel_cols:
            return [list(c) for c in self.basis], [], []
        rel = from_columns(rel_cols, r)
        u, d, _ = smith_normal_form(rel)
        # new generators are the columns of B U^{-1}; invert U exactly
        uinv = _unimodular_inverse(u)
        newgens = matmul(bmat, uinv)
        cols = transpose(newgens)
        k = len(rel_cols)
        diag = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
        free_cols = [list(cols[i]) for i in range(k, r)]
        torsion_cols = []
        torsion_orders = []
        for i in range(k):
            s = diag[i] if i < len(diag) else 0
            if s == 0:
                raise RuntimeError("order relations must have full rank")
            if s > 1:
                torsion_cols.append(list(cols[i]))
                torsion_orders.append(s)
        return free_cols, torsion_cols, torsion_orders

    def finite_size(self) -> int:
        _, _, tors = self.structure()
        out = 1
        for s in tors:
            out *= s
        return out

    def contains(self, vec: Sequence[int]) -> bool:
        if not self.basis:
            return not any(vec)
        return solve_integer(from_columns(self.basis, self.n), list(vec)) is not None

    def join(self, other: "LatticeSubgroup") -> "LatticeSubgroup":
        if self.orders != other.orders:
            raise ShapeMismatch("ambients differ")
        return LatticeSubgroup.from_generators(self.orders, list(self.basis) + list(other.basis))

    def meet(self, other: "LatticeSubgroup") -> "LatticeSubgroup":
        if self.orders != other.orders:
            raise ShapeMismatch("ambients differ")
        if not self.basis or not other.basis:
            return LatticeSubgroup.from_generators(self.orders, [])
        a = from_columns(self.basis, self.n)
        bneg = [[-x for x in row] for row in from_columns(other.basis, self.n)]
        stacked = [ra + rb for ra, rb in zip(a, bneg)]
        ker = integer_kernel(stacked)
        gens = [mat_vec(a, k[: len(self.basis)]) for k in ker]
        return LatticeSubgroup.from_generators(self.orders, gens)

    def image_under(self, matrix: Sequence[Sequence[int]], target_orders: Sequence[int]) -> "LatticeSubgroup":
        """Image under an integer matrix into an ambient with target_orders."""
        gens = [mat_vec(matrix, col) for col in self.basis]
        return LatticeSubgroup.from_generators(target_orders, gens)

    def index_in_full(self) -> Optional[int]:
        """[Z^n : L] when the preimage lattice has full rank, else None."""
        if len(self.basis) != self.n:
            return None
        return abs(int(det_rational(from_columns(self.basis, self.n))))


def _unimodular_inverse(u):
    n = len(u)
    if n == 0:
        return []
    aug = [[Fraction(x) for x in row] for row in u]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = aug[col][col]
        aug[col] = [x / f for x in aug[col]]
        inv[col] = [x / f for x in inv[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
    out = [[int(x) for x in row] for row in inv]
    return out


def saturate_columns(cols: Sequence[Sequence[int]], n: int) -> List[List[int]]:
    """Canonical basis of span_Q(cols) intersected with Z^n."""
    if not cols:
        return []
    covectors = rational_kernel(transpose(from_columns(cols, n)))
    if not covectors:
        return hermite_basis([[1 if i == j else 0 for i in range(n)] for j in range(n)], n)
    rows = []
    for cov in covectors:
        denom = 1
        for x in cov:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
        rows.append([int(x * denom) for x in cov])
    return hermite_basis(integer_kernel(rows), n)
