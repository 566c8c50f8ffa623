"""Exact positive values of the form prod_p p^(e_p) with rational exponents.

The subgroup supremum on finite groups produces values like
(|H| m) / prod_j (|H_j| m_j)^(1/p_j): products of positive rationals raised to
rational powers.  Stored as a prime -> exponent map these multiply, divide and
power exactly, and two values compare exactly: the sign of
sum_p n_p log p (n_p integers, not all zero) is the sign of
prod_{n_p>0} p^{n_p} - prod_{n_p<0} p^{-n_p}, a pure integer comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Union

Rationalish = Union[int, Fraction, "ExactValue"]


def _factor(n: int) -> Dict[int, int]:
    if n <= 0:
        raise ValueError("only positive integers factor here")
    out: Dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class ExactValue:
    """A positive real number represented exactly as a product of rational
    powers of primes.  Immutable."""

    __slots__ = ("_exp",)

    def __init__(self, exponents: Dict[int, Fraction] | None = None):
        self._exp = {p: e for p, e in (exponents or {}).items() if e != 0}

    @classmethod
    def one(cls) -> "ExactValue":
        return cls()

    @classmethod
    def of(cls, q: Rationalish) -> "ExactValue":
        if isinstance(q, ExactValue):
            return q
        q = Fraction(q)
        if q <= 0:
            raise ValueError("ExactValue is for positive numbers")
        exp: Dict[int, Fraction] = {}
        for p, e in _factor(q.numerator).items():
            exp[p] = exp.get(p, Fraction(0)) + e
        for p, e in _factor(q.denominator).items():
            exp[p] = exp.get(p, Fraction(0)) - e
        return cls(exp)

    def __mul__(self, other: Rationalish) -> "ExactValue":
        other = ExactValue.of(other)
        exp = dict(self._exp)
        for p, e in other._exp.items():
            exp[p] = exp.get(p, Fraction(0)) + e
        return ExactValue(exp)

    __rmul__ = __mul__

    def __truediv__(self, other: Rationalish) -> "ExactValue":
        other = ExactValue.of(other)
        exp = dict(self._exp)
        for p, e in other._exp.items():
            exp[p] = exp.get(p, Fraction(0)) - e
        return ExactValue(exp)

    def __pow__(self, k) -> "ExactValue":
        k = Fraction(k)
        return ExactValue({p: e * k for p, e in self._exp.items()})

    def is_rational(self) -> bool:
        return all(e.denominator == 1 for e in self._exp.values())

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational value")
        out = Fraction(1)
        for p, e in self._exp.items():
            out *= Fraction(p) ** int(e)
        return out

    def __float__(self) -> float:
        return math.exp(sum(float(e) * math.log(p) for p, e in self._exp.items()))

    def _cmp(self, other: Rationalish) -> int:
        other = ExactValue.of(other)
        diff: Dict[int, Fraction] = dict(self._exp)
        for p, e in other._exp.items():
            diff[p] = diff.get(p, Fraction(0)) - e
        diff = {p: e for p, e in diff.items() if e != 0}
        if not diff:
            return 0
        scale = 1
        for e in diff.values():
            scale = scale * e.denominator // math.gcd(scale, e.denominator)
        pos = neg = 1
        for p, e in diff.items():
            n = int(e * scale)
            if n > 0:
                pos *= p**n
            else:
                neg *= p**(-n)
        return (pos > neg) - (pos < neg)

    def __eq__(self, other) -> bool:
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash(tuple(sorted(self._exp.items())))

    def __str__(self) -> str:
        if not self._exp:
            return "1"
        parts = []
        for p in sorted(self._exp):
            e = self._exp[p]
            parts.append(str(p) if e == 1 else f"{p}^({e})")
        return " * ".join(parts)

    def __repr__(self) -> str:
        return f"ExactValue({self})"
