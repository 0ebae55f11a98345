"""Laurent polynomials and rational series with denominators prod (1 - t^d).

Everything here is exact: scalars are :class:`fractions.Fraction` and no
coefficient ever passes through a float.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "LaurentPolynomial",
    "DenominatorSpec",
    "RationalSeries",
    "lp_arith",
    "lp_scale",
    "lp_shift",
    "poly_divmod",
    "series_expand",
    "series_combine",
    "count_representations",
]


class LaurentPolynomial:
    """A finite sum of terms c * t^k with rational c and integer k.

    Instances are immutable and hashable.  Zero coefficients are never stored.

        >>> p = LaurentPolynomial({0: 1, 1: 1}) + LaurentPolynomial({1: -1})
        >>> p
        LaurentPolynomial({0: 1})
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] | None = None):
        acc: dict[int, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                k = int(k)
                acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict[int, Fraction]) -> LaurentPolynomial:
        obj = cls.__new__(cls)
        obj._terms = {k: terms[k] for k in sorted(terms) if terms[k] != 0}
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff, exponent: int = 0) -> LaurentPolynomial:
        return cls({exponent: coeff})

    @classmethod
    def one(cls) -> LaurentPolynomial:
        return cls({0: 1})

    # -- queries ---------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exponent(self) -> int | None:
        return next(iter(self._terms), None)

    @property
    def max_exponent(self) -> int | None:
        return next(reversed(self._terms), None) if self._terms else None

    def coeff(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def items(self) -> list[tuple[int, Fraction]]:
        """Terms as ``(exponent, coefficient)`` pairs in ascending exponent order."""
        return list(self._terms.items())

    def exponents(self) -> list[int]:
        return list(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def value_at_one(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return not self._terms or self.min_exponent >= 0

    def denominator_lcm(self) -> int:
        return math.lcm(*(c.denominator for c in self._terms.values())) if self._terms else 1

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return LaurentPolynomial._from_clean(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                acc[i + j] = acc.get(i + j, 0) + a * b
        return LaurentPolynomial._from_clean(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPolynomial.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> LaurentPolynomial:
        c = Fraction(c)
        if c == 0:
            return LaurentPolynomial()
        return LaurentPolynomial._from_clean({k: v * c for k, v in self._terms.items()})

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by t^k."""
        return LaurentPolynomial._from_clean({e + k: c for e, c in self._terms.items()})

    # -- protocol --------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{k}: {c}" for k, c in self._terms.items())
        return f"LaurentPolynomial({{{body}}})"


def _coerce(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPolynomial({0: x})
    return NotImplemented


def lp_arith(a: LaurentPolynomial, b: LaurentPolynomial, op: str) -> LaurentPolynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def lp_scale(a: LaurentPolynomial, c) -> LaurentPolynomial:
    return a.scale(c)


def lp_shift(a: LaurentPolynomial, k: int) -> LaurentPolynomial:
    return a.shift(k)


def poly_divmod(a: LaurentPolynomial, b: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """Euclidean division of ordinary polynomials (no negative exponents)."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if not (a.is_polynomial() and b.is_polynomial()):
        raise ValueError("poly_divmod needs polynomials without negative exponents")
    db = b.max_exponent
    lead = b.coeff(db)
    rem = dict(a._terms)
    quot: dict[int, Fraction] = {}
    while rem:
        da = max(rem)
        if da < db:
            break
        c = rem[da] / lead
        quot[da - db] = c
        for k, v in b._terms.items():
            e = k + da - db
            nv = rem.get(e, 0) - c * v
            if nv:
                rem[e] = nv
            else:
                rem.pop(e, None)
    return LaurentPolynomial._from_clean(quot), LaurentPolynomial._from_clean(rem)


class DenominatorSpec:
    """Multiset of grading degrees d_1, ..., d_n, all >= 1.

    The distinct values with their multiplicities are available through
    :attr:`multiplicities`; the empty spec stands for the polynomial case.
    """

    __slots__ = ("degrees", "_mult")

    def __init__(self, degrees: Iterable[int] = ()):
        degrees = tuple(sorted(int(d) for d in degrees))
        if any(d < 1 for d in degrees):
            raise ValueError(f"denominator degrees must be >= 1, got {degrees}")
        self.degrees = degrees
        self._mult = dict(sorted(Counter(degrees).items()))

    @classmethod
    def from_multiplicities(cls, mult: Mapping[int, int]) -> DenominatorSpec:
        return cls(d for d, a in mult.items() for _ in range(a))

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(self._mult)

    @property
    def values(self) -> list[int]:
        return list(self._mult)

    @property
    def coprime_or_equal(self) -> bool:
        vals = self.values
        return all(math.gcd(a, b) == 1 for i, a in enumerate(vals) for b in vals[i + 1 :])

    @property
    def period(self) -> int:
        return math.lcm(*self._mult) if self._mult else 1

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def polynomial(self) -> LaurentPolynomial:
        """The product of all factors 1 - t^d."""
        out = LaurentPolynomial.one()
        for d in self.degrees:
            out = out * LaurentPolynomial({0: 1, d: -1})
        return out

    def union(self, other: DenominatorSpec) -> DenominatorSpec:
        """Least common multiple: per value the larger multiplicity."""
        mult = dict(self._mult)
        for d, a in other._mult.items():
            mult[d] = max(mult.get(d, 0), a)
        return DenominatorSpec.from_multiplicities(mult)

    def contains(self, other: DenominatorSpec) -> bool:
        return all(self._mult.get(d, 0) >= a for d, a in other._mult.items())

    def difference(self, other: DenominatorSpec) -> DenominatorSpec:
        if not self.contains(other):
            raise ValueError(f"{other.degrees} is not a sub-multiset of {self.degrees}")
        mult = {d: a - other._mult.get(d, 0) for d, a in self._mult.items()}
        return DenominatorSpec.from_multiplicities(mult)

    def __eq__(self, other):
        if not isinstance(other, DenominatorSpec):
            return NotImplemented
        return self.degrees == other.degrees

    def __hash__(self):
        return hash(self.degrees)

    def __repr__(self):
        return f"DenominatorSpec({list(self.degrees)})"


@dataclass(frozen=True)
class RationalSeries:
    """numerator(t) / prod_i (1 - t^{d_i}), read as a Laurent series in t.

    The denominator is kept verbatim: common factors with the numerator are
    never cancelled.
    """

    numerator: LaurentPolynomial
    denominator: DenominatorSpec = DenominatorSpec()

    def __post_init__(self):
        if not isinstance(self.numerator, LaurentPolynomial):
            object.__setattr__(self, "numerator", LaurentPolynomial(self.numerator))
        if not isinstance(self.denominator, DenominatorSpec):
            object.__setattr__(self, "denominator", DenominatorSpec(self.denominator))

    @classmethod
    def block(cls, degrees: Iterable[int], coeff=1, shift: int = 0) -> RationalSeries:
        """coeff * t^shift / prod_{d in degrees} (1 - t^d)."""
        return cls(LaurentPolynomial({shift: coeff}), DenominatorSpec(degrees))

    @property
    def valuation(self) -> int:
        """Smallest exponent that can carry a nonzero coefficient."""
        v = self.numerator.min_exponent
        return 0 if v is None else v

    def expand(self, N: int) -> list[Fraction]:
        return series_expand(self, N)

    def coefficient(self, n: int) -> Fraction:
        if n < self.valuation:
            return Fraction(0)
        return series_expand(self, n)[-1]

    def over(self, spec: DenominatorSpec) -> RationalSeries:
        """The same series rewritten over a larger denominator spec."""
        extra = spec.difference(self.denominator)
        return RationalSeries(self.numerator * extra.polynomial(), spec)

    def scale(self, c) -> RationalSeries:
        return RationalSeries(self.numerator.scale(c), self.denominator)

    def shift(self, k: int) -> RationalSeries:
        return RationalSeries(self.numerator.shift(k), self.denominator)

    def __add__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return series_combine(self, other, "add")

    def __sub__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return series_combine(self, other, "sub")

    def __neg__(self):
        return self.scale(-1)

    def cross_equal(self, other: RationalSeries) -> bool:
        """Exact equality as rational functions, by cross multiplication."""
        lhs = self.numerator * other.denominator.polynomial()
        rhs = other.numerator * self.denominator.polynomial()
        return lhs == rhs


def series_expand(P: RationalSeries, N: int) -> list[Fraction]:
    """Coefficients f_v, ..., f_N of P where v is its valuation.

    Each factor 1/(1 - t^d) is applied in place through f'_h = f'_{h-d} + f_h.
    """
    v = P.valuation
    if N < v:
        raise ValueError(f"N = {N} is below the valuation {v}")
    scale = P.numerator.denominator_lcm()
    size = N - v + 1
    buf = [0] * size
    for k, c in P.numerator.items():
        if k <= N:
            buf[k - v] = int(c * scale)
    for d in P.denominator.degrees:
        for i in range(d, size):
            buf[i] += buf[i - d]
    return [Fraction(x, scale) for x in buf]


def series_combine(P1: RationalSeries, P2: RationalSeries, op: str) -> RationalSeries:
    """P1 + P2 or P1 - P2 over the least common denominator spec."""
    if op not in ("add", "sub"):
        raise ValueError(f"unknown operation {op!r}")
    spec = P1.denominator.union(P2.denominator)
    a = P1.over(spec).numerator
    b = P2.over(spec).numerator
    return RationalSeries(a + b if op == "add" else a - b, spec)


def count_representations(n: int, D: DenominatorSpec | Iterable[int]) -> int:
    """Number of ways to write n = sum_i a_i d_i with all a_i >= 0.

    Plain recursive enumeration over the multiplier of each degree; kept
    free of any series machinery so it can serve as an independent check.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    degrees = tuple(D.degrees if isinstance(D, DenominatorSpec) else sorted(D))

    def rec(m: int, i: int) -> int:
        if i == len(degrees) - 1:
            return 1 if m % degrees[i] == 0 else 0
        return sum(rec(m - a * degrees[i], i + 1) for a in range(m // degrees[i] + 1))

    if not degrees:
        return 1 if n == 0 else 0
    return rec(n, 0)
