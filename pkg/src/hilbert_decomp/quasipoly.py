"""Periodic functions, quasipolynomials and the constructions built on them.

A quasipolynomial here is always a function of the series index n: for a
rational series with coefficients f_n it is the q with f_n = q(n) for every
n at or beyond the agreement threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NegativeCoefficientError, PreconditionError
from .series import LaurentPolynomial, RationalSeries, series_expand

__all__ = [
    "PeriodicFunction",
    "Quasipolynomial",
    "periodic_rebalance",
    "quasipoly_extract",
    "quasipoly_nonneg_from",
    "construct_numerator",
    "find_shift",
    "first_negative_coefficient",
    "is_nonnegative_series",
]


@dataclass(frozen=True, eq=False)
class PeriodicFunction:
    """h -> values[h mod period].

    ``values[j]`` is the coefficient of the residue class indicator e_{period, j}.
    Equality is pointwise, so functions of different periods can compare equal.
    """

    period: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if self.period < 1 or len(vals) != self.period:
            raise ValueError(f"need exactly {self.period} values for period {self.period}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def constant(cls, c, period: int = 1) -> PeriodicFunction:
        return cls(period, (c,) * period)

    @classmethod
    def indicator(cls, period: int, j: int) -> PeriodicFunction:
        """e_{period, j}: one on h = j (mod period), zero elsewhere."""
        return cls(period, tuple(1 if i == j % period else 0 for i in range(period)))

    @classmethod
    def zero(cls) -> PeriodicFunction:
        return cls.constant(0)

    def __call__(self, h: int) -> Fraction:
        return self.values[h % self.period]

    evaluate = __call__

    def lift(self, period: int) -> PeriodicFunction:
        if period % self.period:
            raise ValueError(f"cannot lift period {self.period} to {period}")
        reps = period // self.period
        return PeriodicFunction(period, self.values * reps)

    def reduced(self) -> PeriodicFunction:
        """The same function written with its minimal period."""
        for p in _divisors(self.period):
            if all(self.values[i] == self.values[i % p] for i in range(self.period)):
                return PeriodicFunction(p, self.values[:p])
        return self

    def rotate(self, k: int) -> PeriodicFunction:
        """h -> self(h + k)."""
        return PeriodicFunction(self.period, tuple(self(j + k) for j in range(self.period)))

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    @property
    def is_constant(self) -> bool:
        return self.reduced().period == 1

    def minimum(self) -> Fraction:
        return min(self.values)

    def argmin(self) -> int:
        m = self.minimum()
        return self.values.index(m)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def _binary(self, other, fn):
        if isinstance(other, (int, Fraction)):
            other = PeriodicFunction.constant(other)
        if not isinstance(other, PeriodicFunction):
            return NotImplemented
        L = math.lcm(self.period, other.period)
        a, b = self.lift(L), other.lift(L)
        return PeriodicFunction(L, tuple(fn(x, y) for x, y in zip(a.values, b.values)))

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> PeriodicFunction:
        c = Fraction(c)
        return PeriodicFunction(self.period, tuple(v * c for v in self.values))

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PeriodicFunction.constant(other)
        if not isinstance(other, PeriodicFunction):
            return NotImplemented
        L = math.lcm(self.period, other.period)
        return all(self(h) == other(h) for h in range(L))

    def __hash__(self):
        r = self.reduced()
        return hash((r.period, r.values))

    def __repr__(self):
        return f"PeriodicFunction({self.period}, ({', '.join(str(v) for v in self.values)}))"


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- small dense polynomial helpers (coefficient lists, lowest degree first) --

def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _taylor_shift(coeffs: Sequence[Fraction], k: int) -> list[Fraction]:
    """Coefficients of x -> F(x + k)."""
    n = len(coeffs)
    return [
        sum((math.comb(i, m) * k ** (i - m) * coeffs[i] for i in range(m, n)), Fraction(0))
        for m in range(n)
    ]


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> list[Fraction]:
    """Monomial coefficients of the unique polynomial of degree < len(xs) through the points."""
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = [dd[-1]]
    for i in range(n - 2, -1, -1):
        # poly * (x - xs[i]) + dd[i]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for e, c in enumerate(poly):
            nxt[e + 1] += c
            nxt[e] -= c * xs[i]
        nxt[0] += dd[i]
        poly = nxt
    return poly


@dataclass(frozen=True)
class Quasipolynomial:
    """n -> sum_i coeffs[i](n) * n^i, valid for n >= threshold.

    The degree is ``len(coeffs) - 1``; trailing zero coefficient functions are
    dropped on construction, so the zero quasipolynomial has degree -1.
    """

    coeffs: tuple[PeriodicFunction, ...]
    threshold: int = 0

    def __post_init__(self):
        cs = [c.reduced() for c in self.coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def period(self) -> int:
        return math.lcm(*(c.period for c in self.coeffs)) if self.coeffs else 1

    @property
    def leading(self) -> PeriodicFunction:
        return self.coeffs[-1] if self.coeffs else PeriodicFunction.zero()

    def coefficient(self, i: int) -> PeriodicFunction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else PeriodicFunction.zero()

    def __call__(self, n: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c(n)
        return acc

    evaluate = __call__

    def class_polynomial(self, j: int) -> list[Fraction]:
        """Ordinary polynomial in n that agrees with the quasipolynomial on n = j mod period."""
        return _trim([c(j) for c in self.coeffs])

    @classmethod
    def from_class_polynomials(cls, period: int, polys: Sequence[Sequence[Fraction]], threshold: int = 0):
        deg = max((len(p) for p in polys), default=0)
        coeffs = []
        for i in range(deg):
            coeffs.append(
                PeriodicFunction(period, tuple(p[i] if i < len(p) else 0 for p in polys))
            )
        return cls(tuple(coeffs), threshold)

    def shift(self, k: int) -> Quasipolynomial:
        """The quasipolynomial n -> self(n + k)."""
        L = self.period
        polys = [_taylor_shift(self.class_polynomial(j + k), k) for j in range(L)]
        return Quasipolynomial.from_class_polynomials(L, polys, max(0, self.threshold - k))

    def scale(self, c) -> Quasipolynomial:
        return Quasipolynomial(tuple(a.scale(c) for a in self.coeffs), self.threshold)

    def __add__(self, other):
        if not isinstance(other, Quasipolynomial):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        cs = tuple(self.coefficient(i) + other.coefficient(i) for i in range(n))
        return Quasipolynomial(cs, max(self.threshold, other.threshold))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, Quasipolynomial):
            return NotImplemented
        return self + (-other)

    def same_function(self, other: Quasipolynomial) -> bool:
        """Equality as functions, ignoring the threshold."""
        return self.coeffs == other.coeffs


def periodic_rebalance(cs: Sequence[PeriodicFunction], integral: bool = False) -> list[PeriodicFunction]:
    """Rewrite a nonnegative sum of periodic functions as a sum of nonnegative ones.

    The periods must be pairwise coprime.  Every function after the first is
    lowered by its minimum and the first absorbs all of those minima, so the
    pointwise sum is unchanged.  When the sum is integer valued the outputs
    are too.
    """
    cs = list(cs)
    if not cs:
        return []
    periods = [c.period for c in cs]
    for i, a in enumerate(periods):
        for b in periods[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise PreconditionError(f"periods {a} and {b} are not coprime")
    L = math.lcm(*periods)
    for h in range(L):
        s = sum((c(h) for c in cs), Fraction(0))
        if s < 0:
            raise PreconditionError(f"sum takes the negative value {s} at h = {h}")
        if integral and s.denominator != 1:
            raise PreconditionError(f"sum takes the non-integral value {s} at h = {h}")
    minima = [c.minimum() for c in cs[1:]]
    out = [cs[0] + sum(minima, Fraction(0))]
    out += [c - m for c, m in zip(cs[1:], minima)]
    assert all(c.is_nonnegative() for c in out)
    assert not integral or all(c.is_integral() for c in out)
    return out


def quasipoly_extract(P: RationalSeries) -> Quasipolynomial:
    """The quasipolynomial Q(P) describing the coefficients of P.

    Its period divides the lcm of the denominator degrees, its degree is at
    most n - 1 for n degrees, and it agrees with the expansion from
    max(0, deg numerator - sum d_i + 1) on.
    """
    num = P.numerator
    spec = P.denominator
    if num.is_zero:
        return Quasipolynomial((), 0)
    h0 = max(0, num.max_exponent - spec.total_degree + 1)
    n = len(spec)
    if n == 0:
        return Quasipolynomial((), h0)
    L = spec.period
    first = [j + L * max(0, -((j - h0) // L)) for j in range(L)]
    top = max(first) + L * (2 * n - 1)
    v = P.valuation
    f = series_expand(P, top)
    polys = []
    for j in range(L):
        xs = [first[j] + L * s for s in range(2 * n)]
        ys = [f[x - v] if x >= v else Fraction(0) for x in xs]
        poly = _interpolate(xs[:n], ys[:n])
        for x, y in zip(xs[n:], ys[n:]):
            if _poly_eval(poly, x) != y:
                raise RuntimeError(f"quasipolynomial disagrees with expansion at n = {x}")
        polys.append(poly)
    return Quasipolynomial.from_class_polynomials(L, polys, h0)


def quasipoly_nonneg_from(q: Quasipolynomial) -> int | None:
    """Smallest h* >= 0 with q(h) >= 0 for every h >= h*.

    Returns ``None`` when the leading coefficient is negative on some residue
    class, i.e. when q takes negative values arbitrarily far out.  Beyond the
    Cauchy root bound of each class polynomial the sign is that of its
    leading coefficient; below the bound every point of the class is checked.
    """
    L = q.period
    hstar = 0
    for j in range(L):
        poly = q.class_polynomial(j)
        if not poly:
            continue
        lead = poly[-1]
        if lead < 0:
            return None
        if len(poly) == 1:
            continue
        bound = 1 + max(abs(c) for c in poly[:-1]) / lead
        last_negative = None
        h = j
        while h < bound:
            if _poly_eval(poly, h) < 0:
                last_negative = h
            h += L
        if last_negative is not None:
            hstar = max(hstar, last_negative + 1)
    return hstar


def first_negative_coefficient(P: RationalSeries, q: Quasipolynomial | None = None) -> int | None:
    """Index of the first negative coefficient of P, or ``None`` if there is none."""
    if q is None:
        q = quasipoly_extract(P)
    v = P.valuation
    hstar = quasipoly_nonneg_from(q)
    if hstar is None:
        # find a negative point beyond the root bound of a bad class
        L = q.period
        for j in range(L):
            poly = q.class_polynomial(j)
            if poly and poly[-1] < 0:
                h = j
                while h < q.threshold or _poly_eval(poly, h) >= 0:
                    h += L
                top = h
                break
    else:
        top = max(q.threshold, hstar) - 1
    if top < v:
        return None
    for i, c in enumerate(series_expand(P, top)):
        if c < 0:
            return v + i
    return None


def is_nonnegative_series(P: RationalSeries) -> bool:
    return first_negative_coefficient(P) is None


def construct_numerator(c: PeriodicFunction, beta: int) -> LaurentPolynomial:
    """Polynomial q >= 0 such that q(t)/(1 - t^delta)^beta has leading coefficient c.

    delta is the period of ``c``; the resulting quasipolynomial has degree
    beta - 1.  Since t^j/(1 - t^delta)^beta has coefficient binom(h + beta - 1,
    beta - 1) at n = delta*h + j, its leading coefficient in n is
    e_{delta,j} / ((beta - 1)! * delta^(beta - 1)), hence the scaling below.
    """
    if beta < 1:
        raise PreconditionError("beta must be at least 1")
    if not c.is_nonnegative():
        raise PreconditionError(f"periodic function {c} takes a negative value")
    factor = math.factorial(beta - 1) * c.period ** (beta - 1)
    return LaurentPolynomial({j: v * factor for j, v in enumerate(c.values)})


def find_shift(p1: Quasipolynomial, p2: Quasipolynomial, max_doublings: int = 64) -> int:
    """A multiple k of the common period with p1(h) - p2(h - k) >= 0 for all h >= k.

    Candidates 0, L, 2L, 4L, ... are tried in turn and each is certified
    exactly with :func:`quasipoly_nonneg_from`.
    """
    if p1.degree != p2.degree:
        raise PreconditionError(f"degrees differ: {p1.degree} vs {p2.degree}")
    a, b = p1.leading, p2.leading
    if not a.is_nonnegative():
        raise PreconditionError("leading coefficient of p1 takes a negative value")
    if not (a - b).is_nonnegative():
        raise PreconditionError("leading coefficient of p1 is not >= that of p2")
    L = math.lcm(p1.period, p2.period)
    k = 0
    for _ in range(max_doublings + 1):
        if quasipoly_nonneg_from(p1.shift(k) - p2) == 0:
            return k
        k = L if k == 0 else 2 * k
    raise RuntimeError("no admissible shift found below the safety cap")
