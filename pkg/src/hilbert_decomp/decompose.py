"""Decompositions P = sum_I Q_I / prod_{d in I} (1 - t^d) with nonnegative Q_I.

With pairwise coprime-or-equal degrees a decomposition with rational
numerators always exists for a nonnegative series (:func:`decompose_rational`);
for two degrees one with integral numerators exists
(:func:`decompose_integral_2var`), which makes the series a Hilbert series.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NegativeCoefficientError, PreconditionError
from .quasipoly import (
    PeriodicFunction,
    construct_numerator,
    find_shift,
    first_negative_coefficient,
    is_nonnegative_series,
    periodic_rebalance,
    quasipoly_extract,
)
from .series import DenominatorSpec, LaurentPolynomial, RationalSeries, poly_divmod, series_expand

__all__ = [
    "Decomposition",
    "PartialFractionForm",
    "Verdict",
    "partial_fractions",
    "decompose_rational",
    "decompose_integral_2var",
    "scale_to_realizable",
    "verify_decomposition",
    "recover_numerator_2var",
]

_ONE_MINUS_T = LaurentPolynomial({0: 1, 1: -1})


@dataclass(frozen=True)
class Decomposition:
    """scalar * P = sum over terms of numerator / prod_{d in I} (1 - t^d).

    ``terms`` is a tuple of ``(I, numerator)`` with ``I`` a sorted tuple of
    degrees; ``I == ()`` is the polynomial part.  ``depth`` records how many
    leading-coefficient reductions produced the decomposition and does not
    take part in comparisons.
    """

    terms: tuple[tuple[tuple[int, ...], LaurentPolynomial], ...]
    scalar: Fraction = Fraction(1)
    depth: int = field(default=0, compare=False)

    def __post_init__(self):
        merged: dict[tuple[int, ...], LaurentPolynomial] = {}
        for I, num in self.terms:
            I = tuple(sorted(int(d) for d in I))
            num = num if isinstance(num, LaurentPolynomial) else LaurentPolynomial(num)
            merged[I] = merged.get(I, LaurentPolynomial()) + num
        terms = tuple(
            (I, merged[I]) for I in sorted(merged, key=lambda I: (len(I), I)) if not merged[I].is_zero
        )
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        if self.scalar <= 0:
            raise ValueError("the scalar of a decomposition must be positive")

    def is_valid(self) -> bool:
        return all(num.is_nonnegative() for _, num in self.terms)

    def is_integral(self) -> bool:
        return all(num.is_integral() for _, num in self.terms)

    def coefficient_denominator_lcm(self) -> int:
        return math.lcm(1, *(num.denominator_lcm() for _, num in self.terms))

    def scaled(self, c) -> Decomposition:
        c = Fraction(c)
        return Decomposition(
            tuple((I, num.scale(c)) for I, num in self.terms), self.scalar * c, self.depth
        )

    def numerator_over(self, spec: DenominatorSpec) -> LaurentPolynomial:
        """Numerator of the sum of all terms written over ``spec``."""
        total = LaurentPolynomial()
        for I, num in self.terms:
            total = total + num * spec.difference(DenominatorSpec(I)).polynomial()
        return total

    def as_series(self, spec: DenominatorSpec | None = None) -> RationalSeries:
        if spec is None:
            spec = DenominatorSpec()
            for I, _ in self.terms:
                spec = spec.union(DenominatorSpec(I))
        return RationalSeries(self.numerator_over(spec), spec)


@dataclass(frozen=True)
class PartialFractionForm:
    """P = p_0/(1 - t)^n + sum_i p_i/(1 - t^{delta_i})^{alpha_i}."""

    pole1_part: tuple[LaurentPolynomial, int]
    value_parts: tuple[tuple[int, int, LaurentPolynomial], ...]

    def recombine(self, spec: DenominatorSpec) -> LaurentPolynomial:
        """Numerator of the form over the full denominator ``spec``."""
        p0, n = self.pole1_part
        den = spec.polynomial()
        total, rem = poly_divmod(den, _ONE_MINUS_T**n)
        assert rem.is_zero
        total = total * p0
        for delta, alpha, p in self.value_parts:
            cof, rem = poly_divmod(den, LaurentPolynomial({0: 1, delta: -1}) ** alpha)
            assert rem.is_zero
            total = total + cof * p
        return total

    def pole1_series(self) -> RationalSeries:
        p0, n = self.pole1_part
        return RationalSeries(p0, DenominatorSpec([1] * n))

    def value_series(self, delta: int) -> RationalSeries | None:
        for d, alpha, p in self.value_parts:
            if d == delta:
                return RationalSeries(p, DenominatorSpec([d] * alpha))
        return None


def _poly_inverse_mod(a: LaurentPolynomial, m: LaurentPolynomial) -> LaurentPolynomial:
    """a^{-1} modulo m via the extended Euclidean algorithm over Q."""
    r0, r1 = m, poly_divmod(a, m)[1]
    s0, s1 = LaurentPolynomial(), LaurentPolynomial.one()
    while not r1.is_zero:
        quot, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
    if r0.max_exponent != 0:
        raise ValueError("polynomials are not coprime")
    return poly_divmod(s0.scale(1 / r0.coeff(0)), m)[1]


def partial_fractions(P: RationalSeries) -> PartialFractionForm:
    """Split P into a pole-at-one part and one part per distinct degree value.

    Uses 1 - t^delta = (1 - t) * (1 + t + ... + t^(delta - 1)); for pairwise
    coprime values the cyclotomic cofactors are pairwise coprime, so ordinary
    partial fractions apply.
    """
    spec = P.denominator
    if not spec.coprime_or_equal:
        raise PreconditionError(f"distinct degree values {spec.values} are not pairwise coprime")
    num = P.numerator
    n = len(spec)
    mult = spec.multiplicities
    big = [(d, a) for d, a in mult.items() if d > 1]
    if not big:
        return PartialFractionForm((num, n), ())
    if num.is_zero:
        return PartialFractionForm((num, n), tuple((d, a, num) for d, a in big))
    if len(mult) == 1:
        # already in shape
        d, a = big[0]
        return PartialFractionForm((LaurentPolynomial(), n), ((d, a, num),))

    v = min(0, num.min_exponent)
    shifted = num.shift(-v)
    den = spec.polynomial()
    quot, rem = poly_divmod(shifted, den)
    factors = [_ONE_MINUS_T**n] + [
        LaurentPolynomial({i: 1 for i in range(d)}) ** a for d, a in big
    ]
    pieces = []
    for F in factors:
        cof, r = poly_divmod(den, F)
        assert r.is_zero
        pieces.append(poly_divmod(rem * _poly_inverse_mod(cof, F), F)[1])
    p0 = (pieces[0] + quot * _ONE_MINUS_T**n).shift(v)
    parts = tuple(
        (d, a, (piece * _ONE_MINUS_T**a).shift(v)) for (d, a), piece in zip(big, pieces[1:])
    )
    form = PartialFractionForm((p0, n), parts)
    assert form.recombine(spec) == num
    return form


def _remainder_polynomial(P: RationalSeries, threshold: int) -> LaurentPolynomial:
    v = P.valuation
    if threshold <= v:
        return LaurentPolynomial()
    coeffs = series_expand(P, threshold - 1)
    return LaurentPolynomial({v + i: c for i, c in enumerate(coeffs)})


def _block_lead(I: Sequence[int], degree: int) -> PeriodicFunction:
    return quasipoly_extract(RationalSeries.block(I)).coefficient(degree)


def _leading_terms(P: RationalSeries, q, integral: bool) -> list[tuple[tuple[int, ...], LaurentPolynomial]]:
    """Terms of a nonnegative g whose quasipolynomial has the degree and leading coefficient of q."""
    spec = P.denominator
    mult = spec.multiplicities
    beta = q.degree + 1
    c = q.leading

    if beta > max(mult.values()):
        # pole at one dominates: the leading coefficient is constant
        if not c.is_constant:
            raise RuntimeError("leading coefficient is unexpectedly non-constant")
        remaining = beta
        I: list[int] = []
        for delta in sorted(mult, reverse=True):
            b = min(mult[delta], remaining)
            I += [delta] * b
            remaining -= b
        I_t = tuple(sorted(I))
        lam = c(0) / _block_lead(I_t, beta - 1)(0)
        if integral and lam.denominator != 1:
            raise PreconditionError(f"leading coefficient needs the non-integral multiplier {lam}")
        return [(I_t, LaurentPolynomial({0: lam}))]

    admissible = [d for d, a in mult.items() if a >= beta]
    form = partial_fractions(P)
    const = quasipoly_extract(form.pole1_series()).coefficient(beta - 1)
    if not const.is_constant:
        raise RuntimeError("pole-at-one part has a non-constant coefficient")
    parts = []
    for d in admissible:
        vs = form.value_series(d)
        part = PeriodicFunction.zero() if vs is None else quasipoly_extract(vs).coefficient(beta - 1)
        parts.append(part.lift(d))
    if const + sum(parts, PeriodicFunction.zero()) != c:
        raise RuntimeError("partial fraction parts do not sum to the leading coefficient")

    factors = {math.factorial(beta - 1) * d ** (beta - 1) for d in admissible}
    if integral and len(factors) > 1:
        raise PreconditionError("integral rebalancing needs a common scaling for all admissible degrees")
    s = factors.pop() if integral else 1
    out = periodic_rebalance([const.scale(s).reduced()] + [p.scale(s) for p in parts], integral)
    pieces = [p.scale(Fraction(1, s)) for p in out[1:]]
    pieces[0] = (pieces[0] + out[0].scale(Fraction(1, s))).lift(admissible[0])

    terms = []
    for d, piece in zip(admissible, pieces):
        if not piece.is_zero:
            terms.append(((d,) * beta, construct_numerator(piece.lift(d), beta)))
    return terms


def _decompose(P: RationalSeries, integral: bool) -> Decomposition:
    spec = P.denominator
    if not spec.coprime_or_equal:
        raise PreconditionError(f"degrees {list(spec.degrees)} are not pairwise coprime or equal")
    bad = first_negative_coefficient(P)
    if bad is not None:
        raise NegativeCoefficientError(bad, P.coefficient(bad))

    collected: list[tuple[tuple[int, ...], LaurentPolynomial]] = []
    current = P
    depth = 0
    last_degree = None
    while True:
        q = quasipoly_extract(current)
        if last_degree is not None:
            assert q.degree < last_degree, "quasipolynomial degree failed to drop"
        if q.degree < 0:
            collected.append(((), _remainder_polynomial(current, q.threshold)))
            break
        g_terms = _leading_terms(current, q, integral)
        g = Decomposition(tuple(g_terms)).as_series(spec)
        k = find_shift(q, quasipoly_extract(g))
        step = math.lcm(q.period, spec.period)
        while True:
            diff = RationalSeries(current.numerator - g.numerator.shift(k), spec)
            if is_nonnegative_series(diff):
                break
            k += step
        collected += [(I, num.shift(k)) for I, num in g_terms]
        current = diff
        last_degree = q.degree
        depth += 1
    result = Decomposition(tuple(collected), depth=depth)
    assert result.is_valid()
    assert not integral or result.is_integral()
    return result


def decompose_rational(P: RationalSeries) -> Decomposition:
    """Nonnegative decomposition of P with rational numerators.

    Requires pairwise coprime-or-equal degrees and a series with no negative
    coefficient.  Each round matches the leading quasipolynomial coefficient
    of the current series with a nonnegative g, subtracts a certified shift
    t^k g and continues with a series of strictly lower degree.
    """
    return _decompose(P, integral=False)


def recover_numerator_2var(coeffs: Sequence, d1: int, d2: int, start: int = 0) -> LaurentPolynomial:
    """p with P = p/((1 - t^d1)(1 - t^d2)), read off the coefficients of P.

    ``coeffs[i]`` is f_{start + i}; a_i = f_i - f_{i-d1} - f_{i-d2} + f_{i-d1-d2}.
    """

    def f(i):
        j = i - start
        return coeffs[j] if 0 <= j < len(coeffs) else 0

    out = {}
    for i in range(start, start + len(coeffs)):
        out[i] = f(i) - f(i - d1) - f(i - d2) + f(i - d1 - d2)
    return LaurentPolynomial(out)


def decompose_integral_2var(P: RationalSeries) -> Decomposition:
    """Nonnegative integral decomposition for a denominator with two degrees.

    The result certifies that P is the Hilbert series of a finitely generated
    graded module.
    """
    spec = P.denominator
    if len(spec) != 2:
        raise PreconditionError(f"expected exactly two degrees, got {list(spec.degrees)}")
    if not spec.coprime_or_equal:
        raise PreconditionError(f"degrees {list(spec.degrees)} are neither coprime nor equal")
    d1, d2 = spec.degrees
    if not P.numerator.is_zero:
        top = P.numerator.max_exponent
        p = recover_numerator_2var(P.expand(top), d1, d2, start=P.valuation)
        assert p == P.numerator
        if not p.is_integral():
            raise PreconditionError("series has non-integer coefficients")
    return _decompose(P, integral=True)


def scale_to_realizable(P: RationalSeries) -> tuple[int, Decomposition]:
    """A positive integer lam and an integral nonnegative decomposition of lam * P."""
    dec = decompose_rational(P)
    lam = dec.coefficient_denominator_lcm()
    return lam, dec.scaled(lam)


class Verdict(str, enum.Enum):
    VALID = "valid"
    INTEGRAL_VALID = "integral-valid"
    MISMATCH = "mismatch"
    NEGATIVE_NUMERATOR = "negative-numerator"

    def __str__(self):
        return self.value


def verify_decomposition(P: RationalSeries, D: Decomposition, N: int = 200) -> Verdict:
    """Check that D is a nonnegative decomposition of scalar * P.

    The identity is decided symbolically over the denominator of P; the
    first N coefficients are compared as well, as a redundant check.
    """
    spec = P.denominator
    if not all(spec.contains(DenominatorSpec(I)) for I, _ in D.terms):
        return Verdict.MISMATCH
    lhs = P.numerator.scale(D.scalar)
    symbolic = lhs == D.numerator_over(spec)

    v = min([P.valuation] + [num.min_exponent for _, num in D.terms])
    expected = _expand_from(RationalSeries(lhs, spec), v, N)
    got = [Fraction(0)] * len(expected)
    for I, num in D.terms:
        for i, c in enumerate(_expand_from(RationalSeries(num, DenominatorSpec(I)), v, N)):
            got[i] += c
    if symbolic != (expected == got):
        if symbolic:
            raise RuntimeError("symbolic identity holds but expansions differ")
    if not symbolic:
        return Verdict.MISMATCH
    if not D.is_valid():
        return Verdict.NEGATIVE_NUMERATOR
    return Verdict.INTEGRAL_VALID if D.is_integral() else Verdict.VALID


def _expand_from(P: RationalSeries, v: int, N: int) -> list[Fraction]:
    if N < v:
        return []
    if P.numerator.is_zero:
        return [Fraction(0)] * (N - v + 1)
    coeffs = series_expand(P, max(N, P.valuation))
    pad = P.valuation - v
    return ([Fraction(0)] * pad + coeffs)[: N - v + 1]
