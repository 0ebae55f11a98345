from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hilbert_decomp import (
    Decomposition,
    DenominatorSpec,
    LaurentPolynomial,
    NegativeCoefficientError,
    PreconditionError,
    RationalSeries,
    Verdict,
    decompose_integral_2var,
    decompose_rational,
    parse_series,
    partial_fractions,
    recover_numerator_2var,
    scale_to_realizable,
    series_expand,
    verify_decomposition,
)

from known_series import EXAMPLE1_WITNESS_TERMS, EXAMPLE2_WITNESS_TERMS

L = LaurentPolynomial
HALF = Fraction(1, 2)


class TestDecomposition:
    def test_merges_and_orders_terms(self):
        D = Decomposition((((3, 2), {0: 1}), ((), {1: 1}), ((2, 3), {2: 1})))
        assert D.terms == (((), L({1: 1})), ((2, 3), L({0: 1, 2: 1})))

    def test_drops_zero_terms(self):
        assert Decomposition((((2,), {0: 1}), ((2,), {0: -1}))).terms == ()

    def test_scalar_must_be_positive(self):
        with pytest.raises(ValueError):
            Decomposition((), 0)

    def test_scaled(self):
        D = Decomposition((((2,), {0: HALF}),)).scaled(2)
        assert D.scalar == 2 and D.is_integral()


class TestPartialFractions:
    def test_two_values(self):
        P = parse_series("1/((1-t^2)(1-t^3))")
        form = partial_fractions(P)
        assert form.recombine(P.denominator) == P.numerator
        total = [Fraction(0)] * 101
        parts = [form.pole1_series()] + [form.value_series(d) for d in (2, 3)]
        for part in parts:
            f = series_expand(part, 100)
            pad = part.valuation
            for i, c in enumerate(f):
                total[pad + i] += c
        assert total == series_expand(P, 100)

    def test_single_value(self):
        form = partial_fractions(RationalSeries.block([2]))
        assert form.pole1_part[0].is_zero
        assert form.value_parts == ((2, 1, L({0: 1})),)

    def test_pole_at_one_only(self):
        P = RationalSeries(L({0: 3}), DenominatorSpec([1, 1]))
        form = partial_fractions(P)
        assert form.pole1_part == (L({0: 3}), 2)
        assert form.value_parts == ()

    def test_rejects_common_factor(self):
        with pytest.raises(PreconditionError):
            partial_fractions(parse_series("1/((1-t^2)(1-t^4))"))

    @settings(max_examples=30, deadline=None)
    @given(
        st.sampled_from([[2, 3], [2, 2, 3], [1, 2, 5], [3, 4, 4], [2, 3, 5]]),
        st.dictionaries(st.integers(-2, 12), st.integers(-4, 4), max_size=5),
    )
    def test_recombines(self, degrees, num):
        spec = DenominatorSpec(degrees)
        P = RationalSeries(L(num), spec)
        assert partial_fractions(P).recombine(spec) == P.numerator


class TestRational:
    def test_polynomial(self):
        P = parse_series("3 + t^2")
        D = decompose_rational(P)
        assert D.terms == (((), L({0: 3, 2: 1})),)
        assert D.depth == 0

    def test_examples(self, ex1, ex2):
        for P in (ex1, ex2):
            D = decompose_rational(P)
            assert D.is_valid()
            assert verify_decomposition(P, D, 300) in (Verdict.VALID, Verdict.INTEGRAL_VALID)

    def test_equal_degrees(self):
        P = parse_series("(1 + t^3 + 2*t^5)/(1-t^2)^3")
        assert verify_decomposition(P, decompose_rational(P)) in (Verdict.VALID, Verdict.INTEGRAL_VALID)

    def test_rejects_negative_series(self):
        with pytest.raises(NegativeCoefficientError) as info:
            decompose_rational(parse_series("(1 - 2*t)/(1-t^2)"))
        assert info.value.index == 1

    def test_rejects_common_factor(self):
        with pytest.raises(PreconditionError):
            decompose_rational(parse_series("1/((1-t^2)(1-t^4))"))

    @settings(max_examples=25, deadline=None)
    @given(
        st.sampled_from([[2, 3], [2, 5], [1, 3, 4], [2, 2, 3], [3, 3]]),
        st.lists(st.tuples(st.integers(0, 3), st.integers(0, 8), st.integers(1, 3)), min_size=1, max_size=4),
    )
    def test_nonnegative_combinations(self, degrees, atoms):
        # sums of shifted sub-blocks are nonnegative, so a decomposition must exist
        spec = DenominatorSpec(degrees)
        P = RationalSeries(L(), spec)
        for size, shift, c in atoms:
            P = P + RationalSeries.block(spec.degrees[: min(size, len(spec))], coeff=c, shift=shift).over(spec)
        D = decompose_rational(P)
        assert verify_decomposition(P, D) in (Verdict.VALID, Verdict.INTEGRAL_VALID)


class TestIntegral2Var:
    def test_ring_itself(self):
        D = decompose_integral_2var(parse_series("1/((1-t^2)(1-t^3))"))
        assert D.terms == (((2, 3), L({0: 1})),)

    def test_with_extra_generator(self):
        P = parse_series("(1 + t^4)/((1-t^2)(1-t^3))")
        assert verify_decomposition(P, decompose_integral_2var(P), 500) is Verdict.INTEGRAL_VALID

    def test_equal_degrees(self):
        D = decompose_integral_2var(parse_series("2/(1-t^2)^2"))
        assert D.terms == (((2, 2), L({0: 2})),)

    def test_needs_two_degrees(self, ex1):
        with pytest.raises(PreconditionError):
            decompose_integral_2var(ex1)

    def test_needs_coprime(self):
        with pytest.raises(PreconditionError):
            decompose_integral_2var(parse_series("1/((1-t^4)(1-t^6))"))

    def test_needs_integers(self):
        with pytest.raises(PreconditionError):
            decompose_integral_2var(parse_series("1/2/((1-t^2)(1-t^3))"))

    @settings(max_examples=30, deadline=None)
    @given(
        st.sampled_from([(2, 3), (3, 5), (1, 4), (3, 3)]),
        st.lists(st.tuples(st.integers(0, 3), st.integers(0, 10), st.integers(1, 3)), min_size=1, max_size=5),
    )
    def test_hilbert_series(self, pair, atoms):
        blocks = [(), (pair[0],), (pair[1],), pair]
        dec = Decomposition(tuple((blocks[b], {s: c}) for b, s, c in atoms))
        P = dec.as_series(DenominatorSpec(pair))
        assert verify_decomposition(P, decompose_integral_2var(P)) is Verdict.INTEGRAL_VALID


class TestRecoverNumerator:
    def test_ring(self):
        f = series_expand(parse_series("1/((1-t^2)(1-t^3))"), 10)
        assert recover_numerator_2var(f, 2, 3) == L({0: 1})

    @given(st.dictionaries(st.integers(-3, 12), st.integers(-5, 5), max_size=5), st.sampled_from([(2, 3), (4, 4), (1, 5)]))
    def test_inverts_expansion(self, num, pair):
        P = RationalSeries(L(num), DenominatorSpec(pair))
        if P.numerator.is_zero:
            return
        f = series_expand(P, P.numerator.max_exponent)
        assert recover_numerator_2var(f, *pair, start=P.valuation) == P.numerator


class TestScale:
    def test_already_integral(self):
        lam, D = scale_to_realizable(parse_series("1/((1-t^2)(1-t^3))"))
        assert lam == 1 and D.is_integral()

    def test_examples(self, ex1, ex2):
        for P in (ex1, ex2):
            lam, D = scale_to_realizable(P)
            assert D.scalar == lam
            assert verify_decomposition(P, D) is Verdict.INTEGRAL_VALID


class TestVerify:
    def test_mismatch(self):
        P = RationalSeries.block([2])
        assert verify_decomposition(P, Decomposition((((), {0: 1}),))) is Verdict.MISMATCH

    def test_foreign_degree_is_mismatch(self):
        P = RationalSeries.block([2])
        assert verify_decomposition(P, Decomposition((((3,), {0: 1}),))) is Verdict.MISMATCH

    def test_negative_numerator(self):
        P = parse_series("(1 + t^2)/(1-t^2)")
        D = Decomposition((((), {0: -1}), ((2,), {0: 2})))
        assert D.as_series(P.denominator).numerator == P.numerator
        assert verify_decomposition(P, D) is Verdict.NEGATIVE_NUMERATOR

    def test_witnesses_with_half(self, ex1, ex2):
        for P, terms in ((ex1, EXAMPLE1_WITNESS_TERMS), (ex2, EXAMPLE2_WITNESS_TERMS)):
            halves = Decomposition(tuple((I, {e: HALF * c for e, c in num.items()}) for I, num in terms))
            assert verify_decomposition(P, halves) is Verdict.VALID
            assert verify_decomposition(P, Decomposition(tuple(terms), 2)) is Verdict.INTEGRAL_VALID

    def test_wrong_scalar(self, ex1):
        assert verify_decomposition(ex1, Decomposition(tuple(EXAMPLE1_WITNESS_TERMS), 3)) is Verdict.MISMATCH
