"""The twelve acceptance criteria, all checked exactly.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import math
import random
from fractions import Fraction

from hilbert_decomp import (
    Decomposition,
    DenominatorSpec,
    LaurentPolynomial,
    PeriodicFunction,
    RationalSeries,
    Verdict,
    construct_numerator,
    count_representations,
    decompose_integral_2var,
    decompose_rational,
    exhaustive_integral_search,
    leading_coeff_obstruction,
    parse_series,
    periodic_rebalance,
    quasipoly_extract,
    scale_to_realizable,
    series_expand,
    support_closure_obstruction,
    verify_decomposition,
)

from known_series import (
    EXAMPLE1,
    EXAMPLE1_WITNESS,
    EXAMPLE1_WITNESS_TERMS,
    EXAMPLE2,
    EXAMPLE2_WITNESS,
    EXAMPLE2_WITNESS_TERMS,
    EXAMPLE3,
    EXAMPLE3_CLOSED,
)

PAIRS = [(2, 3), (2, 5), (3, 4), (4, 4)]


def leading_by_differences(f, degree, period, n):
    """Top quasipolynomial coefficient at n from the degree-fold L-step difference."""
    total = sum(
        (-1) ** (degree - i) * math.comb(degree, i) * f(n + i * period) for i in range(degree + 1)
    )
    return Fraction(total, math.factorial(degree) * period**degree)


def block_value_oracle(I):
    """Leading coefficient of 1/prod(1 - t^d), by differences of the counting function."""
    L = math.lcm(*I)
    d = len(I) - 1
    values = {leading_by_differences(lambda m: count_representations(m, I), d, L, 60 + j) for j in range(L)}
    assert len(values) == 1
    return values.pop()


def random_integral_decomposition(rng, d1, d2):
    blocks = sorted({(), (d1,), (d2,), tuple(sorted((d1, d2)))})
    while True:
        terms = []
        for I in blocks:
            num = {e: rng.randint(1, 3) for e in rng.sample(range(9), rng.randint(0, 3))}
            if num:
                terms.append((I, LaurentPolynomial(num)))
        if terms:
            return Decomposition(tuple(terms))


def criterion7_series():
    rng = random.Random(7)
    out = []
    for i in range(100):
        d1, d2 = PAIRS[i % len(PAIRS)]
        dec = random_integral_decomposition(rng, d1, d2)
        out.append((dec, dec.as_series(DenominatorSpec([d1, d2]))))
    return out


_CRITERION7 = criterion7_series()


def test_criterion_01_example1_identity(ex1):
    witness = parse_series(EXAMPLE1_WITNESS)
    assert series_expand(ex1, 300) == series_expand(witness, 300)
    assert verify_decomposition(ex1, Decomposition(tuple(EXAMPLE1_WITNESS_TERMS), 2)) is Verdict.INTEGRAL_VALID


def test_criterion_02_example1_quasipolynomial(ex1):
    q = quasipoly_extract(ex1)
    assert q.degree == 1
    assert q.leading.is_constant and q.leading(0) == Fraction(1, 30)
    assert Fraction(1, 10) - Fraction(1, 15) == Fraction(1, 30)
    cert = leading_coeff_obstruction(ex1)
    assert cert is not None
    assert cert.value == Fraction(1, 30)
    assert {v for _, v in cert.block_values} == {Fraction(1, 6), Fraction(1, 10), Fraction(1, 15)}
    assert not cert.infeasibility.feasible


def test_criterion_03_example2(ex2):
    witness = parse_series(EXAMPLE2_WITNESS)
    assert series_expand(ex2, 300) == series_expand(witness, 300)
    assert verify_decomposition(ex2, Decomposition(tuple(EXAMPLE2_WITNESS_TERMS), 2)) is Verdict.INTEGRAL_VALID

    # independent values: finite differences on the expansion and on counting functions
    f = series_expand(ex2, 400)
    gammas = {leading_by_differences(lambda m: f[m], 2, 6, 200 + j) for j in range(6)}
    assert gammas == {Fraction(1, 72)}
    blocks = {block_value_oracle(I) for I in [(2, 2, 3), (2, 3, 3)]}
    assert blocks == {Fraction(1, 24), Fraction(1, 36)}

    cert = leading_coeff_obstruction(ex2)
    assert cert is not None
    assert cert.value == Fraction(1, 72)
    assert {v for _, v in cert.block_values} == blocks


def test_criterion_04_example3(ex3):
    closed = parse_series(EXAMPLE3_CLOSED)
    assert series_expand(ex3, 300) == series_expand(closed, 300)
    assert series_expand(ex3, 0) == [1]
    cert = support_closure_obstruction(ex3)
    assert cert is not None
    assert cert.period == 30
    assert set(cert.support) == {0, 1, 7, 13, 19, 20}
    assert cert.residue == 0


def test_criterion_05_rational_decompositions(ex1, ex2):
    for P, max_depth in ((ex1, 2), (ex2, 3)):
        dec = decompose_rational(P)
        assert verify_decomposition(P, dec) in (Verdict.VALID, Verdict.INTEGRAL_VALID)
        assert all(c >= 0 for _, num in dec.terms for _, c in num.items())
        assert dec.depth <= max_depth


def test_criterion_06_scale_to_realizable(ex1, ex2):
    for P in (ex1, ex2):
        lam, dec = scale_to_realizable(P)
        assert isinstance(lam, int) and lam >= 1
        assert dec.scalar == lam
        assert verify_decomposition(P, dec) is Verdict.INTEGRAL_VALID


def test_criterion_07_integral_round_trip():
    for original, P in _CRITERION7:
        assert P.numerator == original.numerator_over(P.denominator)
        dec = decompose_integral_2var(P)
        assert dec.numerator_over(P.denominator) == P.numerator
        assert verify_decomposition(P, dec) is Verdict.INTEGRAL_VALID


def _coprime_periods(rng, r):
    while True:
        ps = [rng.randint(1, 7) for _ in range(r)]
        if all(math.gcd(a, b) == 1 for i, a in enumerate(ps) for b in ps[i + 1 :]):
            return ps


def test_criterion_08_periodic_rebalance():
    rng = random.Random(8)
    for trial in range(200):
        r = rng.randint(1, 3)
        periods = _coprime_periods(rng, r)
        integral = trial % 2 == 1
        if integral:
            # integer values plus constant offsets whose sum is an integer
            offsets = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(r - 1)]
            offsets.insert(0, -sum(offsets, Fraction(0)) + rng.randint(-2, 2))
            cs = [
                PeriodicFunction(p, tuple(rng.randint(-5, 5) + o for _ in range(p)))
                for p, o in zip(periods, offsets)
            ]
        else:
            cs = [
                PeriodicFunction(p, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(p)))
                for p in periods
            ]
        L = math.lcm(*periods)
        low = min(sum((c(h) for c in cs), Fraction(0)) for h in range(L))
        if low < 0:
            cs[0] = cs[0] + (-low if not integral else math.ceil(-low))
        sums = [sum((c(h) for c in cs), Fraction(0)) for h in range(L)]
        assert not integral or all(s.denominator == 1 for s in sums)

        out = periodic_rebalance(cs, integral=integral)
        assert len(out) == len(cs)
        assert all(c(h) >= 0 for c in out for h in range(L))
        assert [sum((c(h) for c in out), Fraction(0)) for h in range(L)] == sums
        if integral:
            assert all(c(h).denominator == 1 for c in out for h in range(L))


def test_criterion_09_oracle_equivalence():
    rng = random.Random(9)
    for _ in range(50):
        degrees = [rng.randint(1, 7) for _ in range(rng.randint(1, 3))]
        P = RationalSeries.block(degrees)
        f = series_expand(P, 2000)
        assert f[:201] == [count_representations(n, degrees) for n in range(201)]
        q = quasipoly_extract(P)
        assert all(q(n) == f[n] for n in range(q.threshold, 2001))


def test_criterion_10_construct_round_trip():
    rng = random.Random(10)
    for _ in range(50):
        delta = rng.randint(1, 6)
        beta = rng.randint(1, 3)
        values = [Fraction(rng.randint(0, 6), rng.randint(1, 4)) for _ in range(delta)]
        if not any(values):
            values[rng.randrange(delta)] = Fraction(1)
        c = PeriodicFunction(delta, tuple(values))
        num = construct_numerator(c, beta)
        assert num.is_nonnegative()
        q = quasipoly_extract(RationalSeries(num, DenominatorSpec([delta] * beta)))
        assert q.degree == beta - 1
        assert all(q.leading(h) == c(h) for h in range(delta))


def test_criterion_11_no_false_positives():
    for _, P in _CRITERION7:
        assert leading_coeff_obstruction(P) is None
        assert support_closure_obstruction(P) is None


def test_criterion_12_falsification_harness(ex1):
    assert leading_coeff_obstruction(ex1) is not None
    assert exhaustive_integral_search(ex1, max_exponent=12, max_coeff=3) is None
