"""Certificates that a nonnegative series has no nonnegative integral decomposition.

Two independent obstructions are checked:

* leading coefficient: the top quasipolynomial coefficient of P is not a
  nonnegative integer combination of the leading coefficients of the blocks
  1/prod_{d in I}(1 - t^d) of the right size;
* support closure: some residue class is eventually supported while none of
  its successors h + d is.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .decompose import Decomposition, verify_decomposition, Verdict
from .errors import PreconditionError
from .quasipoly import (
    Quasipolynomial,
    find_shift,
    first_negative_coefficient,
    quasipoly_extract,
)
from .series import DenominatorSpec, RationalSeries, count_representations, series_expand

__all__ = [
    "KnapsackReport",
    "LeadingCoefficientCertificate",
    "SupportClosureCertificate",
    "ObstructionCertificate",
    "leading_coeff_obstruction",
    "support_closure_obstruction",
    "explain_leading_coeff",
    "explain_support_closure",
    "eventual_support",
    "knapsack_feasible",
    "build_counterexample",
    "Counterexample",
    "exhaustive_integral_search",
]


@dataclass(frozen=True)
class KnapsackReport:
    """Integer form of the question target = sum n_I * weight_I with n_I >= 0.

    All values were multiplied by ``scale`` to clear denominators.
    """

    scale: int
    target: int
    weights: tuple[int, ...]
    feasible: bool


@dataclass(frozen=True)
class LeadingCoefficientCertificate:
    degree: int
    value: Fraction
    block_values: tuple[tuple[tuple[int, ...], Fraction], ...]
    infeasibility: KnapsackReport


@dataclass(frozen=True)
class SupportClosureCertificate:
    residue: int
    period: int
    support: tuple[int, ...]
    missing_successors: tuple[int, ...]


ObstructionCertificate = Union[LeadingCoefficientCertificate, SupportClosureCertificate]


def knapsack_feasible(target: int, weights: Sequence[int]) -> bool:
    """Unbounded knapsack reachability for positive integer weights."""
    if target < 0:
        return False
    reach = bytearray(target + 1)
    reach[0] = 1
    for w in sorted(set(weights)):
        for s in range(w, target + 1):
            if reach[s - w]:
                reach[s] = 1
    return bool(reach[target])


def _sub_multisets(spec: DenominatorSpec, size: int) -> list[tuple[int, ...]]:
    return sorted(set(itertools.combinations(spec.degrees, size)))


def explain_leading_coeff(P: RationalSeries, q: Quasipolynomial | None = None):
    """``(certificate or None, reason)`` for the leading-coefficient obstruction."""
    if q is None:
        q = quasipoly_extract(P)
    d = q.degree
    if d < 0:
        return None, "series is a Laurent polynomial"
    gamma = q.leading
    if not gamma.is_constant:
        return None, f"leading coefficient c_{d} is not constant"
    gamma = gamma(0)
    if gamma <= 0:
        return None, f"leading coefficient c_{d} = {gamma} is not positive"
    blocks = []
    for I in _sub_multisets(P.denominator, d + 1):
        v = quasipoly_extract(RationalSeries.block(I)).coefficient(d)
        if not v.is_constant:
            return None, f"block {list(I)} has a non-constant leading coefficient"
        blocks.append((I, v(0)))
    scale = math.lcm(gamma.denominator, *(v.denominator for _, v in blocks))
    weights = tuple(int(v * scale) for _, v in blocks)
    target = int(gamma * scale)
    feasible = knapsack_feasible(target, weights)
    report = KnapsackReport(scale, target, weights, feasible)
    if feasible:
        return None, f"c_{d} = {gamma} is a nonnegative integer combination of block values"
    cert = LeadingCoefficientCertificate(d, gamma, tuple(blocks), report)
    return cert, f"c_{d} = {gamma} is not a nonnegative integer combination of block values"


def leading_coeff_obstruction(P: RationalSeries) -> LeadingCoefficientCertificate | None:
    """Certificate that the leading coefficient of Q(P) is out of reach of the blocks.

    Each monomial of a numerator Q_I with |I| = deg Q(P) + 1 adds exactly the
    block value v_I to the constant leading coefficient and smaller blocks add
    nothing, so an infeasible knapsack rules out every integral decomposition.
    """
    return explain_leading_coeff(P)[0]


def eventual_support(q: Quasipolynomial, period: int) -> tuple[list[int], list[int]]:
    """Residues mod ``period`` whose coefficients are eventually positive, resp. negative."""
    pos, neg = [], []
    for j in range(period):
        poly = q.class_polynomial(j)
        if poly:
            (pos if poly[-1] > 0 else neg).append(j)
    return pos, neg


def explain_support_closure(P: RationalSeries, q: Quasipolynomial | None = None):
    if q is None:
        q = quasipoly_extract(P)
    spec = P.denominator
    if len(spec) == 0:
        return None, "series is a Laurent polynomial"
    L = spec.period
    support, negative = eventual_support(q, L)
    if negative:
        return None, "series has eventually negative coefficients"
    S = set(support)
    for h in support:
        if all((h + d) % L not in S for d in spec.values):
            cert = SupportClosureCertificate(h, L, tuple(support), tuple(spec.values))
            return cert, f"residue {h} mod {L} is supported but no successor is"
    return None, "eventual support is closed under some degree at every residue"


def support_closure_obstruction(P: RationalSeries) -> SupportClosureCertificate | None:
    """Certificate that the eventual support of P is not closed under adding degrees.

    A term Q_I/prod_{d in I}(1 - t^d) with d in I that contributes at a large
    index h contributes at h + d too, and Q_empty only covers finitely many
    indices.
    """
    return explain_support_closure(P)[0]


@dataclass(frozen=True)
class Counterexample:
    series: RationalSeries
    multiplier: int
    shift: int
    certificate: LeadingCoefficientCertificate


def _block_from_exponents(values: Sequence[int], exps: Sequence[int]) -> RationalSeries:
    return RationalSeries.block([d for d, b in zip(values, exps) for _ in range(b)])


def build_counterexample(
    D: DenominatorSpec,
    beta1: Sequence[int],
    beta2: Sequence[int],
    shift: int | None = None,
) -> Counterexample:
    """A nonnegative series P = P1 - lam t^k P2 without integral decomposition.

    ``beta1`` and ``beta2`` give the exponent of each distinct value of ``D``
    (ascending) in P1 = 1/prod (1 - t^delta)^beta and likewise P2.  When
    ``shift`` is omitted the smallest k making P nonnegative is used; it is
    searched below the bound delivered by :func:`find_shift`.
    """
    values = D.values
    if not D.coprime_or_equal:
        raise PreconditionError(f"distinct values {values} are not pairwise coprime")
    mult = D.multiplicities
    for name, beta in (("beta1", beta1), ("beta2", beta2)):
        if len(beta) != len(values):
            raise PreconditionError(f"{name} needs one exponent per distinct value {values}")
        if any(b < 0 or b > mult[d] for d, b in zip(values, beta)):
            raise PreconditionError(f"{name} exponents must lie between 0 and the multiplicities")
    if sum(beta1) != sum(beta2):
        raise PreconditionError("P1 and P2 must have quasipolynomials of the same degree")
    d = sum(beta1) - 1
    if d < 0:
        raise PreconditionError("exponents must not all vanish")
    if not d + 1 > max(mult.values()):
        raise PreconditionError("the number of factors d + 1 must exceed every multiplicity")
    P1 = _block_from_exponents(values, beta1).over(D)
    P2 = _block_from_exponents(values, beta2).over(D)
    q1, q2 = quasipoly_extract(P1), quasipoly_extract(P2)
    c1, c2 = q1.leading(0), q2.leading(0)
    if not c1 > c2:
        raise PreconditionError(f"leading coefficient c_{d}(P1) = {c1} must exceed c_{d}(P2) = {c2}")
    ratio = c1 / c2
    if ratio.denominator == 1:
        raise PreconditionError(f"c_{d}(P1) must not be an integer multiple of c_{d}(P2), got {ratio}")
    lam = ratio.numerator // ratio.denominator

    def candidate(k):
        return RationalSeries(P1.numerator - P2.numerator.scale(lam).shift(k), D)

    if shift is None:
        bound = find_shift(q1, q2.scale(lam))
        shift = next(k for k in range(bound + 1) if first_negative_coefficient(candidate(k)) is None)
    P = candidate(shift)
    bad = first_negative_coefficient(P)
    if bad is not None:
        raise PreconditionError(f"shift {shift} leaves the negative coefficient f_{bad}")
    cert, reason = explain_leading_coeff(P)
    if cert is None:
        raise RuntimeError(f"leading-coefficient certificate did not fire: {reason}")
    return Counterexample(P, lam, shift, cert)


def exhaustive_integral_search(P: RationalSeries, max_exponent: int, max_coeff: int, horizon: int = 200):
    """Search every integral decomposition with numerator exponents in [0, max_exponent].

    Coefficients range over [0, max_coeff].  The search fixes the numerator
    coefficients of all blocks exponent by exponent; since every contribution
    is nonnegative, a partial choice is dropped as soon as it exceeds some
    coefficient of P up to ``horizon``.  Returns the first decomposition found
    or ``None`` once the space is exhausted.
    """
    spec = P.denominator
    blocks = [I for size in range(len(spec) + 1) for I in _sub_multisets(spec, size)]
    f = _window(P, horizon)
    # reps[b][m]: coefficient of t^m in 1/prod_{d in I_b}(1 - t^d)
    reps = [[count_representations(m, I) for m in range(horizon + 1)] for I in blocks]
    chosen: dict[tuple[tuple[int, ...], int], int] = {}

    def search(e, acc):
        if e > max_exponent:
            dec = Decomposition(
                tuple((blocks[b], {j: c}) for (b, j), c in chosen.items() if c)
            )
            if verify_decomposition(P, dec, horizon) is Verdict.INTEGRAL_VALID:
                return dec
            return None
        need = f[e] - acc[e]
        for combo in _compositions(need, len(blocks), max_coeff):
            new = list(acc)
            ok = True
            for b, c in enumerate(combo):
                if c:
                    r = reps[b]
                    for m in range(e, horizon + 1):
                        new[m] += c * r[m - e]
            for m in range(e, horizon + 1):
                if new[m] > f[m]:
                    ok = False
                    break
            if not ok:
                continue
            for b, c in enumerate(combo):
                chosen[(b, e)] = c
            found = search(e + 1, new)
            if found is not None:
                return found
        for b in range(len(blocks)):
            chosen.pop((b, e), None)
        return None

    if P.valuation < 0 or any(c.denominator != 1 for c in f):
        return None
    return search(0, [0] * (horizon + 1))


def _window(P: RationalSeries, horizon: int) -> list[Fraction]:
    coeffs = series_expand(P, horizon) if horizon >= P.valuation else []
    v = P.valuation
    return [coeffs[m - v] if m >= v else Fraction(0) for m in range(horizon + 1)]


def _compositions(total, parts: int, cap: int):
    """All tuples of ``parts`` integers in [0, cap] summing to ``total``."""
    if total < 0 or total.denominator != 1 or total > parts * cap:
        return
    total = int(total)

    def rec(i, left):
        if i == parts - 1:
            if left <= cap:
                yield (left,)
            return
        for c in range(min(cap, left) + 1):
            for rest in rec(i + 1, left - c):
                yield (c,) + rest

    yield from rec(0, total)
