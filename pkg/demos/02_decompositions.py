# Writing a nonnegative series as a sum of nonnegative pieces
# Q_I / prod_{d in I} (1 - t^d).

from hilbert_decomp import (
    decompose_integral_2var,
    decompose_rational,
    format_series,
    parse_series,
    scale_to_realizable,
    verify_decomposition,
)
from hilbert_decomp.series import DenominatorSpec, RationalSeries


def show(dec):
    print(f"  lambda = {dec.scalar}, depth = {dec.depth}")
    for I, num in dec.terms:
        print("   ", format_series(RationalSeries(num, DenominatorSpec(I))))


P = parse_series("1/((1-t^2)(1-t^5)) - t^4/((1-t^3)(1-t^5))")

# Rational coefficients are always enough when the degrees are pairwise coprime.
dec = decompose_rational(P)
print("rational decomposition of", format_series(P))
show(dec)
print("  verdict:", verify_decomposition(P, dec))

# Clearing denominators gives an integral decomposition of a multiple of P.
lam, scaled = scale_to_realizable(P)
print(f"\n{lam} * P has an integral decomposition")
show(scaled)
print("  verdict:", verify_decomposition(P, scaled))

# With two degrees, integral coefficients suffice for P itself.
H = parse_series("(1 + t^4 + t^7)/((1-t^2)(1-t^3))")
print("\nintegral decomposition of", format_series(H))
show(decompose_integral_2var(H))
