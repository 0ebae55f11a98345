# Nonnegative series that are not Hilbert series, with certificates.

from hilbert_decomp import (
    DenominatorSpec,
    build_counterexample,
    exhaustive_integral_search,
    format_series,
    leading_coeff_obstruction,
    parse_series,
    support_closure_obstruction,
)

# Leading coefficient: P has slope 1/30 but every block of two
# factors has a slope of 1/6, 1/10 or 1/15.
P = parse_series("1/((1-t^2)(1-t^5)) - t^4/((1-t^3)(1-t^5))")
cert = leading_coeff_obstruction(P)
print("leading coefficient:", cert.value)
for I, v in cert.block_values:
    print("  block", I, "->", v)
rep = cert.infeasibility
print(f"  {rep.target} is no sum of {list(rep.weights)}")

# Brute force agrees, within the search box.
print("small-coefficient search:", exhaustive_integral_search(P, max_exponent=12, max_coeff=3))

# Support closure: with degrees 6, 10, 15 the coefficients live on six
# residues mod 30, and 0 + 6, 0 + 10 and 0 + 15 are all missing.
Q = parse_series("(1 + t - t^6 - t^10 - t^11 - t^15 + t^20 + t^21)/((1-t^6)(1-t^10)(1-t^15))")
sc = support_closure_obstruction(Q)
print("\nsupport mod", sc.period, ":", sc.support, " stuck residue:", sc.residue)

# The same kind of series can be built for other degrees.
res = build_counterexample(DenominatorSpec([3, 4, 5]), [1, 1, 0], [0, 1, 1])
print("\nnew counterexample:", format_series(res.series))
print(f"  lambda = {res.multiplier}, shift = {res.shift}, gamma = {res.certificate.value}")
