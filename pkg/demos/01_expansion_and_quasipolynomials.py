# Expanding rational series and reading off their quasipolynomials.
#
# Run with:  python3 demos/01_expansion_and_quasipolynomials.py

from hilbert_decomp import (
    RationalSeries,
    format_series,
    count_representations,
    parse_series,
    quasipoly_extract,
    series_expand,
)

# 1/((1-t^2)(1-t^3)) counts the ways to write n as 2a + 3b.
P = RationalSeries.block([2, 3])
print("coefficients of 1/((1-t^2)(1-t^3)):", [int(c) for c in series_expand(P, 15)])
print("same by brute counting:          ", [count_representations(n, [2, 3]) for n in range(16)])

# Its coefficients follow a quasipolynomial in n of degree 1 and period 6.
q = quasipoly_extract(P)
print("\ndegree", q.degree, "period", q.period, "agrees from n =", q.threshold)
for i, c in enumerate(q.coeffs):
    print(f"  c_{i}(n mod {c.period}) =", [str(v) for v in c.values])
print("q(1000) =", q(1000), " f_1000 =", P.coefficient(1000))

# A difference of two such series can still be nonnegative.
ex1 = parse_series("1/((1-t^2)(1-t^5)) - t^4/((1-t^3)(1-t^5))")
print("\nP =", format_series(ex1))
print("first coefficients:", " ".join(str(c) for c in series_expand(ex1, 20)))
q1 = quasipoly_extract(ex1)
print("leading coefficient:", q1.leading(0))
