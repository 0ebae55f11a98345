"""Exact decompositions of rational series into nonnegative Hilbert-series shaped parts.

A rational series P(t) = p(t) / prod_i (1 - t^{d_i}) is the Hilbert series of a
finitely generated graded module over a polynomial ring with generators in
degrees d_i exactly when it can be written as a sum of
Q_I(t) / prod_{i in I} (1 - t^{d_i}) with nonnegative integral Q_I.  This
package constructs such decompositions (rational ones in general, integral
ones for two generators) and produces certificates when none can exist.
"""

from .errors import HilbertDecompError, NegativeCoefficientError, ParseError, PreconditionError
from .series import (
    DenominatorSpec,
    LaurentPolynomial,
    RationalSeries,
    count_representations,
    lp_arith,
    lp_scale,
    lp_shift,
    series_combine,
    series_expand,
)
from .quasipoly import (
    PeriodicFunction,
    Quasipolynomial,
    construct_numerator,
    find_shift,
    first_negative_coefficient,
    is_nonnegative_series,
    periodic_rebalance,
    quasipoly_extract,
    quasipoly_nonneg_from,
)
from .decompose import (
    Decomposition,
    PartialFractionForm,
    Verdict,
    decompose_integral_2var,
    decompose_rational,
    partial_fractions,
    recover_numerator_2var,
    scale_to_realizable,
    verify_decomposition,
)
from .obstruction import (
    Counterexample,
    KnapsackReport,
    LeadingCoefficientCertificate,
    ObstructionCertificate,
    SupportClosureCertificate,
    build_counterexample,
    exhaustive_integral_search,
    leading_coeff_obstruction,
    support_closure_obstruction,
)
from .parsing import InputExpression, format_series, parse_rational_function, parse_series

__version__ = "0.1.0"
