"""gvlab: computable objects around the Varshamov-Gilbert bound for linear codes.

Modules
-------
field        arithmetic in F_{p^m} by coordinates
code         check matrices, minimum distance, greedy GV construction
indicator    character-sum indicator products and the sum P_q(r, d)
polynomial   exact sparse polynomials
roots        Stefanescu root bounds and a certified root oracle
asymptotics  entropy, GV rate, ball exponents, finite-n gaps
verify       harnesses used by the ``verify-*`` subcommands
"""

from .asymptotics import (
    BoundCurve,
    RatePoint,
    ball_exponent,
    curve_table,
    entropy_q,
    gv_rate,
    rhs_5t_sum,
    tightness_gap,
)
from .code import (
    CheckMatrix,
    CodeSummary,
    ball_volume,
    enumerate_low_weight,
    gv_greedy_construct,
    min_distance,
    min_distance_oracle,
    null_space,
    random_matrix,
)
from .field import FieldElement, FieldSpec, fe_coords, field_arith, field_make, vec_inner
from .indicator import (
    ExactScalar,
    IndicatorReport,
    cosine_exponent,
    expand_indicator_product,
    indicator_factor,
    indicator_product,
    p_sum_exhaustive,
    p_sum_monte_carlo,
)
from .polynomial import Polynomial, format_poly, parse_poly
from .roots import (
    StefanescuDecomposition,
    cauchy_bound,
    largest_positive_root,
    reciprocal_polynomial,
    sign_variations,
    stefanescu_bound,
    stefanescu_decompose,
)

__version__ = "0.1.0"
