"""Exact computer algebra for generalized Witt algebra representations
inside a skew group ring, with machine-checked identity suites.

The layers, bottom up: sparse multivariate polynomials and rational
functions over Q (``rings``); the skew group ring of the plane by the
grading lattice with point-ideal and idealizer membership (``skew``); the
enveloping algebra with sorted-word normal forms and its graded
anti-homomorphism into the skew ring (``enveloping``); the
intermediate-series module families with an intertwiner solver and a table
classifier (``modules``); ideal reconstruction witnesses and line quotients
(``idealizer``); and the expression language, verification suites, and
report emitters behind the command line (``expr``, ``suites``, ``report``,
``cli``).
"""

from .rings import (
    Context, ContextError, NotDivisibleError, Poly, Scalar,
    gamma_add, gamma_compare, gamma_neg, gamma_scale, gamma_sub,
    poly_div_exact, poly_gcd,
)
from .skew import (
    AffinePoint, DegreeCapError, InfNearPoint, LinearBasis, RIdealizer,
    SIdealizer, SkewElt, graded_component, ideal_component, in_idealizer,
    in_left_point_ideal, in_right_point_ideal, poly_in_point_ideal,
    shift_poly, shift_scalar, skew_mul,
)
from .enveloping import (
    InternalCheckError, UElt, bracket, kernel_test, phi, phi_generator,
    phi_prime, tprime_bridge_check, u_mul, u_product,
)
from .modules import (
    INF, AFamily, ATildeFamily, BFamily, BTildeFamily, DualFamily, Family,
    ModVec, PFamily, PreconditionError, QFamily, TableFamily, VFamily,
    act, act_u, adjoint_act, bracket_defect, classify, family_table,
    iso_check, pq_reduce, shift_check,
)
from .idealizer import (
    SaturationBuilder, beta_membership, beta_witness, conjugate_to_b1,
    eval_combination, format_combination, ideal_witness, nonfg_check,
    nonfg_left_check, nonfg_right_check, p_mu, pmu_check, quotient_beta,
    saturation_check, support_reduction,
)
from .expr import (
    EvalError, ParseError, evaluate, parse_family, parse_gamma,
    table_from_text, table_to_text,
)
from .report import CheckResult, SuiteRun, render_json, render_text, write_report_files
from .suites import SUITES, run_all, run_suite

__version__ = "0.1.0"
