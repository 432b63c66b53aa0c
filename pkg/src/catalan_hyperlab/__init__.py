"""Multi-route numerical verification of identities linking Catalan's constant,
complete elliptic integrals, and unit-argument hypergeometric series.

Evaluation routes (series, acceleration, tanh-sinh quadrature, AGM, closed
forms) are deliberately independent so each identity in the registry is
checked by two genuinely different computations.
"""

from .accel import TermStream, levin_u, sum_stream, wynn_epsilon
from .elliptic import agm, ellipe, ellipk
from .identities import (
    EvalSpec,
    Identity,
    Report,
    VerificationResult,
    reference_catalan,
    registry,
    verify,
    verify_all,
)
from .integrals import (
    CATALAN_METHODS,
    catalan,
    catalan_result,
    integral_A,
    integral_B,
    integral_C,
    integral_D,
    parametric_integral,
)
from .quadrature import QuadratureSpec, central_diff, tanh_sinh, tanh_sinh_levels
from .result import AccelBreakdownError, EvalResult, IntegrandError, NonConvergenceError
from .sfcore import (
    PFQParams,
    central_binomial,
    gauss_2f1_at_one,
    lgamma,
    pfq,
    pfq_converges_at_one,
    pfq_term_stream,
    pochhammer,
    unit_argument_margin,
)

__version__ = "0.1.0"
