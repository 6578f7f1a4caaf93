"""Configurable-precision laboratory for the remainders of the Stirling
series of ln Gamma, their exponential-kernel integral representations, and
numerical estimation of complete-monotonicity degrees.

Everything computes under an explicit :class:`PrecisionContext`; nothing
reads global precision state.  The public surface re-exported here is the
supported API; underscored module members are not.
"""

from .cmdegree import (
    DEFAULT_GRID,
    CMCheckResult,
    DegreeBracket,
    FunctionFamily,
    builtin_families,
    cm_check,
    conjecture_probe,
    degree_estimate,
    first_deriv_bound,
)
from .combinatorics import bernoulli, falling, stirling2, zeta_even
from .errors import BracketError, DomainError, IntegrationError
from .gammakit import GammaEval, binet_check, ln_gamma, polygamma, psi_integral_check
from .kernels import (
    KernelSpec,
    Remark1Chain,
    SignReport,
    K_kernel,
    bose_derivative,
    f_kernel,
    f_kernel_deriv,
    remark1_chain,
    sign_scan,
)
from .precision import PrecisionContext, elem
from .quadrature import (
    DEFAULT_BUDGET,
    GridSpec,
    IntegralResult,
    Remark3Report,
    bose_moment,
    cos_kernel_integral,
    laplace,
    remark3_inequalities,
    sin_kernel_integral,
    verify_degree_representation,
)
from .remainders import (
    RemainderSpec,
    TailLimitEntry,
    TailLimits,
    ratio_bound,
    remainder,
    remainder_d1,
    remainder_d2,
    remainder_deriv,
    tail_limits,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # precision
    "PrecisionContext",
    "elem",
    # errors
    "DomainError",
    "IntegrationError",
    "BracketError",
    # combinatorics
    "bernoulli",
    "stirling2",
    "falling",
    "zeta_even",
    # gamma machinery
    "GammaEval",
    "ln_gamma",
    "polygamma",
    "binet_check",
    "psi_integral_check",
    # kernels
    "KernelSpec",
    "f_kernel",
    "f_kernel_deriv",
    "bose_derivative",
    "K_kernel",
    "Remark1Chain",
    "remark1_chain",
    "SignReport",
    "sign_scan",
    # quadrature
    "IntegralResult",
    "GridSpec",
    "laplace",
    "bose_moment",
    "cos_kernel_integral",
    "sin_kernel_integral",
    "verify_degree_representation",
    "Remark3Report",
    "remark3_inequalities",
    "DEFAULT_BUDGET",
    # remainders
    "RemainderSpec",
    "remainder",
    "remainder_d1",
    "remainder_d2",
    "remainder_deriv",
    "ratio_bound",
    "TailLimitEntry",
    "TailLimits",
    "tail_limits",
    # degree estimation
    "FunctionFamily",
    "CMCheckResult",
    "DegreeBracket",
    "DEFAULT_GRID",
    "builtin_families",
    "cm_check",
    "first_deriv_bound",
    "degree_estimate",
    "conjecture_probe",
]
