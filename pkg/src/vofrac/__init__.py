"""Variable-order fractional operators, Laplace transforms and an identity
verification harness."""

from .checker import (
    IdentityCase,
    ResidualReport,
    VariantResult,
    check_const_caputo_lt,
    check_convolution_step,
    check_frozen_vs_unfrozen,
    check_phi_scaled_claim,
    check_yang_machado_eq22,
    run_suite,
)
from .errors import (
    AbscissaError,
    ContourError,
    DomainError,
    IoError,
    OrderRangeError,
    ParseError,
    PoleError,
    RegularizationWarning,
    SingularAtOrigin,
    ValidationError,
    VofracError,
)
from .functions import Interval, OrderFunction, ScalarFunction, ScaleFunction
from .laplace import (
    ComplexGrid,
    FrozenOrder,
    TransformSample,
    coimbra_symbol,
    default_grid,
    finite_part_lt,
    forward_lt,
    inverse_lt,
    lt_of_derivative,
    regularized_power_lt,
)
from .operators import (
    caputo_const_left,
    vo_caputo_left,
    vo_caputo_right,
    vo_integral_left,
    vo_integral_right,
)
from .quadrature import (
    QuadConfig,
    QuadResult,
    integrate_endpoint_singular,
    integrate_halfline,
    integrate_smooth,
)
from .special import GammaResult, cpow, gamma, gamma_info, rgamma

__version__ = "0.1.0"
