"""Influence of the k-th largest variable and shifted L-statistic fits.

The package computes the global influence index I(f, k) of the k-th largest
input of a square-integrable function on the unit cube, the best
approximation of f by a shifted L-statistic, and the normalized index
r(f, k) together with the quality-of-fit R^2.  Engines: an exact rational
kernel over order-statistic polynomials and set-function (Lovasz) extensions,
analytic closed forms for multiplicative functions, and seeded Monte-Carlo
estimators for black boxes.
"""

from .api import (
    DEFAULT_SAMPLES,
    best_approximation,
    derive_seed,
    function_sigma,
    influence_profile,
    influence_value,
    normalized_index,
    resolve_method,
)
from .errors import (
    BranchAmbiguityError,
    ConfigurationError,
    DegenerateVarianceError,
    DomainError,
    OrdInfluenceError,
    QuadratureError,
    SpecFileError,
    TaintedSampleError,
)
from .exact import (
    OrderStatMonomial,
    OrderStatPolynomial,
    dualize,
    inner_product_exact,
    integral,
    moment,
    monomial,
    os_function,
    polynomial,
    symmetrize,
)
from .funcspec import (
    BUILTIN_NAMES,
    FunctionSpec,
    MultiplicativeFunctionSpec,
    OrderStatPolynomialSpec,
    PlainPolynomialSpec,
    PowerProductSpec,
    RawEvaluatorSpec,
    SetFunctionSpec,
    parse_spec_document,
    parse_spec_file,
    resolve_builtin,
)
from .lovasz import (
    SetFunction,
    equal_influence_class,
    eval_lovasz,
    influence_lovasz,
    influence_profile_lovasz,
    mean_lovasz,
    mobius,
    norm_sq_lovasz,
    symmetric_part,
    zeta,
)
from .montecarlo import (
    Evaluator,
    IntegrationEstimate,
    influence_mc_covariance,
    influence_mc_derivative,
    influence_mc_diffquotient,
    mc_inner_product,
    tensor_quadrature,
)
from .projection import (
    ApproximationResult,
    InfluenceProfile,
    approximation_exact,
    g_basis,
    gram_system,
    h_density,
    influence_exact,
    normalized_index_exact,
    profile_exact,
)
from .closedforms import (
    MultiplicativeSpec,
    UnaryFactor,
    influence_multiplicative,
    influence_power_product,
    influence_symmetric_multiplicative,
    influence_via_alternative,
    power_product_ratio,
    variance_profile,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DEFAULT_SAMPLES",
    "best_approximation",
    "derive_seed",
    "function_sigma",
    "influence_profile",
    "influence_value",
    "normalized_index",
    "resolve_method",
    "BranchAmbiguityError",
    "ConfigurationError",
    "DegenerateVarianceError",
    "DomainError",
    "OrdInfluenceError",
    "QuadratureError",
    "SpecFileError",
    "TaintedSampleError",
    "OrderStatMonomial",
    "OrderStatPolynomial",
    "dualize",
    "inner_product_exact",
    "integral",
    "moment",
    "monomial",
    "os_function",
    "polynomial",
    "symmetrize",
    "BUILTIN_NAMES",
    "FunctionSpec",
    "MultiplicativeFunctionSpec",
    "OrderStatPolynomialSpec",
    "PlainPolynomialSpec",
    "PowerProductSpec",
    "RawEvaluatorSpec",
    "SetFunctionSpec",
    "parse_spec_document",
    "parse_spec_file",
    "resolve_builtin",
    "SetFunction",
    "equal_influence_class",
    "eval_lovasz",
    "influence_lovasz",
    "influence_profile_lovasz",
    "mean_lovasz",
    "mobius",
    "norm_sq_lovasz",
    "symmetric_part",
    "zeta",
    "Evaluator",
    "IntegrationEstimate",
    "influence_mc_covariance",
    "influence_mc_derivative",
    "influence_mc_diffquotient",
    "mc_inner_product",
    "tensor_quadrature",
    "ApproximationResult",
    "InfluenceProfile",
    "approximation_exact",
    "g_basis",
    "gram_system",
    "h_density",
    "influence_exact",
    "normalized_index_exact",
    "profile_exact",
    "MultiplicativeSpec",
    "UnaryFactor",
    "influence_multiplicative",
    "influence_power_product",
    "influence_symmetric_multiplicative",
    "influence_via_alternative",
    "power_product_ratio",
    "variance_profile",
]
