"""Numerical JB-algebra backends with relative and Tsallis operator
entropies, an operator-inequality verification harness, and a CLI.

Three Euclidean Jordan algebra families back the functional calculus:
real symmetric matrices, spin factors, and the 27-dimensional exceptional
algebra of 3x3 octonionic Hermitian matrices.  On top of them sit the
two-parameter relative operator entropies and deformed-logarithm (Tsallis)
variants, their printed sandwich bounds, integral representations by
Gaussian quadrature, Loewner-order certification, and a registry of
inequality chains run as randomized verification campaigns.
"""

from .core import (
    affine,
    coords_allclose,
    identity,
    jb_norm,
    jordan_product,
    quad_map,
    quad_map_polarized,
    zero,
)
from .calculus import (
    Spectrum,
    func_calculus,
    inverse,
    is_positive,
    power,
    require_positive_invertible,
    spectrum,
)
from .elements import (
    SF_EXP,
    SF_IDENTITY,
    SF_LOG,
    SF_NEG_XLOGX,
    SF_SQRT,
    AlgebraDescriptor,
    AlgebraKind,
    JordanElement,
    ScalarFunction,
    albert,
    element,
    element_from_dict,
    element_to_dict,
    sf_const,
    sf_ln_lambda,
    sf_power,
    spin_factor,
    sym_matrix,
)
from .entropy import (
    BoundKind,
    EntropyParams,
    ScalarBoundFamily,
    ab_geometric_mean,
    bound_expr,
    congruence,
    geometric_mean,
    harmonic_mean,
    ln_lambda,
    perspective,
    rel_entropy,
    rel_entropy_ab,
    rel_entropy_xlogx,
    scalar_bound_eval,
    tsallis,
    tsallis_lb,
)
from .errors import (
    ConsistencyError,
    DomainError,
    IncompatibleAlgebrasError,
    InvalidElementError,
    JBAlgError,
    ParameterError,
    PositivityError,
    ReportFormatError,
    SamplerError,
    SingularityError,
    UnknownIdError,
)
from .orders import (
    OrderCertificate,
    hypothesis_pair,
    loewner_leq,
    random_positive,
    random_square,
)
from .quadrature import (
    QuadratureConfig,
    QuadratureRule,
    gauss_jacobi_entropy,
    gauss_legendre_01,
    quad_integral_S,
    quad_integral_T,
    quad_integral_geo,
    weight_normalization,
)
from .registry import (
    DEFAULT_COND,
    DEFAULT_DIMS,
    NEGATE_COND,
    ChainReport,
    RegistryEntry,
    all_ids,
    chain_ids,
    default_run_ids,
    get_entry,
    identity_ids,
    negative_control_ids,
    report_dumps,
    report_from_dict,
    run_entry,
    verify_chain,
    verify_identity,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "affine",
    "coords_allclose",
    "identity",
    "jb_norm",
    "jordan_product",
    "quad_map",
    "quad_map_polarized",
    "zero",
    # calculus
    "Spectrum",
    "func_calculus",
    "inverse",
    "is_positive",
    "power",
    "require_positive_invertible",
    "spectrum",
    # elements
    "AlgebraDescriptor",
    "AlgebraKind",
    "JordanElement",
    "ScalarFunction",
    "SF_EXP",
    "SF_IDENTITY",
    "SF_LOG",
    "SF_NEG_XLOGX",
    "SF_SQRT",
    "albert",
    "element",
    "element_from_dict",
    "element_to_dict",
    "sf_const",
    "sf_ln_lambda",
    "sf_power",
    "spin_factor",
    "sym_matrix",
    # entropy
    "BoundKind",
    "EntropyParams",
    "ScalarBoundFamily",
    "ab_geometric_mean",
    "bound_expr",
    "congruence",
    "geometric_mean",
    "harmonic_mean",
    "ln_lambda",
    "perspective",
    "rel_entropy",
    "rel_entropy_ab",
    "rel_entropy_xlogx",
    "scalar_bound_eval",
    "tsallis",
    "tsallis_lb",
    # errors
    "ConsistencyError",
    "DomainError",
    "IncompatibleAlgebrasError",
    "InvalidElementError",
    "JBAlgError",
    "ParameterError",
    "PositivityError",
    "ReportFormatError",
    "SamplerError",
    "SingularityError",
    "UnknownIdError",
    # orders
    "OrderCertificate",
    "hypothesis_pair",
    "loewner_leq",
    "random_positive",
    "random_square",
    # quadrature
    "QuadratureConfig",
    "QuadratureRule",
    "gauss_jacobi_entropy",
    "gauss_legendre_01",
    "quad_integral_S",
    "quad_integral_T",
    "quad_integral_geo",
    "weight_normalization",
    # registry
    "ChainReport",
    "DEFAULT_COND",
    "DEFAULT_DIMS",
    "NEGATE_COND",
    "RegistryEntry",
    "all_ids",
    "chain_ids",
    "default_run_ids",
    "get_entry",
    "identity_ids",
    "negative_control_ids",
    "report_dumps",
    "report_from_dict",
    "run_entry",
    "verify_chain",
    "verify_identity",
]
