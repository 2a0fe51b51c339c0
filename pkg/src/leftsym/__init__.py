"""Finite-dimensional real algebras as structure-constant tensors.

The package verifies the axioms of left-symmetric (pre-Lie) products and
their metric refinements, splits an algebra with positive definite trace
form around its canonical idempotent, rebuilds algebras from the free data
of that splitting, and measures the left-invariant curvature the product
induces on the double space.  Everything is certified numerically: each
computation that has a second, independent route is checked against it.
"""

from .algfile import AlgebraFile, parse_algebra_file, render_algebra_file
from .catalog import (
    CatalogEntry,
    ParamSpec,
    catalog_build,
    catalog_entry,
    catalog_list,
    catalog_verify,
    sample_params,
    sl2_bracket,
)
from .construct import (
    LSPKData,
    MilnorSpec,
    build_corollary1,
    build_corollary2,
    build_lspk,
    build_milnor,
    data_from_decomposition,
    data_residuals,
    derive_omegas,
    kdim2_family,
    recognize_milnor,
    validate_data,
)
from .core import (
    AlgebraStructure,
    Tolerance,
    associator,
    change_basis,
    lie_bracket_constants,
    mult_operator,
    multiply,
    residual_scale,
)
from .decompose import (
    EigenSplit,
    HSplit,
    LSPKDecomposition,
    decompose,
    eigensplit,
    extract_structure,
    find_idempotent_H,
    split_h,
)
from .errors import (
    BlockNotSkew,
    Circ1NonZero,
    DiagonalizationFailed,
    DimensionMismatch,
    FixtureBroken,
    HypothesisFailed,
    IdempotentCheckFailed,
    KoszulMismatch,
    LeftSymError,
    NoKernelVector,
    NotAntisymmetric,
    NotEinstein,
    NotLieBracket,
    NotLSPK,
    NotPositiveDefinite,
    NotSkew,
    OracleMismatch,
    ParseError,
    PreconditionFailed,
    SchemaError,
    SingularMatrix,
    SingularMetric,
    SpectrumNotZeroOne,
    SystemASViolated,
    SystemViolated,
    UnknownEntry,
    UnknownSystem,
    ValidationFailed,
    VerificationFailed,
    ZeroH,
)
from .forms import (
    BilinearForm,
    MetricAlgebra,
    PredicateReport,
    check_associative,
    check_commutative,
    check_hessian,
    check_jacobi,
    check_k_hessian,
    check_koszul_identity,
    check_left_symmetric,
    check_novikov,
    is_positive_definite,
    is_solvable,
    koszul_form,
    rn_isomorphism,
    trace_one_form,
)
from .geometry import (
    BaseCurvature,
    CurvatureReport,
    base_curvature,
    einstein_check,
    gamma_operator,
    levi_civita_product,
    second_koszul_form,
    tangent_bundle_ricci,
)
from .search import (
    PolySystem,
    RootSet,
    builtin_system,
    newton_search,
    verify_roots_build,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraFile",
    "AlgebraStructure",
    "BaseCurvature",
    "BilinearForm",
    "BlockNotSkew",
    "CatalogEntry",
    "Circ1NonZero",
    "CurvatureReport",
    "DiagonalizationFailed",
    "DimensionMismatch",
    "EigenSplit",
    "FixtureBroken",
    "HSplit",
    "HypothesisFailed",
    "IdempotentCheckFailed",
    "KoszulMismatch",
    "LSPKData",
    "LSPKDecomposition",
    "LeftSymError",
    "NoKernelVector",
    "NotAntisymmetric",
    "NotEinstein",
    "NotLSPK",
    "NotLieBracket",
    "NotPositiveDefinite",
    "NotSkew",
    "OracleMismatch",
    "ParseError",
    "PreconditionFailed",
    "SchemaError",
    "SingularMatrix",
    "SingularMetric",
    "SpectrumNotZeroOne",
    "SystemASViolated",
    "SystemViolated",
    "UnknownEntry",
    "UnknownSystem",
    "ValidationFailed",
    "VerificationFailed",
    "ZeroH",
    "MetricAlgebra",
    "MilnorSpec",
    "ParamSpec",
    "PolySystem",
    "PredicateReport",
    "RootSet",
    "Tolerance",
    "associator",
    "base_curvature",
    "build_corollary1",
    "build_corollary2",
    "build_lspk",
    "build_milnor",
    "builtin_system",
    "catalog_build",
    "catalog_entry",
    "catalog_list",
    "catalog_verify",
    "change_basis",
    "check_associative",
    "check_commutative",
    "check_hessian",
    "check_jacobi",
    "check_k_hessian",
    "check_koszul_identity",
    "check_left_symmetric",
    "check_novikov",
    "data_from_decomposition",
    "data_residuals",
    "decompose",
    "derive_omegas",
    "eigensplit",
    "einstein_check",
    "extract_structure",
    "find_idempotent_H",
    "gamma_operator",
    "is_positive_definite",
    "is_solvable",
    "kdim2_family",
    "koszul_form",
    "levi_civita_product",
    "lie_bracket_constants",
    "mult_operator",
    "multiply",
    "newton_search",
    "parse_algebra_file",
    "recognize_milnor",
    "render_algebra_file",
    "residual_scale",
    "rn_isomorphism",
    "sample_params",
    "second_koszul_form",
    "sl2_bracket",
    "split_h",
    "tangent_bundle_ricci",
    "trace_one_form",
    "validate_data",
    "verify_roots_build",
]
