"""Exact-arithmetic verification engine for complex contact metric
geometry on homogeneous frame models.

A model is a frame presentation of a Lie group with a left-invariant
metric: bracket structure constants plus three frame endomorphisms and
two distinguished vertical directions.  Everything downstream — the
metric connection, curvature, and a registry of structure identities —
is computed in exact rational arithmetic, so every reported equality or
inequality is a theorem about the model, not a numerical impression.
"""
from .core import (
    DimensionMismatch,
    Endomorphism,
    FrameVector,
    OneForm,
    Scalar,
    Status,
    Tensor4,
    TwoForm,
    format_scalar,
    format_sparse_vector,
    inner_product,
    outer,
    parse_scalar,
    parse_sparse_vector,
    vector_combine,
)
from .model import (
    CheckResult,
    HEISENBERG_CCM,
    InvalidModelError,
    ManifoldModel,
    ModelFormatError,
    StructureConstants,
    ValidationReport,
    build_abelian,
    build_heisenberg,
    lie_checks,
    load_model,
    require_lie_algebra,
    structure_tensor_checks,
    validate_structure,
)
from .connection import (
    ConnectionCoeffs,
    cov_deriv_endo,
    cov_deriv_oneform,
    cov_deriv_vector,
    exterior_d_oneform,
    levi_civita,
    sigma_form,
    wedge,
)
from .structures import (
    NormalityReport,
    RouteResult,
    apply_structure,
    check_normality,
    horizontal_projection,
    nijenhuis,
    tensor_S,
    tensor_T,
)
from .curvature import (
    BilinearForm,
    CurvTensor,
    DegeneratePlane,
    curvature_value,
    holomorphic_sectional,
    ricci,
    ricci_operator,
    riemann,
    riemann_symmetry_failures,
    scalar_curvature,
    second_bianchi_cyclic_sum,
    second_bianchi_failures,
    sectional,
)
from .verify import (
    DiffReport,
    ExpectedFormatError,
    ExpectedValues,
    IdentityResult,
    SELECTORS,
    SuiteReport,
    Workspace,
    diff_expected,
    diff_text_rows,
    diff_tsv_rows,
    parse_expected,
    registry_ids,
    run_suite,
    suite_text_rows,
    suite_tsv_rows,
)

__version__ = "0.1.0"

__all__ = [
    "BilinearForm",
    "CheckResult",
    "ConnectionCoeffs",
    "CurvTensor",
    "DegeneratePlane",
    "DiffReport",
    "DimensionMismatch",
    "Endomorphism",
    "ExpectedFormatError",
    "ExpectedValues",
    "FrameVector",
    "HEISENBERG_CCM",
    "IdentityResult",
    "InvalidModelError",
    "ManifoldModel",
    "ModelFormatError",
    "NormalityReport",
    "OneForm",
    "RouteResult",
    "SELECTORS",
    "Scalar",
    "Status",
    "StructureConstants",
    "SuiteReport",
    "Tensor4",
    "TwoForm",
    "ValidationReport",
    "Workspace",
    "apply_structure",
    "build_abelian",
    "build_heisenberg",
    "check_normality",
    "cov_deriv_endo",
    "cov_deriv_oneform",
    "cov_deriv_vector",
    "curvature_value",
    "diff_expected",
    "diff_text_rows",
    "diff_tsv_rows",
    "exterior_d_oneform",
    "format_scalar",
    "format_sparse_vector",
    "holomorphic_sectional",
    "horizontal_projection",
    "inner_product",
    "levi_civita",
    "lie_checks",
    "load_model",
    "nijenhuis",
    "outer",
    "parse_expected",
    "parse_scalar",
    "parse_sparse_vector",
    "registry_ids",
    "require_lie_algebra",
    "ricci",
    "ricci_operator",
    "riemann",
    "riemann_symmetry_failures",
    "run_suite",
    "scalar_curvature",
    "second_bianchi_cyclic_sum",
    "second_bianchi_failures",
    "sectional",
    "sigma_form",
    "suite_text_rows",
    "suite_tsv_rows",
    "structure_tensor_checks",
    "tensor_S",
    "tensor_T",
    "validate_structure",
    "vector_combine",
    "wedge",
]
