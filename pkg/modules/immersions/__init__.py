"""
Módulo de imersões: inserção de λ, avaliação de famílias e verificações
"""
from .case_spec import CaseSpec
from .surface import ImmersionSurface, column_of, evaluate_family, involution_residuals, surface_from_frames
from .adapted_frame import (
    AdaptedFrameData,
    adapted_frame_columns,
    extract_adapted_frame,
    insert_for_case,
    insert_lambda,
    insertion_scalings,
    signature_eps,
)
from .verifiers import (
    CurvatureEstimate,
    coframe_matrix,
    coframe_rank,
    first_fundamental_form,
    gauss_curvature_estimate,
    induced_metric,
    metric_ratio,
    normal_flatness_residual,
    quadric_residual,
    second_fundamental_form_norm,
)
from .example_case3 import (
    example_case3,
    example_connection,
    example_connection_family,
    example_frame_derivatives,
    example_frame_family,
    example_mc_form,
    example_parameters,
    example_surface_formula,
)

__all__ = [
    "CaseSpec",
    "ImmersionSurface",
    "column_of",
    "evaluate_family",
    "involution_residuals",
    "surface_from_frames",
    "AdaptedFrameData",
    "adapted_frame_columns",
    "extract_adapted_frame",
    "insert_for_case",
    "insert_lambda",
    "insertion_scalings",
    "signature_eps",
    "CurvatureEstimate",
    "coframe_matrix",
    "coframe_rank",
    "first_fundamental_form",
    "gauss_curvature_estimate",
    "induced_metric",
    "metric_ratio",
    "normal_flatness_residual",
    "quadric_residual",
    "second_fundamental_form_norm",
    "example_case3",
    "example_connection",
    "example_connection_family",
    "example_frame_derivatives",
    "example_frame_family",
    "example_mc_form",
    "example_parameters",
    "example_surface_formula",
]
