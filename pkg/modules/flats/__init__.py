"""
Módulo de planos curvos, expressões fechadas e faixas complexas
"""
from .expressions import (
    Expression,
    ExpressionConnection,
    parse_expression,
    read_connection,
    write_connection,
    zero_matrix_text,
)
from .curved_flats import (
    CurvedFlatData,
    check_flat,
    curved_flat_from_eta,
    example_flat_connection,
    example_flat_frames,
    example_flat_matrices,
    example_flat_potentials,
    flat_residuals,
    gauge_normalize,
    split_connection,
)
from .strip import (
    ComplexStrip,
    StripForm,
    cauchy_riemann_estimate,
    cauchy_riemann_residual,
    check_holomorphic,
    check_strip_singularities,
    complexify_connection,
    closed_form_of,
    complexify_eta,
    extend_frame_holo,
    fit_strip,
    restrict_to_real,
    winding_number,
)

__all__ = [
    "Expression",
    "ExpressionConnection",
    "parse_expression",
    "read_connection",
    "write_connection",
    "zero_matrix_text",
    "CurvedFlatData",
    "check_flat",
    "curved_flat_from_eta",
    "example_flat_connection",
    "example_flat_frames",
    "example_flat_matrices",
    "example_flat_potentials",
    "flat_residuals",
    "gauge_normalize",
    "split_connection",
    "ComplexStrip",
    "StripForm",
    "cauchy_riemann_estimate",
    "cauchy_riemann_residual",
    "check_holomorphic",
    "check_strip_singularities",
    "complexify_connection",
    "closed_form_of",
    "complexify_eta",
    "extend_frame_holo",
    "fit_strip",
    "restrict_to_real",
    "winding_number",
]
