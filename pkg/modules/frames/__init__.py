"""
Módulo de grades, 1-formas e integração de referenciais
"""
from .grid import Grid
from .differences import derivative, fornberg_weights
from .fields import ClosedFormConnection, ConnectionFamily, FrameFamily, OneFormField
from .maurer_cartan import (
    cell_residual,
    closed_residual,
    field_mc_residual,
    integrability_threshold,
    mc_components,
    mc_form,
    mc_residual,
    wedge_residual,
)
from .integrator import (
    check_integrability,
    group_projector,
    integrate_family,
    integrate_frame,
    magnus_exponent,
    march_lines,
)
from .field_io import read_frames, write_frames

__all__ = [
    "Grid",
    "derivative",
    "fornberg_weights",
    "ClosedFormConnection",
    "ConnectionFamily",
    "FrameFamily",
    "OneFormField",
    "cell_residual",
    "closed_residual",
    "field_mc_residual",
    "integrability_threshold",
    "mc_components",
    "mc_form",
    "mc_residual",
    "wedge_residual",
    "check_integrability",
    "group_projector",
    "integrate_family",
    "integrate_frame",
    "magnus_exponent",
    "march_lines",
    "read_frames",
    "write_frames",
]
