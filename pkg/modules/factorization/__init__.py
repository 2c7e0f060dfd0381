"""
Módulo de fatoração: Birkhoff, DPW, pluriharmonicidade e extensão
"""
from .circle import CircleSampling, check_resolution, circle_points
from .birkhoff import SplitResult, birkhoff_split, in_big_cell
from .dpw import (
    apply_to_family,
    circle_lambdas,
    degree_one_dominance,
    dpw_backward,
    dpw_forward,
    family_sampling,
    mc_degree_support,
    renormalize_at,
    tau_compatibility_residual,
)
from .pluriharmonic import (
    pluriharmonic_residual,
    pluriharmonic_residuals,
    reality_residual_at,
    reality_residual_on_M,
    type_components,
    with_antiholomorphic_term,
)
from .extension import (
    ExtensionResult,
    TotallyGeodesicReport,
    cartan_embedding,
    column_residual,
    gluing_residual,
    pluriharmonic_extend,
    pluriharmonic_from_curved_flat,
    totally_geodesic_candidate,
)

__all__ = [
    "CircleSampling",
    "check_resolution",
    "circle_points",
    "SplitResult",
    "birkhoff_split",
    "in_big_cell",
    "apply_to_family",
    "circle_lambdas",
    "degree_one_dominance",
    "dpw_backward",
    "dpw_forward",
    "family_sampling",
    "mc_degree_support",
    "renormalize_at",
    "tau_compatibility_residual",
    "pluriharmonic_residual",
    "pluriharmonic_residuals",
    "reality_residual_at",
    "reality_residual_on_M",
    "type_components",
    "with_antiholomorphic_term",
    "ExtensionResult",
    "TotallyGeodesicReport",
    "cartan_embedding",
    "column_residual",
    "gluing_residual",
    "pluriharmonic_extend",
    "pluriharmonic_from_curved_flat",
    "totally_geodesic_candidate",
]
