"""
Módulo de configurações
"""
from .settings import (
    APP_CONFIG,
    LOOP_CONFIG,
    TOLERANCES,
    GRID_CONFIG,
    INTEGRATOR_CONFIG,
    FACTORIZATION_CONFIG,
    STRIP_CONFIG,
    LAMBDA_RANGE_CONFIG,
    EXPORT_CONFIG,
    REPORT_CONFIG,
    EXTEND_CONFIG,
)

__all__ = [
    "APP_CONFIG",
    "LOOP_CONFIG",
    "TOLERANCES",
    "GRID_CONFIG",
    "INTEGRATOR_CONFIG",
    "FACTORIZATION_CONFIG",
    "STRIP_CONFIG",
    "LAMBDA_RANGE_CONFIG",
    "EXPORT_CONFIG",
    "REPORT_CONFIG",
    "EXTEND_CONFIG",
]
