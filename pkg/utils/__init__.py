"""
Módulo de utilidades
"""
from .constants import (
    EXIT_CODES,
    INVOLUTION_KINDS,
    LAMBDA_RANGES,
    SPLIT_SIDES,
    EXPORT_FORMATS,
    VERIFY_GROUPS,
    ERROR_MESSAGES,
    SUCCESS_MESSAGES,
    WARNING_MESSAGES,
)

__all__ = [
    "EXIT_CODES",
    "INVOLUTION_KINDS",
    "LAMBDA_RANGES",
    "SPLIT_SIDES",
    "EXPORT_FORMATS",
    "VERIFY_GROUPS",
    "ERROR_MESSAGES",
    "SUCCESS_MESSAGES",
    "WARNING_MESSAGES",
]
