"""
Módulo de exportação de malhas
"""
from .mesh_export import (
    export_surface,
    quad_faces,
    strip_to_vtk,
    surface_to_csv,
    surface_to_obj,
    surface_to_vtk,
)

__all__ = [
    "export_surface",
    "quad_faces",
    "strip_to_vtk",
    "surface_to_csv",
    "surface_to_obj",
    "surface_to_vtk",
]
