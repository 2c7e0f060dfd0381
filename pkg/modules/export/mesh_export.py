"""
Exportação de superfícies e faixas: CSV, OBJ e VTK legado (ASCII)

Os formatos são texto puro; blocos numéricos saem por pandas com o formato
de ponto flutuante fixo de EXPORT_CONFIG, de modo que a mesma entrada gera
arquivos idênticos byte a byte.
"""
from pathlib import Path
from typing import Optional, Sequence, TextIO

import numpy as np
import pandas as pd

from config.settings import EXPORT_CONFIG
from modules.flats import ComplexStrip
from modules.frames import FrameFamily
from modules.immersions import CaseSpec, ImmersionSurface, column_of
from utils.constants import EXPORT_FORMATS
from utils.exceptions import DimensionError, InputError
from utils.logger import get_logger

logger = get_logger(__name__)

VTK_HEADER = "# vtk DataFile Version 3.0"


def _prepare(path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write_block(handle: TextIO, values: np.ndarray, tag: Optional[str] = None, integer: bool = False):
    """Bloco de linhas separadas por espaço (com prefixo opcional, ex. 'v')"""
    frame = pd.DataFrame(np.asarray(values))
    if tag is not None:
        frame.insert(0, "tag", tag)
    frame.to_csv(
        handle,
        sep=" ",
        header=False,
        index=False,
        float_format=None if integer else EXPORT_CONFIG["float_format"],
        lineterminator="\n",
    )


def _projection(surface: ImmersionSurface, projection: Sequence[int]) -> np.ndarray:
    projection = tuple(int(i) for i in projection)
    if len(projection) != 3 or any(i < 0 or i >= surface.n for i in projection):
        raise InputError(f"Projeção inválida {projection} para n = {surface.n}")
    return surface.points[..., list(projection)]


def _require_surface_grid(shape: Sequence[int]):
    if len(shape) != 2:
        raise DimensionError(f"Malhas exigem domínio bidimensional, recebido shape {tuple(shape)}")


def quad_faces(shape: Sequence[int]) -> np.ndarray:
    """
    Faces quadrilaterais da grade (índices de vértice a partir de 1)

    O vértice (i, j) tem índice i·n_v + j + 1, a ordem de ImmersionSurface.to_frame.
    """
    _require_surface_grid(shape)
    nu, nv = shape
    i, j = np.meshgrid(np.arange(nu - 1), np.arange(nv - 1), indexing="ij")
    corner = (i * nv + j).ravel() + 1
    return np.stack([corner, corner + nv, corner + nv + 1, corner + 1], axis=-1)


def surface_to_csv(surface: ImmersionSurface, path) -> Path:
    """Tabela (u, v, x1..xn) com precisão fixa"""
    path = _prepare(path)
    surface.to_frame().to_csv(path, index=False, float_format=EXPORT_CONFIG["float_format"], lineterminator="\n")
    return path


def surface_to_obj(surface: ImmersionSurface, path, projection: Sequence[int] = None) -> Path:
    """
    Malha Wavefront OBJ da projeção em três coordenadas

    Args:
        surface: Superfície real na grade
        path: Arquivo de saída
        projection: Coordenadas ambientes usadas como (x, y, z)
    """
    projection = EXPORT_CONFIG["obj_projection"] if projection is None else projection
    _require_surface_grid(surface.grid.shape)
    vertices = _projection(surface, projection).reshape(-1, 3)
    path = _prepare(path)
    with path.open("w", newline="\n") as handle:
        handle.write(f"# loopframe: coordenadas {list(projection)}\n")
        _write_block(handle, vertices, tag="v")
        _write_block(handle, quad_faces(surface.grid.shape), tag="f", integer=True)
    logger.debug("OBJ: %d vértices em %s", vertices.shape[0], path)
    return path


def _vtk_structured(handle: TextIO, title: str, dimensions: Sequence[int], points: np.ndarray, scalars: dict):
    """Grade estruturada; points (P, 3) com o primeiro índice variando mais rápido"""
    count = points.shape[0]
    handle.write(f"{VTK_HEADER}\n{title}\nASCII\nDATASET STRUCTURED_GRID\n")
    handle.write("DIMENSIONS " + " ".join(str(int(d)) for d in dimensions) + "\n")
    handle.write(f"POINTS {count} double\n")
    _write_block(handle, points)
    if scalars:
        handle.write(f"POINT_DATA {count}\n")
    for name, values in scalars.items():
        handle.write(f"SCALARS {name} double 1\nLOOKUP_TABLE default\n")
        _write_block(handle, np.asarray(values).reshape(-1, 1))


def _vtk_order(values: np.ndarray, dims: int) -> np.ndarray:
    """(i, j[, k], ...) → ordem do VTK (i mais rápido)"""
    axes = tuple(range(dims))[::-1] + tuple(range(dims, values.ndim))
    return np.transpose(values, axes)


def surface_to_vtk(
    surface: ImmersionSurface,
    path,
    projection: Sequence[int] = None,
    scalar_coordinate: Optional[int] = None,
) -> Path:
    """
    Grade estruturada VTK legado (ASCII)

    A coordenada scalar_coordinate (padrão: a quarta, se existir) vai como
    dado escalar por ponto.
    """
    projection = EXPORT_CONFIG["obj_projection"] if projection is None else projection
    _require_surface_grid(surface.grid.shape)
    if scalar_coordinate is None:
        scalar_coordinate = EXPORT_CONFIG["vtk_scalar_coordinate"]
    points = _vtk_order(_projection(surface, projection), 2).reshape(-1, 3)
    scalars = {}
    if 0 <= scalar_coordinate < surface.n:
        scalars[f"x{scalar_coordinate + 1}"] = _vtk_order(surface.points[..., scalar_coordinate], 2)

    path = _prepare(path)
    nu, nv = surface.grid.shape
    with path.open("w", newline="\n") as handle:
        _vtk_structured(handle, "loopframe surface", (nu, nv, 1), points, scalars)
    return path


def strip_to_vtk(
    family: FrameFamily,
    lam: complex,
    spec: CaseSpec,
    path,
    projection: Sequence[int] = None,
) -> Path:
    """
    Faixa complexa como fatias VTK empilhadas, uma por offset imaginário

    Cada fatia k contém Re f(x + i y_k) da coluna m+1 de Ad_T F_λ; os escalares
    registram |Im f| e |y_k|.
    """
    strip = family.domain
    if not isinstance(strip, ComplexStrip):
        raise InputError("strip_to_vtk exige uma família definida numa faixa complexa")
    _require_surface_grid(strip.grid.shape)
    projection = tuple(EXPORT_CONFIG["obj_projection"] if projection is None else projection)
    record = spec.record
    column = column_of(family.frame_at(lam), record.T, record.m)  # (*grid, *imag, n)
    if any(i < 0 or i >= column.shape[-1] for i in projection) or len(projection) != 3:
        raise InputError(f"Projeção inválida {projection} para n = {column.shape[-1]}")

    nu, nv = strip.grid.shape
    slices = int(np.prod(strip.imag_counts))
    column = column.reshape(nu, nv, slices, -1)
    offsets = np.linalg.norm(strip.points.imag.reshape(nu, nv, slices, strip.m), axis=-1)
    points = _vtk_order(column.real[..., list(projection)], 3).reshape(-1, 3)
    scalars = {
        "imag_norm": _vtk_order(np.linalg.norm(column.imag, axis=-1), 3),
        "offset": _vtk_order(offsets, 3),
    }

    path = _prepare(path)
    with path.open("w", newline="\n") as handle:
        _vtk_structured(handle, "loopframe strip", (nu, nv, slices), points, scalars)
    logger.debug("faixa VTK: %d fatia(s) em %s", slices, path)
    return path


def export_surface(surface: ImmersionSurface, path, fmt: Optional[str] = None) -> Path:
    """Exporta no formato pedido (ou deduzido da extensão do arquivo)"""
    fmt = (fmt or Path(path).suffix.lstrip(".")).lower()
    writers = {
        EXPORT_FORMATS["CSV"]: surface_to_csv,
        EXPORT_FORMATS["OBJ"]: surface_to_obj,
        EXPORT_FORMATS["VTK"]: surface_to_vtk,
    }
    if fmt not in writers:
        raise InputError(f"Formato de exportação desconhecido: '{fmt}' (use {', '.join(writers)})")
    return writers[fmt](surface, path)
