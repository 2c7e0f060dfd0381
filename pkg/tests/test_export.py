"""
Testes de exportação de malhas
"""
import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from modules.export import export_surface, quad_faces, strip_to_vtk, surface_to_obj, surface_to_vtk
from modules.factorization import circle_lambdas
from modules.flats import ComplexStrip, extend_frame_holo
from modules.frames import Grid
from modules.immersions import CaseSpec, evaluate_family, example_connection, example_frame_family
from utils.exceptions import DimensionError, InputError


@pytest.fixture
def surface(small_grid):
    lam = np.exp(0.3j)
    return evaluate_family(example_frame_family(small_grid, [lam]), lam, CaseSpec(3, 3))


def test_quad_faces_indexing():
    assert_array_equal(quad_faces((3, 2)), [[1, 3, 4, 2], [3, 5, 6, 4]])


def test_quad_faces_require_surface():
    with pytest.raises(DimensionError):
        quad_faces((3, 3, 3))


def test_csv_round_trip(tmp_path, surface):
    path = export_surface(surface, tmp_path / "surface.csv")
    table = pd.read_csv(path)
    assert list(table.columns) == ["u", "v", "x1", "x2", "x3", "x4"]
    assert_allclose(table[["x1", "x2", "x3", "x4"]].to_numpy(), surface.points.reshape(-1, 4), atol=1e-14)


def test_obj_counts(tmp_path, surface):
    path = surface_to_obj(surface, tmp_path / "surface.obj")
    lines = path.read_text().splitlines()
    assert sum(line.startswith("v ") for line in lines) == 81
    assert sum(line.startswith("f ") for line in lines) == 64


def test_obj_rejects_bad_projection(tmp_path, surface):
    with pytest.raises(InputError):
        surface_to_obj(surface, tmp_path / "surface.obj", projection=(0, 1, 7))


def test_vtk_header_and_scalars(tmp_path, surface):
    text = surface_to_vtk(surface, tmp_path / "surface.vtk").read_text()
    assert text.startswith("# vtk DataFile Version 3.0\n")
    assert "DIMENSIONS 9 9 1" in text
    assert "POINTS 81 double" in text
    assert "SCALARS x4 double 1" in text


def test_export_is_deterministic(tmp_path, surface):
    first = export_surface(surface, tmp_path / "a.vtk").read_bytes()
    second = export_surface(surface, tmp_path / "b.vtk").read_bytes()
    assert first == second


def test_unknown_format(tmp_path, surface):
    with pytest.raises(InputError):
        export_surface(surface, tmp_path / "surface.stl")


def test_strip_slices(tmp_path):
    grid = Grid.create((5, 5), ((-0.1, 0.1), (-0.1, 0.1)))
    strip = ComplexStrip.create(grid, 0.05, 3)
    family = extend_frame_holo(example_connection(), strip, circle_lambdas(8), check=False)
    text = strip_to_vtk(family, 1.0, CaseSpec(3, 3), tmp_path / "strip.vtk").read_text()
    assert "DIMENSIONS 5 5 9" in text
    assert "SCALARS imag_norm double 1" in text
    assert "SCALARS offset double 1" in text


def test_strip_export_requires_strip(tmp_path, small_grid):
    family = example_frame_family(small_grid, [1.0])
    with pytest.raises(InputError):
        strip_to_vtk(family, 1.0, CaseSpec(3, 3), tmp_path / "strip.vtk")
