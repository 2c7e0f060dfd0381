"""
Testes de grades, formas de Maurer-Cartan e do integrador
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm

from modules.frames import (
    ClosedFormConnection,
    ConnectionFamily,
    Grid,
    OneFormField,
    derivative,
    fornberg_weights,
    integrate_family,
    integrate_frame,
    mc_form,
    mc_residual,
    read_frames,
    write_frames,
)
from modules.immersions import example_connection, example_connection_family, example_frame_family, example_mc_form
from modules.loopalg import case_catalog
from utils.exceptions import DomainError, InputError, IntegrabilityError
from utils.helpers import max_abs

X = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], dtype=complex)
Y = np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=complex)


def rotation(generator, t):
    """exp(t·G) para G de rotação num plano (G³ = −G)"""
    t = np.asarray(t)[..., None, None]
    return np.eye(3) + np.sin(t) * generator + (1 - np.cos(t)) * (generator @ generator)


class RotationConnection(ClosedFormConnection):
    """A = F⁻¹dF para F = exp(aX)·exp(bY), a = sin(2u + v), b = v cos u"""

    def __init__(self):
        super().__init__(n=3, m=2, degrees=(0,))

    def coefficients(self, points):
        u, v = points[..., 0], points[..., 1]
        b = v * np.cos(u)
        turned = rotation(Y, -b) @ X @ rotation(Y, b)
        scalars = [(2 * np.cos(2 * u + v), -v * np.sin(u)), (np.cos(2 * u + v), np.cos(u))]
        return {0: np.stack([da[..., None, None] * turned + db[..., None, None] * Y for da, db in scalars])}

    def frames(self, points):
        u, v = points[..., 0], points[..., 1]
        return rotation(X, np.sin(2 * u + v)) @ rotation(Y, v * np.cos(u))


class TestGrid:
    def test_base_point_closest_to_origin(self):
        grid = Grid.create((9, 9), ((-0.15, 0.15), (-0.15, 0.15)))
        assert grid.base_index == (4, 4)
        assert_allclose(grid.base_point, [0.0, 0.0], atol=1e-15)

    def test_refined_keeps_base_point(self, small_grid):
        refined = small_grid.refined()
        assert refined.shape == (17, 17)
        assert_allclose(refined.base_point, small_grid.base_point)

    def test_rejects_degenerate_range(self):
        with pytest.raises(InputError):
            Grid.create((5, 5), ((0.0, 0.0), (0.0, 1.0)))


class TestDifferences:
    def test_fornberg_central_weights(self):
        assert_allclose(fornberg_weights((-1.0, 0.0, 1.0)), (-0.5, 0.0, 0.5), atol=1e-15)

    def test_fourth_order_derivative_of_sine(self):
        x = np.linspace(0.0, 1.0, 41)
        d = derivative(np.sin(x), x[1] - x[0], axis=0, accuracy=4)
        assert max_abs(d - np.cos(x)) < 1e-5


class TestMaurerCartan:
    def test_example_expressions_match_closed_form(self, rng):
        connection = example_connection()
        for _ in range(5):
            u, v = rng.uniform(-1.0, 1.0, 2)
            lam = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.random())
            values = connection.evaluate(np.array([[u, v]]), lam)[:, 0]
            assert_allclose(values, np.stack(example_mc_form(u, v, lam)), atol=1e-10)

    def test_finite_differences_recover_example_form(self):
        grid = Grid.create((64, 64), ((-0.5, 0.5), (-0.5, 0.5)))
        lam = np.exp(0.3j)
        recovered = mc_form(example_frame_family(grid, [lam]).frames[0], grid, accuracy=4)
        exact = example_connection_family(grid).evaluate(lam)
        assert max_abs(recovered.components - exact.components) < 1e-3

    def test_example_is_integrable(self, unit_grid):
        connection = example_connection_family(unit_grid)
        for lam in (1.0, np.exp(0.3j), 2.0, 0.5j):
            assert mc_residual(connection, lam, "analytic") <= 1e-6

    def test_commuting_constant_form_is_flat(self, small_grid):
        connection = ConnectionFamily({0: OneFormField.constant(small_grid, [X, 2 * X])})
        assert mc_residual(connection, 1.0) < 1e-12


class TestIntegrator:
    def test_constant_commuting_connection(self, small_grid):
        connection = ConnectionFamily({0: OneFormField.constant(small_grid, [X, 2 * X])})
        family = integrate_family(connection, [1.0])
        points = small_grid.points
        expected = np.array([[expm(u * X + 2 * v * X) for u, v in row] for row in points])
        assert_allclose(family.frames[0], expected, atol=1e-12)
        assert family.base_residual() < 1e-14

    def test_example_against_closed_frames(self, unit_grid):
        lams = [1.0, np.exp(0.3j), 2.0, 0.5j]
        connection = example_connection_family(unit_grid)
        numeric = integrate_family(connection, lams, signature=case_catalog(3, 3).J)
        exact = example_frame_family(unit_grid, lams)
        assert max_abs(numeric.frames - exact.frames) <= 1e-6

    def test_rejects_non_integrable_connection(self, small_grid):
        connection = ConnectionFamily({0: OneFormField.constant(small_grid, [X, Y])})
        with pytest.raises(IntegrabilityError) as info:
            integrate_family(connection, [1.0])
        assert info.value.residual > 0.1

    def test_rejects_zero_lambda(self, small_grid):
        connection = example_connection_family(small_grid)
        with pytest.raises(DomainError):
            integrate_family(connection, [0.0])

    def test_integrate_frame_single_lambda(self, small_grid):
        lam = np.exp(0.3j)
        frame = integrate_frame(example_connection_family(small_grid), lam, signature=case_catalog(3, 3).J)
        exact = example_frame_family(small_grid, [lam]).frames[0]
        assert frame.shape == (9, 9, 4, 4)
        assert max_abs(frame - exact) <= 1e-6

    def test_fourth_order_convergence(self):
        connection = RotationConnection()
        errors = []
        for count in (9, 17, 33):
            grid = Grid.create((count, count), ((-1.0, 1.0), (-1.0, 1.0)))
            family = integrate_family(ConnectionFamily.from_closed_form(connection, grid), [1.0])
            errors.append(max_abs(family.frames[0] - connection.frames(grid.points)))
        orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
        assert errors[-1] <= 1e-5
        assert np.all(orders >= 3.0), orders

    def test_axis_order_gives_same_frames(self, unit_grid):
        rotating = ConnectionFamily.from_closed_form(RotationConnection(), unit_grid)
        first = integrate_family(rotating, [1.0])
        second = integrate_family(rotating, [1.0], axis_order=(1, 0))
        assert max_abs(first.frames - second.frames) <= 1e-5

        lams = [np.exp(0.3j), 2.0]
        example = example_connection_family(unit_grid)
        first = integrate_family(example, lams)
        second = integrate_family(example, lams, axis_order=(1, 0))
        assert max_abs(first.frames - second.frames) <= 1e-8


def test_frames_file_round_trip(tmp_path, small_grid):
    family = example_frame_family(small_grid, [1.0, 0.5j])
    restored, header = read_frames(write_frames(tmp_path / "frames.json", family))
    assert header["kind"] == "frames"
    assert_allclose(restored.frames, family.frames, rtol=0, atol=0)
    assert_allclose(restored.lams, family.lams)
