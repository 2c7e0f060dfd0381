"""
Testes de avaliação, inserção de λ e verificações geométricas
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.frames import ConnectionFamily, FrameFamily, Grid, OneFormField, integrate_family
from modules.immersions import (
    CaseSpec,
    coframe_rank,
    evaluate_family,
    example_connection_family,
    example_frame_family,
    example_surface_formula,
    extract_adapted_frame,
    gauss_curvature_estimate,
    induced_metric,
    insert_for_case,
    insert_lambda,
    involution_residuals,
    metric_ratio,
    normal_flatness_residual,
    quadric_residual,
    second_fundamental_form_norm,
    surface_from_frames,
)
from modules.loopalg import sigma
from utils.exceptions import DomainError, InadmissibleCurvatureError, NonConstantRatioError, RealityError
from utils.helpers import max_abs


@pytest.fixture(scope="module")
def wide_grid():
    return Grid.create((64, 64), ((-1.0, 1.0), (-1.0, 1.0)))


def example_surface(grid, row, lam):
    return evaluate_family(example_frame_family(grid, [lam]), lam, CaseSpec(3, row))


class TestEvaluation:
    @pytest.mark.parametrize("row, lam", [(1, 0.5j), (1, -2.0j), (2, 2.0), (2, -0.4), (3, np.exp(0.3j)), (3, 1.0)])
    def test_normalized_at_base_point(self, small_grid, row, lam):
        surface = example_surface(small_grid, row, lam)
        assert_allclose(surface.points[small_grid.base_index], [0.0, 0.0, 1.0, 0.0], atol=1e-12)

    def test_column_matches_explicit_formula_on_circle(self, small_grid):
        lam = np.exp(0.3j)
        surface = example_surface(small_grid, 3, lam)
        points = small_grid.points
        expected = example_surface_formula(points[..., 0], points[..., 1], lam)
        assert_allclose(surface.points, expected.real, atol=1e-12)

    def test_rejects_lambda_outside_row(self, small_grid):
        family = example_frame_family(small_grid, [2.0])
        with pytest.raises(DomainError):
            evaluate_family(family, 2.0, CaseSpec(3, 3))

    def test_rejects_excluded_lambda(self, small_grid):
        family = example_frame_family(small_grid, [0.5j])
        with pytest.raises(DomainError):
            evaluate_family(family, 1j, CaseSpec(3, 1))

    def test_wrong_row_has_imaginary_column(self, small_grid):
        lam = 0.5j
        frames = example_frame_family(small_grid, [lam]).frames[0]
        with pytest.raises(RealityError):
            surface_from_frames(frames, small_grid, CaseSpec(3, 3), lam)

    def test_surface_table(self, small_grid):
        table = example_surface(small_grid, 3, 1.0).to_frame()
        assert list(table.columns) == ["u", "v", "x1", "x2", "x3", "x4"]
        assert len(table) == 81

    def test_example_family_fixed_by_case_involutions(self, small_grid):
        lam = np.exp(0.3j)
        family = example_frame_family(small_grid, [lam, -lam])
        residuals = involution_residuals(family, CaseSpec(3, 3), lam)
        assert set(residuals) == {"sigma", "rho3"}
        assert max(residuals.values()) <= 1e-10

    def test_frames_not_fixed_by_sigma_rejected(self, small_grid):
        lam = np.exp(0.3j)
        frames = example_frame_family(small_grid, [lam, -lam]).frames.copy()
        frames[1] = frames[0]
        family = FrameFamily(small_grid, [lam, -lam], frames)
        # a coluna em λ continua real; só a fixidez por σ denuncia a família
        surface_from_frames(frames[0], small_grid, CaseSpec(3, 3), lam)
        with pytest.raises(RealityError):
            evaluate_family(family, lam, CaseSpec(3, 3))

    def test_connection_not_fixed_by_rho_rejected(self, small_grid):
        lam = np.exp(0.3j)
        family = example_frame_family(small_grid, [lam])
        rotated = ConnectionFamily({d: OneFormField(f.grid, 1j * f.components) for d, f in family.connection.coeffs.items()})
        assert rotated.fixed_residual(CaseSpec(3, 3).record.rho) > 1e-3
        assert rotated.fixed_residual(sigma(CaseSpec(3, 3).record.P)) <= 1e-12
        family.connection = rotated
        with pytest.raises(RealityError):
            evaluate_family(family, lam, CaseSpec(3, 3))


class TestCurvature:
    @pytest.mark.parametrize("row, lam", [(1, 0.5j), (2, 2.0), (3, np.exp(0.3j))])
    def test_constant_curvature_and_quadric(self, wide_grid, row, lam):
        surface = example_surface(wide_grid, row, lam)
        expected = CaseSpec(3, row).record.curvature(lam)
        estimate = gauss_curvature_estimate(surface)
        assert estimate.relative_error(expected) <= 1e-2
        assert quadric_residual(surface) <= 1e-8

    def test_imaginary_row_lands_in_hyperbolic_space(self, small_grid):
        surface = example_surface(small_grid, 1, 0.5j)
        assert surface.quadric_sign == -1
        assert quadric_residual(surface) <= 1e-8

    def test_totally_geodesic_at_one(self, wide_grid):
        surface = example_surface(wide_grid, 3, 1.0)
        assert max_abs(surface.points[..., 3]) <= 1e-12
        assert second_fundamental_form_norm(surface) <= 1e-8


class TestMetrics:
    def test_metric_ratio_on_circle(self, wide_grid):
        connection = example_connection_family(wide_grid)
        ratio = metric_ratio(connection, 1.0, np.exp(0.3j), CaseSpec(3, 3))
        assert ratio == pytest.approx(np.cos(0.3) ** 2, rel=1e-6)

    def test_metric_components_are_proportional(self, small_grid):
        connection = example_connection_family(small_grid)
        spec = CaseSpec(3, 3)
        g1 = induced_metric(connection, 1.0, spec, (2, 6))
        g2 = induced_metric(connection, np.exp(0.3j), spec, (2, 6))
        assert_allclose(g2, np.cos(0.3) ** 2 * g1, rtol=1e-6, atol=1e-12)

    def test_non_proportional_metrics_rejected(self, small_grid):
        def coframe(entries):
            du, dv = np.zeros((4, 4), dtype=complex), np.zeros((4, 4), dtype=complex)
            du[0, 2], dv[1, 2] = entries
            return OneFormField.constant(small_grid, [du, dv])

        # C(λ) = diag(1 + λ, 1): g(1) = diag(4, 1) e g(−1) = diag(0, 1)
        connection = ConnectionFamily({0: coframe((1.0, 1.0)), 1: coframe((1.0, 0.0))})
        with pytest.raises(NonConstantRatioError):
            metric_ratio(connection, 1.0, -1.0, CaseSpec(3, 3))

    def test_coframe_rank_independent_of_lambda(self, small_grid):
        connection = example_connection_family(small_grid)
        for index in [(1, 1), (4, 4), (7, 2)]:
            assert {coframe_rank(connection, lam, index) for lam in (1.0, np.exp(0.3j), 2.0, 0.5j)} == {2}


class TestInsertion:
    def test_lambda0_reproduces_curvature(self):
        spec = CaseSpec(3, 2, c=0.5)
        assert abs(spec.lambda0.imag) < 1e-15
        assert spec.record.curvature(spec.lambda0) == pytest.approx(0.5)

    def test_inadmissible_curvatures(self):
        with pytest.raises(InadmissibleCurvatureError):
            CaseSpec(3, 3, c=0.5)
        with pytest.raises(InadmissibleCurvatureError):
            CaseSpec(3, 3, c=1.0)
        with pytest.raises(InadmissibleCurvatureError):
            CaseSpec(3, 2, c=0.0)

    @pytest.mark.parametrize("order", [(0, 1), (1, 0)])
    def test_round_trip_through_insertion(self, order):
        grid = Grid.create((65, 65), ((-0.5, 0.5), (-0.5, 0.5)))
        spec = CaseSpec(3, 2, c=0.5)
        lam0 = spec.lambda0.real
        surface = evaluate_family(example_frame_family(grid, [lam0]), lam0, spec)
        data = extract_adapted_frame(surface, order=order)
        family = integrate_family(insert_for_case(data, spec), [lam0], signature=spec.record.J)
        rebuilt = data.restore(surface_from_frames(family.frames[0], grid, spec, lam0))
        assert max_abs(rebuilt.points - surface.points) <= 1e-6

    def test_insert_lambda_blocks(self, unit_grid):
        spec = CaseSpec(3, 2, c=0.5)
        lam0 = spec.lambda0.real
        data = extract_adapted_frame(evaluate_family(example_frame_family(unit_grid, [lam0]), lam0, spec))
        family = insert_lambda(data, spec.untransformed_curvature, spec.eps)
        assert family.degrees == (-1, 0, 1)
        assert normal_flatness_residual(data.eta) <= 1e-8
        with pytest.raises(InadmissibleCurvatureError):
            insert_lambda(data, spec.untransformed_curvature, 0)
