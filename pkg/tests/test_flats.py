"""
Testes de expressões, planos curvos e da faixa complexa
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm

from modules.factorization import circle_lambdas
from modules.flats import (
    ComplexStrip,
    CurvedFlatData,
    ExpressionConnection,
    cauchy_riemann_estimate,
    cauchy_riemann_residual,
    check_holomorphic,
    check_strip_singularities,
    check_flat,
    complexify_eta,
    curved_flat_from_eta,
    example_flat_connection,
    example_flat_frames,
    extend_frame_holo,
    fit_strip,
    flat_residuals,
    gauge_normalize,
    parse_expression,
    read_connection,
    restrict_to_real,
    winding_number,
    write_connection,
    zero_matrix_text,
)
from modules.frames import ConnectionFamily, Grid, OneFormField
from modules.loopalg import default_P, default_Q, rho2, rho3, rho_hat3
from utils.exceptions import ExpressionError, InputError, IntegrabilityError, StripSingularityError
from utils.helpers import max_abs


class TestExpressions:
    def test_evaluates_on_complex_points(self):
        tree = parse_expression("(mul (const 0.5) (cos v))")
        v = np.array([0.0, 0.3 + 0.1j])
        assert_allclose(tree.evaluate({"v": v}), 0.5 * np.cos(v))

    def test_integer_power_and_division(self):
        tree = parse_expression("(div 1 (pow u 2))")
        assert tree.evaluate({"u": np.array(2.0)}) == pytest.approx(0.25)
        assert len(tree.denominators()) == 1

    def test_algebra_simplifies(self):
        assert parse_expression("(sub (mul u v) (mul v u))").is_zero
        assert parse_expression("(pow (exp u) -1)").denominators() == []

    @pytest.mark.parametrize("text", ["(foo u)", "(pow u 0.5)", "(add u", "(sub u)", "w", ""])
    def test_rejects_malformed(self, text):
        with pytest.raises(ExpressionError):
            parse_expression(text)

    def test_connection_file_round_trip(self, tmp_path, small_grid):
        connection = example_flat_connection(twisted=True)
        restored = read_connection(write_connection(tmp_path / "eta.json", connection))
        points = small_grid.points
        assert_allclose(restored.coefficients(points)[1], connection.coefficients(points)[1])

    def test_shape_mismatch(self):
        with pytest.raises(InputError):
            ExpressionConnection({1: [zero_matrix_text(3), zero_matrix_text(2)]})


class TestCurvedFlats:
    @pytest.mark.parametrize("twisted", [False, True])
    def test_example_flat_equations(self, unit_grid, twisted):
        family = ConnectionFamily.from_closed_form(example_flat_connection(twisted), unit_grid)
        assert max(check_flat(family)) <= 1e-6

    @pytest.mark.parametrize("twisted", [False, True])
    def test_integration_matches_exponential(self, unit_grid, twisted):
        lams = circle_lambdas(8)
        family = curved_flat_from_eta(example_flat_connection(twisted), lams, unit_grid)
        exact = np.stack([example_flat_frames(unit_grid.points, lam, twisted) for lam in lams])
        assert max_abs(family.frames - exact) <= 1e-6

    @pytest.mark.parametrize("twisted", [False, True])
    def test_curved_flat_data_drives_integration(self, unit_grid, twisted):
        rho = rho_hat3(default_Q(2, 1)) if twisted else rho2()
        data = CurvedFlatData.from_closed_form(example_flat_connection(twisted), unit_grid, default_P(2, 1), rho)
        assert max(data.validate()) <= 1e-12
        lams = circle_lambdas(4)
        family = curved_flat_from_eta(data, lams)
        exact = np.stack([example_flat_frames(unit_grid.points, lam, twisted) for lam in lams])
        assert max_abs(family.frames - exact) <= 1e-6

    def test_curved_flat_data_rejects_wrong_involutions(self, small_grid):
        twisted = CurvedFlatData.from_closed_form(example_flat_connection(True), small_grid, default_P(2, 1), rho2())
        assert twisted.reality_residual() > 0.5
        with pytest.raises(InputError):
            curved_flat_from_eta(twisted, [1.0])
        outside_p = CurvedFlatData(twisted.eta, default_Q(2, 1))
        assert outside_p.sigma_residual() > 0.5
        with pytest.raises(InputError):
            outside_p.validate()
        with pytest.raises(InputError):
            CurvedFlatData(twisted.eta, default_P(2, 1), rho3()).reality_residual()

    def test_rejects_non_commuting_eta(self, small_grid):
        du, dv = zero_matrix_text(3), zero_matrix_text(3)
        du[0][1], du[1][0] = "1", "-1"
        dv[0][2], dv[2][0] = "1", "-1"
        with pytest.raises(IntegrabilityError):
            curved_flat_from_eta(ExpressionConnection({1: [du, dv]}), [1.0], small_grid)


class TestStrip:
    def test_points_and_real_slice(self, small_grid):
        strip = ComplexStrip.create(small_grid, 0.1, 9)
        points = strip.points
        assert points.shape == (9, 9, 9, 9, 2)
        assert_allclose(strip.real_slice(points), small_grid.points)
        assert max_abs(points.imag) == pytest.approx(0.1)

    def test_requires_odd_samples(self, small_grid):
        with pytest.raises(InputError):
            ComplexStrip.create(small_grid, 0.1, 4)

    def test_winding_number(self):
        circle = np.exp(2j * np.pi * np.arange(64) / 64)
        assert winding_number(circle) == 1
        assert winding_number(circle + 3) == 0

    def test_strip_halved_around_pole(self, small_grid):
        du, dv = zero_matrix_text(2), zero_matrix_text(2)
        du[0][1] = "(div 1 (sub u (const 0.07 0.06)))"
        connection = ExpressionConnection({1: [du, dv]})
        fitted = fit_strip(connection, ComplexStrip.create(small_grid, 0.1, 5))
        assert fitted.eps == (0.05, 0.05)

    @pytest.mark.parametrize("radius_sq, inside", [(0.001521, True), (0.0036, False)])
    def test_pole_depending_on_both_coordinates(self, small_grid, radius_sq, inside):
        # zeros em (0.0375 + iy, 0.0375 + iz) com y² + z² = radius_sq, longe dos pontos da faixa
        du, dv = zero_matrix_text(2), zero_matrix_text(2)
        du[0][1] = f"(div 1 (add (pow (sub u 0.0375) 2) (pow (sub v 0.0375) 2) {radius_sq}))"
        connection = ExpressionConnection({1: [du, dv]})
        strip = ComplexStrip.create(small_grid, 0.04, 5)
        if inside:
            with pytest.raises(StripSingularityError):
                check_strip_singularities(connection, strip)
        else:
            check_strip_singularities(connection, strip)

    def test_holomorphic_extension_of_flat(self, small_grid):
        strip = ComplexStrip.create(small_grid, 0.1, 9)
        lams = circle_lambdas(8)
        family = extend_frame_holo(example_flat_connection(), strip, lams)
        exact = np.stack([example_flat_frames(strip.points, lam) for lam in lams])
        assert max_abs(family.frames - exact) <= 1e-6
        residual, limit = check_holomorphic(family.frames, strip, lead=1)
        assert residual <= limit
        assert_allclose(restrict_to_real(family).frames, exact[(slice(None), *[slice(None)] * 2, 4, 4)], atol=1e-6)

    def test_exact_flat_frames_pass_holomorphy_check(self, small_grid):
        strip = ComplexStrip.create(small_grid, 0.1, 9)
        exact = example_flat_frames(strip.points, np.exp(0.3j))[None]
        residual, truncation = cauchy_riemann_estimate(exact, strip, lead=1)
        assert residual <= 1e-6
        assert residual <= check_holomorphic(exact, strip, lead=1)[1]
        assert residual < truncation

    def test_non_holomorphic_frames_rejected(self, small_grid):
        strip = ComplexStrip.create(small_grid, 0.1, 9)
        points = strip.points
        stretched = points.real + 1.05j * points.imag
        frames = example_flat_frames(stretched, np.exp(0.3j))[None]
        with pytest.raises(IntegrabilityError):
            check_holomorphic(frames, strip, lead=1)

    def test_extension_is_rho2_real_on_real_slice(self, small_grid):
        strip = ComplexStrip.create(small_grid, 0.1, 5)
        lams = [2.0, -0.5, 0.7]
        real = restrict_to_real(extend_frame_holo(example_flat_connection(), strip, lams))
        assert max_abs(real.frames.imag) <= 1e-8
        assert real.fixed_residual(rho2()) <= 1e-8
        twisted = restrict_to_real(extend_frame_holo(example_flat_connection(twisted=True), strip, lams))
        assert twisted.fixed_residual(rho2()) > 1e-3


class TestGaugeAndResiduals:
    X = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], dtype=complex)
    Y = np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=complex)

    def test_flat_residuals_of_example(self, unit_grid):
        eta = ConnectionFamily.from_closed_form(example_flat_connection(), unit_grid).coefficient(1)
        closed, wedge = flat_residuals(eta)
        assert closed <= 1e-6
        assert wedge <= 1e-6

    def test_gauge_without_degree_zero_is_identity(self, small_grid):
        A1 = OneFormField.constant(small_grid, [self.Y, self.X])
        assert gauge_normalize(OneFormField.constant(small_grid, [0 * self.X, 0 * self.X]), A1) is A1

    def test_gauge_conjugates_by_degree_zero_frame(self, small_grid):
        A0 = OneFormField.constant(small_grid, [self.X, 0 * self.X])
        A1 = OneFormField.constant(small_grid, [self.Y, 0 * self.Y])
        eta = gauge_normalize(A0, A1)
        u = small_grid.points[..., 0]
        K = np.array([expm(x * self.X) for x in u.ravel()]).reshape(*u.shape, 3, 3)
        assert_allclose(eta.components[0], K @ self.Y @ np.linalg.inv(K), atol=1e-10)

    def test_gauge_rejects_non_integrable_degree_zero(self, small_grid):
        A0 = OneFormField.constant(small_grid, [self.X, self.Y])
        with pytest.raises(IntegrabilityError):
            gauge_normalize(A0, OneFormField.constant(small_grid, [self.Y, self.X]))

    def test_complexified_eta_restricts_to_eta(self, small_grid):
        strip = ComplexStrip.create(small_grid, 0.1, 5)
        form = complexify_eta(example_flat_connection(), strip)
        eta = ConnectionFamily.from_closed_form(example_flat_connection(), small_grid).coefficient(1)
        assert_allclose(form.real_slice().components, eta.components, atol=1e-14)
        with pytest.raises(InputError):
            complexify_eta(example_flat_connection(), strip, degree=0)

    def test_complexified_eta_is_holomorphic(self, small_grid):
        strip = ComplexStrip.create(small_grid, 0.1, 5)
        form = complexify_eta(example_flat_connection(), strip)
        assert form.cauchy_riemann_residual() <= 1e-5
        assert cauchy_riemann_residual(np.conj(form.components), strip, lead=1) > 0.1
