"""
Testes de Birkhoff, DPW e da extensão pluriharmônica
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm

from modules.factorization import (
    CircleSampling,
    birkhoff_split,
    check_resolution,
    circle_lambdas,
    column_residual,
    degree_one_dominance,
    dpw_backward,
    dpw_forward,
    gluing_residual,
    in_big_cell,
    pluriharmonic_extend,
    pluriharmonic_from_curved_flat,
    pluriharmonic_residual,
    reality_residual_on_M,
    renormalize_at,
    tau_compatibility_residual,
    totally_geodesic_candidate,
    with_antiholomorphic_term,
)
from modules.flats import ComplexStrip, example_flat_connection, example_flat_matrices
from modules.frames import FrameFamily, Grid
from modules.immersions import CaseSpec, example_frame_family
from modules.loopalg import LaurentLoop, sigma, default_P, tau3
from utils.exceptions import BigCellError, InputError
from utils.helpers import max_abs

PLUS = LaurentLoop({0: np.eye(2), 1: np.array([[0.0, 1.0], [0.0, 0.0]])})
MINUS = LaurentLoop({0: np.array([[2.0, 0.0], [0.0, 0.5]]), -1: np.array([[0.0, 0.0], [0.5, 0.0]])})
OUTSIDE = LaurentLoop({1: np.diag([1.0, 0.0]), -1: np.diag([0.0, 1.0])})


@pytest.fixture(scope="module")
def patch():
    grid = Grid.create((9, 9), ((-0.15, 0.15), (-0.15, 0.15)))
    family = example_frame_family(grid, circle_lambdas(32))
    strip = ComplexStrip.create(grid, 0.1, 9)
    return family, strip


@pytest.fixture(scope="module")
def extension(patch):
    family, strip = patch
    return pluriharmonic_extend(family, CaseSpec(3, 3), strip)


class TestCircleSampling:
    def test_fourier_coefficients_of_loop(self):
        sampling = CircleSampling.from_loop(PLUS @ MINUS, 16)
        product = PLUS @ MINUS
        for degree in (-1, 0, 1):
            assert_allclose(sampling.coefficient(degree), product.coeff(degree), atol=1e-14)

    def test_resolution_guard(self):
        with pytest.raises(InputError):
            check_resolution(16, 8)

    def test_under_resolved_spectrum_fails(self):
        wide = LaurentLoop({0: np.eye(2), 4: np.array([[0.0, 0.5], [0.0, 0.0]])})
        assert CircleSampling.from_loop(wide, 64).check_spectrum() <= 1e-12
        with pytest.raises(InputError):
            CircleSampling.from_loop(wide, 8).check_spectrum()
        with pytest.raises(InputError):
            birkhoff_split(wide, N=8)


class TestBirkhoff:
    def test_recovers_known_factors(self):
        result = birkhoff_split(PLUS @ MINUS)
        N = result.plus_factor.N
        assert result.plus_factor.distance(CircleSampling.from_loop(PLUS, N)) <= 1e-8
        assert result.minus_factor.distance(CircleSampling.from_loop(MINUS, N)) <= 1e-8
        assert max(result.plus_support, result.minus_support) <= 1e-10
        assert result.in_big_cell

    def test_factors_as_laurent_loops(self):
        result = birkhoff_split(PLUS @ MINUS)
        assert result.plus_loop(1e-10).coefficient_distance(PLUS) <= 1e-8
        assert result.minus_loop(1e-10).coefficient_distance(MINUS) <= 1e-8

    def test_sl2_loop_with_off_diagonal_factors(self):
        a, b = 0.3, 0.5
        lower = LaurentLoop({0: np.eye(2), 1: np.array([[0.0, 0.0], [b, 0.0]])})
        upper = LaurentLoop({0: np.eye(2), -1: np.array([[0.0, a], [0.0, 0.0]])})
        loop = LaurentLoop({-1: np.array([[0.0, a], [0.0, 0.0]]), 0: np.diag([1.0, 1.0 + a * b]), 1: np.array([[0.0, 0.0], [b, 0.0]])})
        assert loop.coefficient_distance(lower @ upper) <= 1e-15
        result = birkhoff_split(loop)
        assert result.plus_loop(1e-10).coefficient_distance(lower) <= 1e-8
        assert result.minus_loop(1e-10).coefficient_distance(upper) <= 1e-8

    def test_right_split(self):
        result = birkhoff_split(MINUS @ PLUS, side="right")
        assert result.residual <= 1e-8
        assert result.normalization <= 1e-8

    def test_identity(self):
        result = birkhoff_split(LaurentLoop.identity(3))
        assert max(result.residual, result.normalization) <= 1e-8

    def test_outside_big_cell(self):
        inside, condition = in_big_cell(OUTSIDE)
        assert not inside
        with pytest.raises(BigCellError) as info:
            birkhoff_split(OUTSIDE)
        assert info.value.points

    def test_unknown_side(self):
        with pytest.raises(InputError):
            birkhoff_split(PLUS, side="up")


class TestDPW:
    def test_forward_factor_has_degree_one_form(self, patch):
        family, _ = patch
        assert degree_one_dominance(dpw_forward(family)) <= 1e-6

    def test_round_trip_recovers_column(self, patch):
        family, _ = patch
        tau = CaseSpec(3, 3).record.tau
        back = dpw_backward(dpw_forward(family), tau)
        assert column_residual(back.frames, family.frames, 2) <= 1e-6

    def test_tau_compatibility(self, patch):
        family, _ = patch
        assert tau_compatibility_residual(family, tau3()) <= 1e-6

    def test_backward_requires_tau_type(self, patch):
        family, _ = patch
        with pytest.raises(InputError):
            dpw_backward(dpw_forward(family), sigma(default_P(2, 1)))

    def test_backward_of_exponential_plus_frame(self, small_grid):
        N = example_flat_matrices()[0]
        lams = circle_lambdas(32)
        u = small_grid.points[..., 0]
        generator = lams[:, None, None, None, None] * u[None, :, :, None, None] * N
        plus = FrameFamily(small_grid, lams, expm(generator), normalized=True)
        back = dpw_backward(plus, tau3())
        assert back.fixed_residual(tau3()) <= 1e-8
        assert max_abs(dpw_forward(back).frames - plus.frames) <= 1e-6

    def test_renormalize_at_other_point(self, patch):
        family, _ = patch
        q = (2, 6)
        renormalized = renormalize_at(family, q)
        assert max_abs(renormalized.frames[(slice(None), *q)] - np.eye(4)) <= 1e-12
        assert renormalized.base_residual() <= 1e-12

    def test_requires_circle_samples(self, small_grid):
        family = example_frame_family(small_grid, [1.0, 2.0, 0.5, -1.0])
        with pytest.raises(InputError):
            dpw_forward(family)


class TestExtension:
    def test_pluriharmonic_and_real(self, extension):
        assert extension.pluriharmonic <= 1e-5
        assert extension.conjugate <= 1e-5
        assert extension.reality_on_m <= 1e-8
        assert extension.column_residual <= 1e-6
        assert extension.within_tolerances()

    def test_reality_residual_on_real_slice(self, patch, extension):
        rho = CaseSpec(3, 3).record.rho_positive
        assert reality_residual_on_M(extension.family, rho) == pytest.approx(extension.reality_on_m)
        with pytest.raises(InputError):
            reality_residual_on_M(patch[0], rho)

    def test_summary(self, extension):
        summary = extension.as_dict()
        assert summary["case"] == 3
        assert summary["symmetric_space"] == "SO(m+k+1)/(SO(m)xSO(k+1))"

    def test_antiholomorphic_term_is_detected(self, extension):
        generator = example_flat_matrices()[0]
        injected = with_antiholomorphic_term(extension.family, generator)
        assert pluriharmonic_residual(injected, tau3()) > 1e-2

    def test_gluing_between_base_points(self, patch, extension):
        family, strip = patch
        base = strip.grid.base_index
        other = tuple(i + 2 for i in base)
        assert gluing_residual(family, CaseSpec(3, 3), extension.strip, base, other) <= 1e-6

    def test_curved_flat_gives_pluriharmonic_map(self, patch):
        _, strip = patch
        family = pluriharmonic_from_curved_flat(example_flat_connection(), strip, lams=circle_lambdas(32))
        assert pluriharmonic_residual(family, tau3()) <= 1e-5

    def test_totally_geodesic_candidate_at_lambda_one(self, patch):
        family, strip = patch
        report = totally_geodesic_candidate(family, CaseSpec(3, 3), strip)
        assert report.involution == "rho_hat3"
        assert report.fixed_residual <= 1e-8
        assert report.second_fundamental_form <= 1e-8
        assert report.as_dict()["is_candidate"] is True
        with pytest.raises(InputError):
            totally_geodesic_candidate(family, CaseSpec(1, 3), strip)
