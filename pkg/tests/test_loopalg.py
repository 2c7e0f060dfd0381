"""
Testes do módulo de álgebra de laços
"""
from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.loopalg import (
    LaurentLoop,
    SignatureForm,
    all_case_rows,
    apply_involution,
    apply_pointwise,
    case_catalog,
    conjugate_by,
    conjugation_pair_residual,
    default_P,
    default_Q,
    eval_loop,
    fixed_residual,
    group_residual,
    mixed_signature,
    mu,
    read_loop,
    register_case_row,
    rho1,
    rho2,
    rho3,
    rho_hat3,
    row_for_lambda,
    sigma,
    tau1,
    tau2,
    tau3,
    unregister_case_row,
    write_loop,
)
from utils.exceptions import DimensionError, DomainError, InputError

from tests.conftest import random_matrix


@pytest.fixture
def loop(rng):
    return LaurentLoop({d: random_matrix(rng, 4) for d in range(-2, 3)})


def all_involutions():
    P, Q = default_P(2, 1), default_Q(2, 1)
    return [sigma(P), mu(Q), rho1(), rho2(), rho3(), rho_hat3(Q), tau1(P, Q), tau2(Q), tau3()]


class TestLaurentLoop:
    def test_evaluate_sums_monomials(self):
        A, B = np.eye(2), np.array([[0, 1], [1, 0]])
        loop = LaurentLoop({-1: A, 1: B})
        assert_allclose(loop.evaluate(2.0), 0.5 * A + 2.0 * B)

    def test_product_adds_degrees(self):
        A = np.array([[0, 1], [0, 0]])
        product = LaurentLoop.monomial(A, 1) @ LaurentLoop.monomial(A.T, -1)
        assert product.degrees == (0,)
        assert_allclose(product.coeff(0), A @ A.T)

    def test_degree_cap(self):
        with pytest.raises(DimensionError):
            LaurentLoop({9: np.eye(2)})

    def test_empty_loop_requires_dimension(self):
        with pytest.raises(DimensionError):
            LaurentLoop({})
        assert LaurentLoop({}, n=3).n == 3

    def test_connection_order_ignores_tiny_coefficients(self):
        loop = LaurentLoop({-2: 1e-20 * np.eye(2), -1: np.eye(2), 1: np.eye(2)})
        assert loop.connection_order() == (-1, 1)

    def test_eval_loop_rejects_zero_with_negative_degrees(self, loop):
        assert_allclose(eval_loop(loop, 0.5j), loop.evaluate(0.5j))
        with pytest.raises(DomainError):
            eval_loop(loop, 0.0)
        assert_allclose(eval_loop(LaurentLoop.monomial(np.eye(2), 1), 0.0), np.zeros((2, 2)))


class TestInvolutions:
    @pytest.mark.parametrize("index", range(9))
    def test_order_two(self, loop, index):
        spec = all_involutions()[index]
        twice = apply_involution(spec, apply_involution(spec, loop))
        assert twice.coefficient_distance(loop) <= 1e-12

    @pytest.mark.parametrize("lam", [0.7 + 0.2j, -1.3j, 2.0, np.exp(0.4j)])
    def test_coefficient_action_matches_pointwise(self, loop, lam):
        for spec in all_involutions():
            assert_allclose(apply_involution(spec, loop).evaluate(lam), apply_pointwise(spec, loop, lam), atol=1e-12)

    def test_tau3_fixes_unitary_constant(self):
        theta = 0.3
        rotation = np.eye(4, dtype=complex)
        rotation[:2, :2] = [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
        loop = LaurentLoop.constant(rotation)
        assert fixed_residual(tau3(), loop, [1.0, 1j * 0.5, np.exp(1j)]) <= 1e-14

    def test_group_residual_of_rotation_loop(self):
        c, s = np.cos(0.4), np.sin(0.4)
        loop = LaurentLoop.constant(np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]]))
        J = SignatureForm.identity(3)
        assert group_residual(loop, J, [1.0, 1j, np.exp(0.2j)]) <= 1e-14
        assert group_residual(loop.scale(2.0), J, [1.0]) == pytest.approx(3.0)
        with pytest.raises(DimensionError):
            group_residual(loop, SignatureForm.identity(2), [1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            apply_involution(sigma(default_P(2, 1)), LaurentLoop.identity(3))

    def test_sigma_and_mu_commute_with_reality_involutions(self, loop):
        P, Q = default_P(2, 1), default_Q(2, 1)
        pairs = [(sigma(P), other) for other in (mu(Q), rho1(), rho2(), rho3(), rho_hat3(Q))]
        pairs += [(mu(Q), other) for other in (rho1(), rho2(), rho3(), rho_hat3(Q))]
        for first, second in pairs:
            one = apply_involution(first, apply_involution(second, loop))
            other = apply_involution(second, apply_involution(first, loop))
            assert one.coefficient_distance(other) <= 1e-12, (first.kind, second.kind)

    def test_tau2_equals_mu_on_rho2_fixed_loops(self, loop):
        Q = default_Q(2, 1)
        fixed = loop + apply_involution(rho2(), loop)
        assert fixed_residual(rho2(), fixed, [0.4 + 0.3j, 2.0]) <= 1e-12
        assert apply_involution(tau2(Q), fixed).coefficient_distance(apply_involution(mu(Q), fixed)) <= 1e-12
        # fora do conjunto fixo as duas diferem
        assert apply_involution(tau2(Q), loop).coefficient_distance(apply_involution(mu(Q), loop)) > 1e-3

    def test_rho_hat3_equals_rho3_on_mu_fixed_loops(self, loop):
        Q = default_Q(2, 1)
        fixed = loop + apply_involution(mu(Q), loop)
        image = apply_involution(rho_hat3(Q), fixed)
        assert image.coefficient_distance(apply_involution(rho3(), fixed)) <= 1e-12
        assert apply_involution(rho_hat3(Q), loop).coefficient_distance(apply_involution(rho3(), loop)) > 1e-3

    def test_conjugate_by_rejects_singular_T(self, loop):
        with pytest.raises(InputError):
            conjugate_by([1, 0, 1, 1], loop)

    def test_signature_form_rejects_bad_entries(self):
        with pytest.raises(InputError):
            SignatureForm((1, 2, 1))


class TestCaseCatalog:
    def test_twelve_rows_pair_identity(self):
        rows = all_case_rows()
        assert len(rows) == 12
        for row in rows:
            assert conjugation_pair_residual(row.T, row.J_hat, row.J) <= 1e-12

    def test_case3_circle_row(self):
        row = case_catalog(3, 3)
        assert row.lambda_range == "circle"
        assert row.quadric_sign == 1
        assert row.curvature(1.0) == pytest.approx(1.0)
        assert row.curvature(np.exp(0.3j)) == pytest.approx(1.0 / np.cos(0.3) ** 2)

    def test_case3_imaginary_row_curvature(self):
        row = case_catalog(3, 1)
        # λ = 0.5i: λ + 1/λ = -1.5i
        assert row.curvature(0.5j) == pytest.approx(4.0 / 2.25)

    def test_excluded_lambdas(self):
        row = case_catalog(3, 1)
        with pytest.raises(DomainError):
            row.require_lambda(1j)
        with pytest.raises(DomainError):
            row.require_lambda(2.0)

    def test_row_for_lambda_prefers_circle(self):
        assert row_for_lambda(3, 1.0).row == 3
        assert row_for_lambda(3, 2.0).row == 2
        assert row_for_lambda(3, 0.5j).row == 1

    def test_invalid_case(self):
        with pytest.raises(InputError):
            case_catalog(5, 1)

    def test_mixed_signature_blocks(self):
        assert mixed_signature(2, 1, 1, -1).vector.tolist() == [1, 1, -1, -1]
        assert mixed_signature(2, 2, 1, 1).vector.tolist() == [1, 1, 1, -1, 1]
        with pytest.raises(InputError):
            mixed_signature(2, 1, 2, 1)
        with pytest.raises(InputError):
            mixed_signature(2, 1, 0, 0)

    def test_register_mixed_row(self):
        def builder(m, k):
            base = case_catalog(2, 2, m, k)
            T = tuple([1.0 + 0j] * m + [1j] * (k + 1))
            return replace(base, case=5, row=1, T=T, J=mixed_signature(m, k, k, -1))

        register_case_row(5, 1, builder)
        try:
            row = case_catalog(5, 1)
            assert row.J.vector.tolist() == [1, 1, -1, -1]
            assert conjugation_pair_residual(row.T, row.J_hat, row.J) <= 1e-12
            assert len(all_case_rows()) == 12
        finally:
            unregister_case_row(5, 1)
        with pytest.raises(InputError):
            case_catalog(5, 1)

    def test_register_rejects_table_rows_and_bad_pairs(self):
        original = case_catalog(3, 3)
        with pytest.raises(InputError):
            register_case_row(3, 3, lambda m, k: case_catalog(1, 1, m, k))
        assert case_catalog(3, 3) == original

        def mismatched(m, k):
            return replace(case_catalog(2, 2, m, k), case=5, row=2, J=mixed_signature(m, k, k, -1))

        with pytest.raises(InputError):
            register_case_row(5, 2, mismatched)
        with pytest.raises(InputError):
            case_catalog(5, 2)


class TestLoopIO:
    def test_file_round_trip_is_exact(self, tmp_path, loop):
        path = write_loop(tmp_path / "loop.json", loop, factor="plus", meta={"side": "left"})
        restored, header = read_loop(path)
        assert restored.coefficient_distance(loop) == 0.0
        assert header == {"factor": "plus", "meta": {"side": "left"}}

    def test_bad_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(InputError):
            read_loop(path)
