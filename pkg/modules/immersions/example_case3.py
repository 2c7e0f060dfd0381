"""
Exemplo fechado do Caso 3: família de esferas isometricamente mergulhadas

F_λ(u, v) ∈ SO(4, C) com a = (λ+λ⁻¹)/2, b = i(λ−λ⁻¹)/2; em λ = 1 a terceira
coluna é o mergulho totalmente geodésico de S² em S³.
"""
from typing import Sequence, Tuple

import numpy as np

from modules.frames import ConnectionFamily, FrameFamily, Grid
from modules.flats.expressions import ExpressionConnection, zero_matrix_text

# m = 2, k = 1
EXAMPLE_CASE = 3
EXAMPLE_DIMENSIONS = (2, 1)


def example_parameters(lam: complex) -> Tuple[complex, complex]:
    """(a, b) com a² + b² = 1"""
    lam = np.asarray(lam, dtype=complex)
    return 0.5 * (lam + 1 / lam), 0.5j * (lam - 1 / lam)


def example_case3(u, v, lam: complex) -> Tuple[np.ndarray, np.ndarray]:
    """
    Referencial fechado e sua terceira coluna

    Args:
        u, v: Coordenadas (escalares ou arrays de mesmo shape)
        lam: λ não nulo

    Returns:
        Tupla (F com shape (..., 4, 4), f com shape (..., 4))
    """
    a, b = example_parameters(lam)
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    cu, su, cv, sv = np.cos(u), np.sin(u), np.cos(v), np.sin(v)
    zero = np.zeros_like(u)

    F = np.empty((*u.shape, 4, 4), dtype=complex)
    F[..., 0, :] = np.stack([cu, -su * sv, a * su * cv, b * su * cv], axis=-1)
    F[..., 1, :] = np.stack([zero, cv, a * sv, b * sv], axis=-1)
    F[..., 2, :] = np.stack([-a * su, -a * cu * sv, a * a * cu * cv + b * b, a * b * (cu * cv - 1)], axis=-1)
    F[..., 3, :] = np.stack([-b * su, -b * cu * sv, a * b * (cu * cv - 1), b * b * cu * cv + a * a], axis=-1)
    return F, F[..., :, 2]


def example_frame_derivatives(u, v, lam: complex) -> Tuple[np.ndarray, np.ndarray]:
    """Derivadas analíticas (∂_u F, ∂_v F)"""
    a, b = example_parameters(lam)
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    cu, su, cv, sv = np.cos(u), np.sin(u), np.cos(v), np.sin(v)
    zero = np.zeros_like(u)

    dU = np.empty((*u.shape, 4, 4), dtype=complex)
    dU[..., 0, :] = np.stack([-su, -cu * sv, a * cu * cv, b * cu * cv], axis=-1)
    dU[..., 1, :] = 0
    dU[..., 2, :] = np.stack([-a * cu, a * su * sv, -a * a * su * cv, -a * b * su * cv], axis=-1)
    dU[..., 3, :] = np.stack([-b * cu, b * su * sv, -a * b * su * cv, -b * b * su * cv], axis=-1)

    dV = np.empty((*u.shape, 4, 4), dtype=complex)
    dV[..., 0, :] = np.stack([zero, -su * cv, -a * su * sv, -b * su * sv], axis=-1)
    dV[..., 1, :] = np.stack([zero, -sv, a * cv, b * cv], axis=-1)
    dV[..., 2, :] = np.stack([zero, -a * cu * cv, -a * a * cu * sv, -a * b * cu * sv], axis=-1)
    dV[..., 3, :] = np.stack([zero, -b * cu * cv, -a * b * cu * sv, -b * b * cu * sv], axis=-1)
    return dU, dV


def example_mc_form(u, v, lam: complex) -> Tuple[np.ndarray, np.ndarray]:
    """Forma de Maurer-Cartan F⁻¹dF pelas derivadas analíticas: (A_u, A_v)"""
    F, _ = example_case3(u, v, lam)
    dU, dV = example_frame_derivatives(u, v, lam)
    return np.linalg.solve(F, dU), np.linalg.solve(F, dV)


def _connection_text():
    """A_u, A_v por grau; a contribui 1/2 em λ^{±1}, b contribui ±i/2"""
    coeffs = {d: [zero_matrix_text(4), zero_matrix_text(4)] for d in (-1, 0, 1)}

    du, dv = coeffs[0]
    du[0][1] = "(neg (sin v))"
    du[1][0] = "(sin v)"

    for degree, b_sign in ((1, ""), (-1, "-")):
        du, dv = coeffs[degree]
        b = f"(const 0 {b_sign}0.5)"
        minus_b = f"(const 0 {'' if b_sign else '-'}0.5)"
        du[0][2] = "(mul 0.5 (cos v))"
        du[0][3] = f"(mul {b} (cos v))"
        du[2][0] = "(mul -0.5 (cos v))"
        du[3][0] = f"(mul {minus_b} (cos v))"
        dv[1][2] = "0.5"
        dv[1][3] = b
        dv[2][1] = "-0.5"
        dv[3][1] = minus_b
    return coeffs


def example_connection() -> ExpressionConnection:
    """Forma de Maurer-Cartan do exemplo como expressões prefixas (graus −1, 0, 1)"""
    return ExpressionConnection(_connection_text(), coordinates=("u", "v"))


def example_connection_family(grid: Grid) -> ConnectionFamily:
    return ConnectionFamily.from_closed_form(example_connection(), grid)


def example_frame_family(grid: Grid, lams: Sequence[complex]) -> FrameFamily:
    """
    Referenciais fechados em cada λ (a grade deve ter ponto base em (0, 0)
    para que F(p) = I)
    """
    points = grid.points
    frames = np.stack([example_case3(points[..., 0], points[..., 1], lam)[0] for lam in lams])
    normalized = bool(np.allclose(grid.base_point, 0.0))
    return FrameFamily(grid, lams, frames, normalized=normalized, connection=example_connection_family(grid))


def example_surface_formula(u, v, lam: complex) -> np.ndarray:
    """Coluna f explícita (f₁, f₂, f₃, f₄)"""
    s = np.asarray(lam, dtype=complex) + 1 / np.asarray(lam, dtype=complex)
    d = np.asarray(lam, dtype=complex) - 1 / np.asarray(lam, dtype=complex)
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    return np.stack(
        [
            0.5 * s * np.sin(u) * np.cos(v),
            0.5 * s * np.sin(v),
            0.25 * s ** 2 * np.cos(u) * np.cos(v) - 0.25 * d ** 2,
            0.25j * s * d * (np.cos(u) * np.cos(v) - 1),
        ],
        axis=-1,
    )
