"""
Referencial adaptado de uma superfície e inserção do parâmetro espectral
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from config.settings import TOLERANCES
from modules.frames import ConnectionFamily, Grid, OneFormField, derivative, mc_components
from utils.constants import ERROR_MESSAGES
from utils.exceptions import DegenerateSurfaceError, InadmissibleCurvatureError, InputError
from utils.helpers import max_abs
from utils.logger import get_logger

from .case_spec import CaseSpec
from .surface import ImmersionSurface

logger = get_logger(__name__)


@dataclass
class AdaptedFrameData:
    """
    Blocos da forma de Maurer-Cartan de um referencial adaptado
    (referencial não transformado, normalizado no ponto base)

    omega: m×m; theta: m×1; beta: m×k; eta: (k+1)×(k+1) com primeira
    linha e coluna nulas.
    """

    m: int
    k: int
    omega: OneFormField
    theta: OneFormField
    beta: OneFormField
    eta: OneFormField
    eps: int
    base_frame: np.ndarray
    T: Tuple[complex, ...]
    structure_residual: float = 0.0

    @property
    def n(self) -> int:
        return self.m + self.k + 1

    @property
    def grid(self) -> Grid:
        return self.omega.grid

    def connection_field(self) -> OneFormField:
        """A = F⁻¹dF remontada a partir dos blocos"""
        m = self.m
        shape = (self.grid.m, *self.grid.shape, self.n, self.n)
        A = np.zeros(shape, dtype=complex)
        A[..., :m, :m] = self.omega.components
        A[..., m:, m:] = self.eta.components
        A[..., :m, m:m + 1] = self.theta.components
        A[..., :m, m + 1:] = self.beta.components
        A[..., m, :m] = -self.eps * self.theta.components[..., 0]
        A[..., m + 1:, :m] = -np.swapaxes(self.beta.components, -1, -2)
        return OneFormField(self.grid, A)

    def restore(self, surface: ImmersionSurface) -> ImmersionSurface:
        """Desfaz a normalização no ponto base: x ↦ F̃(p) x"""
        return surface.transformed(self.base_frame)


def signature_eps(T, J_vector: np.ndarray, m: int) -> int:
    """J_m do referencial não transformado, de T Ĵ T = κ J"""
    t = np.asarray(T, dtype=complex)
    kappa = np.real(t[0] ** 2 * J_vector[0])
    return int(np.sign(np.real(t[m] ** 2 * J_vector[m]) * kappa))


def _normalized(vectors: np.ndarray, J_vector: np.ndarray, sign: float, tol: float, message: str):
    norms = np.sum(vectors * J_vector * vectors, axis=-1)
    bad = (np.sign(norms) != sign) | (np.abs(norms) <= tol)
    if np.any(bad):
        point = tuple(int(i) for i in np.argwhere(bad)[0])
        raise DegenerateSurfaceError(ERROR_MESSAGES[message].format(point=point))
    return vectors / np.sqrt(np.abs(norms))[..., None]


def _project_off(vectors: np.ndarray, basis: Sequence[Tuple[np.ndarray, float]], J_vector: np.ndarray):
    """Remove as componentes ao longo de vetores com ⟨b, b⟩_Ĵ = s"""
    for b, s in basis:
        coefficient = np.sum(vectors * J_vector * b, axis=-1)
        vectors = vectors - (s * coefficient)[..., None] * b
    return vectors


def adapted_frame_columns(
    surface: ImmersionSurface,
    order: Sequence[int] = (0, 1),
    accuracy: int = 6,
) -> np.ndarray:
    """
    Referencial real F̃ = [e₁..e_m, f, ξ₁..ξ_k] com F̃ᵗĴF̃ = Ĵ

    Tangentes por Gram-Schmidt em ⟨·,·⟩_Ĵ das derivadas de f na ordem dada;
    normais pela projeção de E_{m+1}, ..., E_{n−1}.

    Returns:
        Array (*grid.shape, n, n)
    """
    grid, n, m = surface.grid, surface.n, surface.m
    j = surface.ambient_J.vector
    f = surface.points
    if sorted(order) != list(range(m)):
        raise InputError(f"Ordem de eixos inválida: {order}")

    tol = TOLERANCES["degenerate_metric"]
    tangents = [derivative(f, grid.steps[axis], axis=axis, accuracy=accuracy) for axis in order]
    scale = max(1.0, max(float(np.max(np.sum(t * t, axis=-1))) for t in tangents))

    basis = [(f, j[m])]
    columns = []
    for i, tangent in enumerate(tangents):
        e = _normalized(_project_off(tangent, basis, j), j, j[i], tol * scale, "DEGENERATE_SURFACE")
        basis.append((e, j[i]))
        columns.append(e)

    normals = []
    for a in range(m + 1, n):
        candidate = np.broadcast_to(np.eye(n)[a], f.shape)
        xi = _normalized(_project_off(candidate, basis, j), j, j[a], tol, "NORMAL_COMPLETION")
        basis.append((xi, j[a]))
        normals.append(xi)

    return np.stack(columns + [f] + normals, axis=-1)


def extract_adapted_frame(
    surface: ImmersionSurface,
    order: Sequence[int] = (0, 1),
    accuracy: int = 6,
) -> AdaptedFrameData:
    """
    Blocos (ω, θ, β, η) da forma de Maurer-Cartan de um referencial adaptado

    O referencial é normalizado à esquerda no ponto base (F̃(p) = I, logo
    f(p) = E_{m+1}) e levado ao referencial não transformado por Ad_{T⁻¹}.

    Args:
        surface: Superfície real em Ĵ (posto completo na grade)
        order: Ordem de ortonormalização das tangentes (escolha de gauge)
        accuracy: Ordem das diferenças finitas

    Returns:
        AdaptedFrameData
    """
    m, n = surface.m, surface.n
    k = n - m - 1
    grid = surface.grid
    frames = adapted_frame_columns(surface, order, accuracy)

    base_frame = frames[grid.base_index]
    frames = np.linalg.solve(base_frame, frames)
    A = mc_components(frames, grid.steps, accuracy)

    t = np.asarray(surface.T, dtype=complex)
    A = A * (t[None, :] / t[:, None])

    eta = A[..., m:, m:].copy()
    structure = max(max_abs(eta[..., 0, :]), max_abs(eta[..., :, 0]))
    eta[..., 0, :] = 0
    eta[..., :, 0] = 0
    eps = signature_eps(surface.T, surface.ambient_J.vector, m)

    logger.debug("referencial adaptado: resíduo estrutural %.3e, ε = %d", structure, eps)
    return AdaptedFrameData(
        m=m,
        k=k,
        omega=OneFormField(grid, A[..., :m, :m]),
        theta=OneFormField(grid, A[..., :m, m:m + 1]),
        beta=OneFormField(grid, A[..., :m, m + 1:]),
        eta=OneFormField(grid, eta),
        eps=eps,
        base_frame=base_frame,
        T=tuple(surface.T),
        structure_residual=structure,
    )


def insertion_scalings(c: float) -> Tuple[complex, complex]:
    """(√c/2, √c/(2√(1−c))) com ramos principais"""
    root = np.sqrt(complex(c))
    return complex(root / 2), complex(root / (2 * np.sqrt(complex(1 - c))))


def insert_lambda(data: AdaptedFrameData, c: float, eps: int) -> ConnectionFamily:
    """
    Família A(λ) = A₋₁λ⁻¹ + A₀ + A₁λ a partir dos blocos

    θ é multiplicado por (√c/2)(λ+λ⁻¹) e β por (√c/(2√(1−c)))(λ−λ⁻¹), com
    c tomado como ε·c; em λ₀ = (1/√c)(1+√(1−c)) a forma de entrada é
    reproduzida.

    Args:
        data: Blocos do referencial adaptado
        c: Curvatura no referencial não transformado
        eps: +1 (caso esférico) ou −1 (caso hiperbólico)

    Returns:
        ConnectionFamily com graus −1, 0, 1
    """
    if eps not in (1, -1):
        raise InadmissibleCurvatureError(ERROR_MESSAGES["INADMISSIBLE_CURVATURE"].format(c=c, eps=eps))
    c_formula = eps * float(c)
    if not np.isfinite(c_formula) or c_formula == 0:
        raise InadmissibleCurvatureError(ERROR_MESSAGES["INADMISSIBLE_CURVATURE"].format(c=c, eps=eps))
    if c_formula == 1:
        raise InadmissibleCurvatureError(ERROR_MESSAGES["TOTALLY_GEODESIC"])

    m, n = data.m, data.n
    grid = data.grid
    s_theta, s_beta = insertion_scalings(c_formula)
    theta = data.theta.components
    beta = data.beta.components

    zero = np.zeros((grid.m, *grid.shape, n, n), dtype=complex)
    A0 = zero.copy()
    A0[..., :m, :m] = data.omega.components
    A0[..., m:, m:] = data.eta.components

    coeffs = {0: OneFormField(grid, A0)}
    for degree, beta_sign in ((1, 1.0), (-1, -1.0)):
        A = zero.copy()
        A[..., :m, m:m + 1] = s_theta * theta
        A[..., :m, m + 1:] = beta_sign * s_beta * beta
        A[..., m, :m] = -eps * s_theta * theta[..., 0]
        A[..., m + 1:, :m] = -beta_sign * s_beta * np.swapaxes(beta, -1, -2)
        coeffs[degree] = OneFormField(grid, A)

    logger.debug("λ inserido com c = %s (ε = %d)", c_formula, eps)
    return ConnectionFamily(coeffs)


def insert_for_case(data: AdaptedFrameData, spec: CaseSpec) -> ConnectionFamily:
    """insert_lambda com a curvatura e o ε do caso escolhido"""
    return insert_lambda(data, spec.untransformed_curvature, spec.eps)
