"""
Integração de famílias de conexões planas em referenciais estendidos

Magnus de 2 estágios (Gauss-Legendre, ordem 4) para dF = F·A, em lote sobre
as amostras de λ e as linhas transversais.
"""
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import make_interp_spline
from scipy.linalg import expm

from config.settings import INTEGRATOR_CONFIG
from modules.loopalg import SignatureForm, lie_algebra_residual
from utils.constants import ERROR_MESSAGES, WARNING_MESSAGES
from utils.exceptions import DimensionError, DomainError, IntegrabilityError
from utils.logger import get_logger

from .fields import ConnectionFamily, FrameFamily
from .grid import Grid
from .maurer_cartan import integrability_threshold, mc_residual

logger = get_logger(__name__)

_GAUSS_NODES = np.array([0.5 - np.sqrt(3) / 6, 0.5 + np.sqrt(3) / 6])
_COMMUTATOR_WEIGHT = np.sqrt(3) / 12


def magnus_exponent(A1: np.ndarray, A2: np.ndarray, h) -> np.ndarray:
    """Ω = h/2 (A₁+A₂) + (√3/12) h² [A₁, A₂]"""
    h = np.asarray(h)[..., None, None]
    return 0.5 * h * (A1 + A2) + _COMMUTATOR_WEIGHT * h ** 2 * (A1 @ A2 - A2 @ A1)


def group_projector(J: SignatureForm) -> Callable[[np.ndarray], np.ndarray]:
    """Passo de Newton X ← X(3I − J Xᵗ J X)/2 em direção a {XᵗJX = J}"""
    j = J.vector
    eye = np.eye(J.n)

    def project(X: np.ndarray) -> np.ndarray:
        gram = j[:, None] * (np.swapaxes(X, -1, -2) @ (j[:, None] * X))
        return X @ (3 * eye - gram) / 2

    return project


def march_lines(
    F_base: np.ndarray,
    t: np.ndarray,
    base: int,
    node_values: Callable[[np.ndarray], np.ndarray],
    projector: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> np.ndarray:
    """
    Integra dF/dt = F·A(t) ao longo de linhas paralelas, a partir de t[base]

    Args:
        F_base: Valores iniciais (..., L, n, n)
        t: Coordenadas das amostras (N,)
        base: Índice inicial
        node_values: nodes (N−1, 2) -> A nos nós de Gauss, (..., L, N−1, 2, n, n)
        projector: Projeção aplicada após cada passo

    Returns:
        Array (..., L, N, n, n)
    """
    t = np.asarray(t)
    h = np.diff(t)
    N = t.size
    if N == 1:
        return F_base[..., None, :, :]

    nodes = t[:-1, None] + h[:, None] * _GAUSS_NODES[None, :]
    values = node_values(nodes)
    omega = magnus_exponent(values[..., 0, :, :], values[..., 1, :, :], h)
    forward = expm(omega)
    backward = expm(-omega)

    frames = np.empty((*F_base.shape[:-2], N, *F_base.shape[-2:]), dtype=complex)
    frames[..., base, :, :] = F_base
    current = F_base
    for j in range(base, N - 1):
        current = current @ forward[..., j, :, :]
        if projector is not None:
            current = projector(current)
        frames[..., j + 1, :, :] = current
    current = F_base
    for j in range(base - 1, -1, -1):
        current = current @ backward[..., j, :, :]
        if projector is not None:
            current = projector(current)
        frames[..., j, :, :] = current
    return frames


def _spline_at(t: np.ndarray, values: np.ndarray, nodes: np.ndarray, axis: int) -> np.ndarray:
    """Interpolação spline (partes real e imaginária) nos nós"""
    degree = min(INTEGRATOR_CONFIG["spline_degree"], t.size - 1)
    if degree % 2 == 0:
        degree -= 1
    flat = nodes.ravel()
    real = make_interp_spline(t, values.real, k=degree, axis=axis)(flat)
    imag = make_interp_spline(t, values.imag, k=degree, axis=axis)(flat)
    result = real + 1j * imag
    return result.reshape(*result.shape[:axis], *nodes.shape, *result.shape[axis + 1:])


def _line_sampler(
    connection: ConnectionFamily,
    lams: np.ndarray,
    grid: Grid,
    axis: int,
    other_indices: np.ndarray,
) -> Callable[[np.ndarray], np.ndarray]:
    """A_axis ao longo das linhas {x_other = const}, nos nós de Gauss: (S, L, N−1, 2, n, n)"""
    other = 1 - axis
    other_values = grid.axes[other][other_indices]

    if connection.closed_form is not None:
        closed = connection.closed_form

        def sample(nodes):
            points = np.empty((other_values.size, *nodes.shape, 2))
            points[..., axis] = nodes[None]
            points[..., other] = other_values[:, None, None]
            return closed.evaluate_many(points, lams)[:, axis]

        return sample

    sampled = connection.components(lams)[:, axis]
    lines = np.take(sampled, other_indices, axis=1 + other)
    if axis == 0:
        lines = np.swapaxes(lines, 1, 2)

    def sample(nodes):
        return _spline_at(grid.axes[axis], lines, nodes, axis=2)

    return sample


def check_integrability(
    connection: ConnectionFamily, lams: Sequence[complex], threshold: float = None
) -> float:
    """
    Rejeita conexões não integráveis

    Returns:
        Maior resíduo entre as amostras de λ
    """
    limit = integrability_threshold(connection, threshold)
    worst = 0.0
    for lam in np.atleast_1d(lams):
        residual = mc_residual(connection, lam)
        logger.debug("resíduo MC em λ=%s: %.3e (limiar %.3e)", lam, residual, limit)
        worst = max(worst, residual)
        if residual > limit:
            raise IntegrabilityError(
                ERROR_MESSAGES["NON_INTEGRABLE"].format(residual=residual, threshold=limit), residual=residual
            )
    return worst


def integrate_family(
    connection: ConnectionFamily,
    lams: Sequence[complex],
    grid: Optional[Grid] = None,
    check: bool = True,
    signature: Optional[SignatureForm] = None,
    axis_order: Tuple[int, int] = (0, 1),
    threshold: float = None,
) -> FrameFamily:
    """
    Integra A(λ) em referenciais com F(p) = I para cada amostra de λ

    Args:
        connection: Família de conexões (m = 2)
        lams: Amostras de λ (não nulas)
        grid: Grade (padrão: a da conexão; com expressões fechadas pode ser outra)
        check: Verifica a integrabilidade antes de integrar
        signature: J para projeção no grupo (quando A(λ) ∈ 𝔰𝔬(J))
        axis_order: Eixo integrado primeiro a partir do ponto base
        threshold: Limiar do resíduo de Maurer-Cartan

    Returns:
        FrameFamily normalizada no ponto base
    """
    if grid is not None and grid != connection.grid:
        connection = connection.on_grid(grid)
    grid = connection.grid
    if grid.m != 2:
        raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected="m = 2", got=f"m = {grid.m}"))

    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    if np.any(lams == 0):
        raise DomainError(ERROR_MESSAGES["ZERO_LAMBDA"])

    if check:
        check_integrability(connection, lams, threshold)

    projector = None
    if signature is not None and INTEGRATOR_CONFIG["project_to_group"]:
        if lie_algebra_residual(connection.components(lams), signature) <= INTEGRATOR_CONFIG["lie_algebra_tolerance"]:
            projector = group_projector(signature)
        else:
            logger.warning(WARNING_MESSAGES["PROJECTION_SKIPPED"])

    first, second = axis_order
    n = connection.n
    base = grid.base_index
    identity = np.broadcast_to(np.eye(n, dtype=complex), (lams.size, 1, n, n))

    # 1. linha do ponto base ao longo do primeiro eixo
    sampler = _line_sampler(connection, lams, grid, first, np.array([base[second]]))
    spine = march_lines(identity, grid.axes[first], base[first], sampler, projector)[:, 0]

    # 2. cada coluna ao longo do segundo eixo
    sampler = _line_sampler(connection, lams, grid, second, np.arange(grid.shape[first]))
    frames = march_lines(spine, grid.axes[second], base[second], sampler, projector)
    if first == 1:
        frames = np.swapaxes(frames, 1, 2)

    logger.debug("integradas %d amostras de λ numa grade %s", lams.size, grid.shape)
    return FrameFamily(grid, lams, frames, normalized=True, connection=connection)


def integrate_frame(connection: ConnectionFamily, lam: complex, grid: Optional[Grid] = None, **kwargs) -> np.ndarray:
    """Referencial F_λ na grade, F(p) = I"""
    return integrate_family(connection, [lam], grid, **kwargs).frames[0]
