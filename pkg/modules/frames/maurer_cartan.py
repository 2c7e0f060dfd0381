"""
Formas de Maurer-Cartan discretas e resíduos de dA + A∧A = 0
"""
from typing import Sequence

import numpy as np

from config.settings import INTEGRATOR_CONFIG, TOLERANCES
from utils.constants import ERROR_MESSAGES
from utils.exceptions import InputError
from utils.helpers import max_abs

from .differences import derivative
from .fields import ConnectionFamily, OneFormField
from .grid import Grid


def mc_components(frames: np.ndarray, steps: Sequence[float], accuracy: int = 2) -> np.ndarray:
    """
    F⁻¹ ∂_j F por diferenças finitas

    Args:
        frames: Array (*lead, *grade, n, n); a grade ocupa os len(steps) eixos antes das matrizes
        steps: Passo de cada eixo da grade
        accuracy: Ordem das diferenças finitas

    Returns:
        Array (*lead, m, *grade, n, n)
    """
    frames = np.asarray(frames, dtype=complex)
    m = len(steps)
    first_axis = frames.ndim - 2 - m
    parts = []
    for j, h in enumerate(steps):
        dF = derivative(frames, h, axis=first_axis + j, accuracy=accuracy)
        try:
            parts.append(np.linalg.solve(frames, dF))
        except np.linalg.LinAlgError as exc:
            dets = np.abs(np.linalg.det(frames))
            point = np.unravel_index(int(np.argmin(dets)), dets.shape)
            raise InputError(ERROR_MESSAGES["SINGULAR_FRAME"].format(point=point)) from exc
    return np.stack(parts, axis=first_axis)


def mc_form(F: np.ndarray, grid: Grid, accuracy: int = 2) -> OneFormField:
    """
    Forma de Maurer-Cartan discreta F⁻¹dF de um referencial na grade

    Args:
        F: Array (*grid.shape, n, n)
        grid: Grade
        accuracy: Ordem das diferenças (2: centradas no interior, unilaterais nas bordas)
    """
    return OneFormField(grid, mc_components(F, grid.steps, accuracy))


def _mid(values: np.ndarray, axis: int) -> np.ndarray:
    lo = [slice(None)] * values.ndim
    hi = [slice(None)] * values.ndim
    lo[axis] = slice(None, -1)
    hi[axis] = slice(1, None)
    return 0.5 * (values[tuple(lo)] + values[tuple(hi)])


def cell_residual(components: np.ndarray, steps: Sequence[float]) -> np.ndarray:
    """
    dA + A∧A nos centros das células, para cada par de eixos j < l

    ∂_j A_l − ∂_l A_j + [Ā_j, Ā_l], diferenças por aresta e médias nas células.

    Args:
        components: Array (*lead, m, *grade, n, n)
        steps: Passos da grade

    Returns:
        Máximo de ‖·‖ por célula, array (*lead, *grade − 1)
    """
    components = np.asarray(components)
    m = len(steps)
    lead = components.ndim - 3 - m
    worst = None
    for j in range(m):
        for l in range(j + 1, m):
            A_j = components[(slice(None),) * lead + (j,)]
            A_l = components[(slice(None),) * lead + (l,)]
            axis_j, axis_l = lead + j, lead + l
            d_j_Al = _mid(np.diff(A_l, axis=axis_j) / steps[j], axis_l)
            d_l_Aj = _mid(np.diff(A_j, axis=axis_l) / steps[l], axis_j)
            Aj_c = _mid(_mid(A_j, axis_j), axis_l)
            Al_c = _mid(_mid(A_l, axis_j), axis_l)
            residual = d_j_Al - d_l_Aj + Aj_c @ Al_c - Al_c @ Aj_c
            norm = np.max(np.abs(residual), axis=(-2, -1))
            # reduz os eixos restantes a uma célula por ponto
            for other in range(m):
                if other not in (j, l):
                    norm = np.delete(norm, -1, axis=lead + other)
            worst = norm if worst is None else np.maximum(worst, norm)
    if worst is None:
        return np.zeros(())
    return worst


def wedge_residual(components: np.ndarray, steps: Sequence[float]) -> float:
    """max ‖A∧A‖ = max ‖[A_j, A_l]‖ nos centros das células"""
    components = np.asarray(components)
    m = len(steps)
    lead = components.ndim - 3 - m
    worst = 0.0
    for j in range(m):
        for l in range(j + 1, m):
            A_j = components[(slice(None),) * lead + (j,)]
            A_l = components[(slice(None),) * lead + (l,)]
            Aj_c = _mid(_mid(A_j, lead + j), lead + l)
            Al_c = _mid(_mid(A_l, lead + j), lead + l)
            worst = max(worst, max_abs(Aj_c @ Al_c - Al_c @ Aj_c))
    return worst


def closed_residual(components: np.ndarray, steps: Sequence[float]) -> float:
    """max ‖dA‖ nos centros das células"""
    components = np.asarray(components)
    m = len(steps)
    lead = components.ndim - 3 - m
    worst = 0.0
    for j in range(m):
        for l in range(j + 1, m):
            A_j = components[(slice(None),) * lead + (j,)]
            A_l = components[(slice(None),) * lead + (l,)]
            d_j_Al = _mid(np.diff(A_l, axis=lead + j) / steps[j], lead + l)
            d_l_Aj = _mid(np.diff(A_j, axis=lead + l) / steps[l], lead + j)
            worst = max(worst, max_abs(d_j_Al - d_l_Aj))
    return worst


def field_mc_residual(field: OneFormField) -> float:
    """max ‖dA + A∧A‖ de um campo de 1-formas"""
    if field.m < 2:
        return 0.0
    return max_abs(cell_residual(field.components, field.grid.steps))


def _analytic_residual(connection: ConnectionFamily, lam: complex, grid: Grid) -> float:
    """Resíduo pontual com derivadas de 4ª ordem das expressões fechadas"""
    closed = connection.closed_form
    delta = INTEGRATOR_CONFIG["analytic_step"]
    points = grid.points
    worst = 0.0
    for j in range(grid.m):
        for l in range(j + 1, grid.m):

            def shifted(axis, amount):
                moved = points.astype(float).copy()
                moved[..., axis] += amount
                return closed.evaluate(moved, lam)

            def partial(axis, component):
                values = [shifted(axis, s * delta)[component] for s in (-2, -1, 1, 2)]
                return (values[0] - 8 * values[1] + 8 * values[2] - values[3]) / (12 * delta)

            center = closed.evaluate(points, lam)
            commutator = center[j] @ center[l] - center[l] @ center[j]
            worst = max(worst, max_abs(partial(j, l) - partial(l, j) + commutator))
    return worst


def mc_residual(connection: ConnectionFamily, lam: complex, method: str = "auto") -> float:
    """
    Resíduo de Maurer-Cartan de A(λ) na grade da família

    Args:
        connection: Família de conexões
        lam: Valor de λ
        method: 'sampled' (células, 2ª ordem), 'analytic' (expressões fechadas) ou 'auto'

    Returns:
        max ‖dA + A∧A‖
    """
    if method == "auto":
        method = "analytic" if connection.closed_form is not None else "sampled"
    if method == "analytic":
        if connection.closed_form is None:
            raise InputError("Resíduo analítico requer expressões fechadas")
        return _analytic_residual(connection, lam, connection.grid)
    return field_mc_residual(connection.evaluate(lam))


def integrability_threshold(connection: ConnectionFamily, threshold: float = None) -> float:
    """Limiar aceito antes de integrar (maior para conexões amostradas)"""
    threshold = TOLERANCES["mc_threshold"] if threshold is None else threshold
    if connection.closed_form is not None:
        return threshold
    h = max(connection.grid.steps)
    return max(threshold, INTEGRATOR_CONFIG["sampled_residual_factor"] * h ** 2)
