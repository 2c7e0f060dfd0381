"""
Verificações geométricas: curvatura, fibrado normal plano, quádrica, posto do
coreferencial, razão de métricas e segunda forma fundamental
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.settings import REPORT_CONFIG, TOLERANCES
from modules.frames import ConnectionFamily, OneFormField, derivative, field_mc_residual
from utils.constants import ERROR_MESSAGES, WARNING_MESSAGES
from utils.exceptions import DimensionError, NonConstantRatioError
from utils.helpers import max_abs
from utils.logger import get_logger

from .adapted_frame import adapted_frame_columns
from .case_spec import CaseSpec
from .surface import ImmersionSurface

logger = get_logger(__name__)


@dataclass
class CurvatureEstimate:
    """Curvatura por ponto (NaN na borda e nos pontos degenerados)"""

    values: np.ndarray
    degenerate: List[Tuple[int, ...]] = field(default_factory=list)
    margin: int = 2

    @property
    def interior(self) -> np.ndarray:
        """Valores finitos"""
        return self.values[np.isfinite(self.values)]

    def relative_error(self, expected: float) -> float:
        """max |K − c| / |c| nos pontos válidos"""
        values = self.interior
        if values.size == 0:
            return float("nan")
        return float(np.max(np.abs(values - expected)) / abs(expected))


def first_fundamental_form(surface: ImmersionSurface, accuracy: int = 4) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(E, F, G) da métrica induzida por ⟨·,·⟩_Ĵ"""
    grid = surface.grid
    if grid.m != 2:
        raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected="m = 2", got=f"m = {grid.m}"))
    x = surface.points
    x_u = derivative(x, grid.steps[0], axis=0, accuracy=accuracy)
    x_v = derivative(x, grid.steps[1], axis=1, accuracy=accuracy)
    return surface.inner(x_u, x_u), surface.inner(x_u, x_v), surface.inner(x_v, x_v)


def gauss_curvature_estimate(surface: ImmersionSurface, accuracy: int = 4, margin: int = 2) -> CurvatureEstimate:
    """
    Curvatura intrínseca pela fórmula de Brioschi

    Args:
        surface: Superfície com m = 2
        accuracy: Ordem das diferenças finitas
        margin: Camadas de borda descartadas

    Returns:
        CurvatureEstimate com NaN na borda e nos pontos degenerados
    """
    grid = surface.grid
    hu, hv = grid.steps
    E, F, G = first_fundamental_form(surface, accuracy)

    def d(values, axis):
        return derivative(values, grid.steps[axis], axis=axis, accuracy=accuracy)

    E_u, E_v, F_u, F_v, G_u, G_v = d(E, 0), d(E, 1), d(F, 0), d(F, 1), d(G, 0), d(G, 1)
    E_vv, G_uu, F_uv = d(E_v, 1), d(G_u, 0), d(F_u, 1)

    first = np.stack(
        [
            np.stack([-0.5 * E_vv + F_uv - 0.5 * G_uu, 0.5 * E_u, F_u - 0.5 * E_v], axis=-1),
            np.stack([F_v - 0.5 * G_u, E, F], axis=-1),
            np.stack([0.5 * G_v, F, G], axis=-1),
        ],
        axis=-2,
    )
    second = np.stack(
        [
            np.stack([np.zeros_like(E), 0.5 * E_v, 0.5 * G_u], axis=-1),
            np.stack([0.5 * E_v, E, F], axis=-1),
            np.stack([0.5 * G_u, F, G], axis=-1),
        ],
        axis=-2,
    )
    det = E * G - F ** 2
    degenerate_mask = np.abs(det) <= TOLERANCES["degenerate_metric"] * np.max(np.abs(det))
    with np.errstate(divide="ignore", invalid="ignore"):
        values = (np.linalg.det(first) - np.linalg.det(second)) / det ** 2

    values = np.where(degenerate_mask, np.nan, values)
    if margin > 0:
        values[:margin, :] = np.nan
        values[-margin:, :] = np.nan
        values[:, :margin] = np.nan
        values[:, -margin:] = np.nan

    degenerate = [tuple(int(i) for i in index) for index in np.argwhere(degenerate_mask)]
    if degenerate:
        logger.warning(WARNING_MESSAGES["DEGENERATE_POINTS"].format(count=len(degenerate)))
    return CurvatureEstimate(values=values, degenerate=degenerate, margin=margin)


def normal_flatness_residual(eta: OneFormField) -> float:
    """max ‖dη + η∧η‖ por célula"""
    return field_mc_residual(eta)


def quadric_residual(surface: ImmersionSurface) -> float:
    """max |⟨x, x⟩_Ĵ − sinal da quádrica|"""
    values = surface.inner(surface.points, surface.points)
    return float(np.max(np.abs(values - surface.quadric_sign)))


def coframe_matrix(A: ConnectionFamily, lam: complex, index: Sequence[int]) -> np.ndarray:
    """C[i, j] = A_j(λ)[i, m]: as m 1-formas do coreferencial no ponto"""
    m = A.m
    values = A.evaluate(lam).components[(slice(None), *tuple(index))]
    return values[:, :m, m].T


def coframe_rank(A: ConnectionFamily, lam: complex, index: Sequence[int], threshold: float = None) -> int:
    """Posto numérico do coreferencial (limiar absoluto nos valores singulares)"""
    threshold = TOLERANCES["rank_singular"] if threshold is None else threshold
    singular = np.linalg.svd(coframe_matrix(A, lam, index), compute_uv=False)
    return int(np.sum(singular > threshold))


def _sample_indices(shape: Sequence[int], count: int) -> List[Tuple[int, ...]]:
    """Pontos espalhados no interior da grade (diagonal e antidiagonal)"""
    count = max(3, count)
    rows = np.linspace(1, shape[0] - 2, count).round().astype(int)
    cols = np.linspace(1, shape[1] - 2, count).round().astype(int)
    points = list(zip(rows, cols)) + list(zip(rows, cols[::-1]))
    return sorted({(int(r), int(c)) for r, c in points})


def induced_metric(A: ConnectionFamily, lam: complex, spec: CaseSpec, index) -> np.ndarray:
    """Primeira forma fundamental g_jl = Σ_i Ĵ_i C_ij C_il no ponto (m × m)"""
    record = spec.record
    m = A.m
    t = np.asarray(record.T, dtype=complex)
    C = coframe_matrix(A, lam, index) * (t[:m] / t[m])[:, None]
    weights = record.J_hat.vector[:m]
    return np.einsum("i,ij,il->jl", weights, C, C)


def metric_ratio(
    A: ConnectionFamily,
    lam1: complex,
    lam2: complex,
    spec: CaseSpec,
    spec2: Optional[CaseSpec] = None,
    points: Optional[Sequence[Sequence[int]]] = None,
    tolerance: float = None,
) -> float:
    """
    Constante k com g(λ₂) = k·g(λ₁), comparando as métricas por componente

    Em cada ponto k é o ajuste de mínimos quadrados de g(λ₂) ≈ k·g(λ₁); o
    desvio componente a componente e a variação de k entre pontos devem ficar
    abaixo de `tolerance` (relativos).

    Args:
        A: Família de conexões
        lam1, lam2: Valores de λ (cada um na faixa de sua linha)
        spec: Caso/linha de λ₁
        spec2: Caso/linha de λ₂ (padrão: spec)
        points: Índices da grade (padrão: diagonais do interior)
        tolerance: Desvio relativo máximo

    Returns:
        Razão entre as métricas induzidas
    """
    spec2 = spec if spec2 is None else spec2
    tolerance = TOLERANCES["metric_ratio_rel"] if tolerance is None else tolerance
    spec.record.require_lambda(lam1)
    spec2.record.require_lambda(lam2)
    points = points or _sample_indices(A.grid.shape, REPORT_CONFIG["metric_points"])

    ratios = []
    for index in points:
        g1 = induced_metric(A, lam1, spec, index)
        g2 = induced_metric(A, lam2, spec2, index)
        scale = float(np.sqrt(np.vdot(g1, g1).real))
        if scale <= TOLERANCES["rank_singular"]:
            continue
        k = np.vdot(g1, g2) / scale ** 2
        mismatch = max_abs(g2 - k * g1) / max(max_abs(g2), abs(k) * max_abs(g1), 1e-300)
        if mismatch > tolerance:
            raise NonConstantRatioError(ERROR_MESSAGES["NON_PROPORTIONAL_METRIC"].format(index=tuple(index), mismatch=mismatch))
        ratios.append(k)
    if len(ratios) < 3:
        raise DimensionError(f"Pontos imersivos insuficientes: {len(ratios)} < 3")

    ratios = np.asarray(ratios)
    mean = complex(np.mean(ratios))
    spread = float(np.max(np.abs(ratios - mean))) / max(abs(mean), 1e-300)
    if spread > tolerance:
        raise NonConstantRatioError(ERROR_MESSAGES["NON_CONSTANT_RATIO"].format(spread=spread))
    return float(mean.real)


def second_fundamental_form_norm(surface: ImmersionSurface, accuracy: int = 4, margin: int = 2) -> float:
    """max |⟨∂_j∂_l f, ξ⟩_Ĵ| nos pontos interiores"""
    grid = surface.grid
    frame = adapted_frame_columns(surface, accuracy=accuracy)
    normals = frame[..., :, grid.m + 1:]
    x = surface.points
    first = [derivative(x, grid.steps[j], axis=j, accuracy=accuracy) for j in range(grid.m)]

    interior = tuple(slice(margin, size - margin) for size in grid.shape)
    worst = 0.0
    for j in range(grid.m):
        for l in range(j, grid.m):
            second = derivative(first[j], grid.steps[l], axis=l, accuracy=accuracy)
            for a in range(normals.shape[-1]):
                values = surface.inner(second, normals[..., a])[interior]
                worst = max(worst, float(np.max(np.abs(values))))
    return worst
