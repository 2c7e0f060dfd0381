"""
Superfícies imersas em quádricas e avaliação de famílias de referenciais
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from config.settings import TOLERANCES
from modules.frames import FrameFamily, Grid
from modules.loopalg import SignatureForm, sigma
from utils.constants import ERROR_MESSAGES
from utils.exceptions import DimensionError, RealityError
from utils.helpers import max_abs
from utils.logger import get_logger

from .case_spec import CaseSpec

logger = get_logger(__name__)


@dataclass
class ImmersionSurface:
    """Pontos reais x(u, v) ∈ R^{n} com forma ambiente J e sinal da quádrica"""

    grid: Grid
    points: np.ndarray
    ambient_J: SignatureForm
    quadric_sign: int
    lam: Optional[complex] = None
    T: Tuple[complex, ...] = field(default=())
    imaginary_residual: float = 0.0

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.shape != (*self.grid.shape, self.ambient_J.n):
            raise DimensionError(f"Pontos com shape {self.points.shape}, esperado {(*self.grid.shape, self.ambient_J.n)}")
        if not self.T:
            self.T = (1.0,) * self.ambient_J.n

    @property
    def n(self) -> int:
        return self.ambient_J.n

    @property
    def m(self) -> int:
        return self.grid.m

    def inner(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.ambient_J.inner(x, y)

    def transformed(self, matrix: np.ndarray) -> "ImmersionSurface":
        """Aplica uma isometria constante do espaço ambiente"""
        points = np.einsum("ij,...j->...i", np.real(matrix), self.points)
        return ImmersionSurface(self.grid, points, self.ambient_J, self.quadric_sign, self.lam, self.T)

    def to_frame(self):
        """Tabela (u, v, x1..xn) como pandas.DataFrame"""
        coordinates = self.grid.points.reshape(-1, self.m)
        columns = {name: coordinates[:, j] for j, name in enumerate(("u", "v", "w")[: self.m])}
        flat = self.points.reshape(-1, self.n)
        columns.update({f"x{i + 1}": flat[:, i] for i in range(self.n)})
        return pd.DataFrame(columns)


def column_of(frames: np.ndarray, T, m: int) -> np.ndarray:
    """(m+1)'ésima coluna de Ad_T F: T F e_m / t_m"""
    t = np.asarray(T, dtype=complex)
    return t * frames[..., :, m] / t[m]


def surface_from_frames(
    frames: np.ndarray,
    grid: Grid,
    spec: CaseSpec,
    lam: Optional[complex] = None,
    tolerance: float = None,
) -> ImmersionSurface:
    """
    Extrai f de uma grade de referenciais (já avaliada em λ)

    Args:
        frames: Array (*grid.shape, n, n)
        grid: Grade
        spec: Caso e linha (definem T e Ĵ)
        lam: λ usado (metadado)
        tolerance: Tolerância relativa da parte imaginária
    """
    tolerance = TOLERANCES["reality"] if tolerance is None else tolerance
    record = spec.record
    column = column_of(frames, record.T, record.m)
    imaginary = max_abs(column.imag)
    scale = max(1.0, max_abs(column))
    if imaginary > tolerance * scale:
        raise RealityError(ERROR_MESSAGES["REALITY_VIOLATION"].format(imag=imaginary, tol=tolerance * scale))
    return ImmersionSurface(
        grid=grid,
        points=column.real,
        ambient_J=record.J_hat,
        quadric_sign=record.quadric_sign,
        lam=lam,
        T=record.T,
        imaginary_residual=imaginary,
    )


def involution_residuals(family: FrameFamily, spec: CaseSpec, lam: complex) -> Dict[str, float]:
    """
    Resíduos de σ e da involução real ρ da linha

    Confere a conexão anexada (coeficiente a coeficiente) e os referenciais
    em λ contra os de s(λ) quando essa amostra existe. Involuções sem nada
    a conferir ficam fora do resultado.
    """
    residuals = {}
    index = family.index_of(lam)
    for inv in (sigma(spec.record.P), spec.record.rho):
        found = []
        if family.connection is not None:
            found.append(family.connection.fixed_residual(inv))
        try:
            partner = family.index_of(inv.source_lambda(lam))
        except KeyError:
            partner = None
        if partner is not None:
            found.append(max_abs(inv.act(family.frames[partner]) - family.frames[index]))
        if found:
            residuals[inv.kind] = max(found)
        else:
            logger.debug("%s não verificável em λ=%s", inv.kind, lam)
    return residuals


def evaluate_family(family: FrameFamily, lam: complex, spec: CaseSpec, tolerance: float = None) -> ImmersionSurface:
    """
    Avalia f^λ = coluna (m+1) de Ad_T F_λ

    Args:
        family: Referenciais estendidos (deve conter a amostra λ)
        lam: λ na faixa da linha (λ ∉ {0, ±i})
        spec: Caso/linha
        tolerance: Tolerância da parte imaginária (padrão 1e-10, relativa a max(1, |f|))

    Returns:
        ImmersionSurface real com Ĵ e o sinal da quádrica da linha
    """
    spec.record.require_lambda(lam)
    frames = family.frame_at(lam)
    for kind, residual in involution_residuals(family, spec, lam).items():
        if residual > TOLERANCES["fixed_frames"]:
            raise RealityError(
                ERROR_MESSAGES["NOT_FIXED_BY_INVOLUTION"].format(
                    kind=kind, residual=residual, tol=TOLERANCES["fixed_frames"]
                )
            )
    surface = surface_from_frames(frames, family.domain, spec, lam, tolerance)
    logger.debug("superfície avaliada em λ=%s (caso %d, linha %d)", lam, spec.case, spec.row)
    return surface
