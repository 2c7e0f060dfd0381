"""
Planos curvos: resíduos das equações, normalização de gauge e integração de
famílias A(λ) = η·λ
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import expm

from config.settings import TOLERANCES
from modules.frames import (
    ClosedFormConnection,
    ConnectionFamily,
    FrameFamily,
    Grid,
    OneFormField,
    closed_residual,
    field_mc_residual,
    integrability_threshold,
    integrate_family,
    mc_residual,
    wedge_residual,
)
from modules.loopalg import InvolutionSpec, SignatureForm, sigma
from utils.constants import ERROR_MESSAGES
from utils.exceptions import DimensionError, InputError, IntegrabilityError
from utils.helpers import max_abs
from utils.logger import get_logger

from .expressions import ExpressionConnection, zero_matrix_text

logger = get_logger(__name__)

EtaSource = Union[OneFormField, ClosedFormConnection, ConnectionFamily, "CurvedFlatData"]


@dataclass
class CurvedFlatData:
    """η com valores em 𝔭 (autoespaço −1 de σ⁰ = Ad_P) e a condição de realidade"""

    eta: OneFormField
    P: SignatureForm
    rho: Optional[InvolutionSpec] = None
    closed_form: Optional[ClosedFormConnection] = None

    def __post_init__(self):
        if self.P.n != self.eta.n:
            raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=self.eta.n, got=self.P.n))

    @classmethod
    def from_closed_form(
        cls,
        closed: ClosedFormConnection,
        grid: Grid,
        P: SignatureForm,
        rho: Optional[InvolutionSpec] = None,
    ) -> "CurvedFlatData":
        """Amostra expressões fechadas de grau 1 na grade (mantidas para a integração)"""
        family = ConnectionFamily.from_closed_form(closed, grid)
        if set(family.degrees) != {1}:
            raise InputError(f"η deve ter apenas grau 1, recebido graus {family.degrees}")
        return cls(family.coefficient(1), P, rho, closed_form=closed)

    def sigma_residual(self) -> float:
        """max ‖P η P + η‖ (η deve ter suporte fora da diagonal de blocos)"""
        p = self.P.vector
        return max_abs(p[:, None] * self.eta.components * p[None, :] + self.eta.components)

    def reality_residual(self) -> float:
        """max ‖φ(ηλ) − ηλ‖ no coeficiente de grau 1 (0 sem ρ)"""
        if self.rho is None:
            return 0.0
        if self.rho.inverts:
            raise InputError(f"ρ = {self.rho.kind} troca os graus e não fixa η·λ")
        image = self.rho.act(self.eta.components)
        if self.rho.negates:
            image = -image
        return max_abs(image - self.eta.components)

    def validate(self, tolerance: float = None) -> Tuple[float, float]:
        """Confere σ e ρ; devolve (resíduo de σ, resíduo de ρ)"""
        tolerance = TOLERANCES["involution"] if tolerance is None else tolerance
        residuals = (self.sigma_residual(), self.reality_residual())
        for name, residual in zip(("sigma", self.rho.kind if self.rho else "rho"), residuals):
            if residual > tolerance * max(1.0, self.eta.max_abs()):
                raise InputError(f"η não é fixa por {name} (resíduo {residual:.3e})")
        return residuals

    @property
    def sigma(self) -> InvolutionSpec:
        return sigma(self.P)

    def residuals(self) -> Tuple[float, float]:
        return flat_residuals(self.eta)


def flat_residuals(eta: OneFormField) -> Tuple[float, float]:
    """
    (max ‖dη‖, max ‖η∧η‖) por célula

    As duas equações valem separadamente para que η·λ seja integrável para
    todo λ.
    """
    steps = eta.grid.steps
    return closed_residual(eta.components, steps), wedge_residual(eta.components, steps)


def split_connection(connection: ConnectionFamily) -> Tuple[OneFormField, OneFormField]:
    """(A₀, A₁) de uma família de ordem (0, 1)"""
    return connection.coefficient(0), connection.coefficient(1)


def gauge_normalize(A0: OneFormField, A1: OneFormField, threshold: float = None) -> OneFormField:
    """
    Remove o termo de grau 0: devolve K A₁ K⁻¹ com K⁻¹dK = A₀, K(p) = I

    F̂ = F K⁻¹ tem forma de Maurer-Cartan K A₁ K⁻¹ λ.

    Args:
        A0: Componente de grau 0 (integrável)
        A1: Componente de grau 1
        threshold: Limiar do resíduo de dA₀ + A₀∧A₀

    Returns:
        η normalizada
    """
    if A0.grid != A1.grid:
        raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=A0.grid.shape, got=A1.grid.shape))
    if A0.max_abs() == 0:
        return A1

    family = ConnectionFamily({0: A0})
    limit = integrability_threshold(family, threshold)
    residual = field_mc_residual(A0)
    if residual > limit:
        raise IntegrabilityError(ERROR_MESSAGES["NON_INTEGRABLE"].format(residual=residual, threshold=limit), residual)

    K = integrate_family(family, [1.0], check=False).frames[0]
    logger.debug("gauge de grau 0 removido (resíduo %.3e)", residual)
    return A1.conjugated(K)


def _as_family(eta: EtaSource, grid: Optional[Grid]) -> ConnectionFamily:
    if isinstance(eta, CurvedFlatData):
        eta.validate()
        if eta.closed_form is not None:
            return ConnectionFamily.from_closed_form(eta.closed_form, eta.eta.grid)
        eta = eta.eta
    if isinstance(eta, ConnectionFamily):
        return eta if grid is None or grid == eta.grid else eta.on_grid(grid)
    if isinstance(eta, ClosedFormConnection):
        if grid is None:
            raise DimensionError("Uma grade é necessária para amostrar η")
        return ConnectionFamily.from_closed_form(eta, grid)
    return ConnectionFamily({1: eta})


def check_flat(family: ConnectionFamily, threshold: float = None) -> Tuple[float, float]:
    """
    Verifica dη = 0 e η∧η = 0 para A(λ) = η·λ

    Com expressões fechadas usa os resíduos analíticos em λ = ±1
    (λdη + λ²η∧η); caso contrário os resíduos por célula.
    """
    limit = integrability_threshold(family, threshold)
    if family.closed_form is not None:
        plus = mc_residual(family, 1.0, "analytic")
        minus = mc_residual(family, -1.0, "analytic")
        residuals = (plus, minus)
    else:
        residuals = flat_residuals(family.coefficient(1))
    worst = max(residuals)
    if worst > limit:
        raise IntegrabilityError(ERROR_MESSAGES["NON_INTEGRABLE"].format(residual=worst, threshold=limit), worst)
    return residuals


def curved_flat_from_eta(
    eta: EtaSource,
    lams: Sequence[complex],
    grid: Optional[Grid] = None,
    signature: Optional[SignatureForm] = None,
    threshold: float = None,
) -> FrameFamily:
    """
    Integra A(λ) = η·λ em cada amostra de λ

    Args:
        eta: Campo amostrado, expressões fechadas (grau 1), família de grau 1
            ou CurvedFlatData (σ e ρ conferidos antes da integração)
        lams: Amostras de λ
        grid: Grade (obrigatória para expressões fechadas)
        signature: J para projeção no grupo
        threshold: Limiar das equações de plano curvo

    Returns:
        FrameFamily com F(p) = I
    """
    family = _as_family(eta, grid)
    if set(family.degrees) - {1}:
        low, high = family.connection_order()
        if (low, high) != (1, 1):
            raise DimensionError(f"η deve ter apenas grau 1, recebido ordem {(low, high)}")
    check_flat(family, threshold)
    return integrate_family(family, lams, check=False, signature=signature)


# Plano curvo de referência: η = N₁ d(sin u cos v) + N₂ d(u + v²)


def example_flat_matrices(n: int = 4, twisted: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    N₁ = E₀₂ − E₂₀ e N₂ = E₁₃ − E₃₁ (comutam, em 𝔭 para P = diag(1, 1, −1, −1))

    Com twisted, N₂ é multiplicado por i (fixo por ρ̂₃ em vez de ρ₂).
    """
    N1 = np.zeros((n, n), dtype=complex)
    N2 = np.zeros((n, n), dtype=complex)
    N1[0, 2], N1[2, 0] = 1, -1
    N2[1, 3], N2[3, 1] = 1, -1
    return N1, (1j if twisted else 1) * N2


def example_flat_potentials(u, v) -> Tuple[np.ndarray, np.ndarray]:
    """(φ₁, φ₂) = (sin u cos v, u + v²), nulos na origem"""
    u, v = np.asarray(u), np.asarray(v)
    return np.sin(u) * np.cos(v), u + v ** 2


def example_flat_connection(twisted: bool = False) -> ExpressionConnection:
    """η como expressões de grau 1 (aceita coordenadas complexas)"""
    du, dv = zero_matrix_text(4), zero_matrix_text(4)
    scale = "(const 0 1)" if twisted else "1"
    du[0][2], du[2][0] = "(mul (cos u) (cos v))", "(neg (mul (cos u) (cos v)))"
    dv[0][2], dv[2][0] = "(neg (mul (sin u) (sin v)))", "(mul (sin u) (sin v))"
    du[1][3], du[3][1] = scale, f"(neg {scale})"
    dv[1][3], dv[3][1] = f"(mul {scale} 2 v)", f"(mul -2 {scale} v)"
    return ExpressionConnection({1: [du, dv]})


def example_flat_frames(points: np.ndarray, lam: complex, twisted: bool = False) -> np.ndarray:
    """Referencial exato exp(λ(φ₁N₁ + φ₂N₂)) em pontos (..., 2), reais ou complexos"""
    N1, N2 = example_flat_matrices(twisted=twisted)
    points = np.asarray(points)
    phi1, phi2 = example_flat_potentials(points[..., 0], points[..., 1])
    generator = lam * (phi1[..., None, None] * N1 + phi2[..., None, None] * N2)
    return expm(generator)
