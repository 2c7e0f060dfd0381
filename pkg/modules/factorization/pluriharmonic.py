"""
Resíduos de pluriharmonicidade (A₁'' = 0) e de realidade no corte real
"""
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import fft
from scipy.linalg import expm

from config.settings import STRIP_CONFIG
from modules.flats import ComplexStrip, restrict_to_real
from modules.frames import FrameFamily, derivative
from modules.loopalg import InvolutionSpec, tau3
from utils.constants import ERROR_MESSAGES
from utils.exceptions import InputError
from utils.helpers import max_abs
from utils.logger import get_logger

from .dpw import family_sampling

logger = get_logger(__name__)


def _require_strip(family: FrameFamily) -> ComplexStrip:
    strip = family.domain
    if not isinstance(strip, ComplexStrip):
        raise InputError("A família deve estar definida numa faixa complexa")
    needed = STRIP_CONFIG["min_samples"]
    if any(count < needed for count in strip.imag_counts):
        raise InputError(ERROR_MESSAGES["STRIP_RESOLUTION"].format(needed=needed))
    return strip


def type_components(family: FrameFamily, accuracy: int = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Partes (1,0) e (0,1) da forma de Maurer-Cartan na faixa

    Returns:
        (A', A''), cada um com shape (m, N, *strip.shape, n, n):
        A'_j = F⁻¹∂_{z_j}F e A''_j = F⁻¹∂_{z̄_j}F
    """
    strip = _require_strip(family)
    accuracy = STRIP_CONFIG["derivative_accuracy"] if accuracy is None else accuracy
    frames = family.frames
    m = strip.m
    holomorphic, antiholomorphic = [], []
    for j in range(m):
        d_x = derivative(frames, strip.grid.steps[j], axis=1 + j, accuracy=accuracy)
        d_y = derivative(frames, strip.imag_steps[j], axis=1 + m + j, accuracy=accuracy)
        holomorphic.append(np.linalg.solve(frames, 0.5 * (d_x - 1j * d_y)))
        antiholomorphic.append(np.linalg.solve(frames, 0.5 * (d_x + 1j * d_y)))
    return np.stack(holomorphic), np.stack(antiholomorphic)


def pluriharmonic_residuals(
    family: FrameFamily,
    tau: Optional[InvolutionSpec] = None,
    accuracy: int = None,
) -> Tuple[float, float]:
    """
    (max ‖A₁''‖, max ‖A₋₁'' − τ⁰(A₁')‖)

    A forma é expandida em λ pelas amostras do círculo; o segundo resíduo é a
    relação de conjugação de um referencial fixo por τ (τ₃ por padrão).
    """
    tau = tau3() if tau is None else tau
    N = family_sampling(family).N
    prime, double_prime = type_components(family, accuracy)
    coefficients_prime = fft.fft(prime, axis=1) / N
    coefficients_double = fft.fft(double_prime, axis=1) / N

    dbar = max_abs(coefficients_double[:, 1 % N])
    conjugate = max_abs(coefficients_double[:, -1 % N] - tau.act(coefficients_prime[:, 1 % N]))
    logger.debug("pluriharmonicidade: ‖A₁''‖ = %.3e, relação conjugada %.3e", dbar, conjugate)
    return dbar, conjugate


def pluriharmonic_residual(family: FrameFamily, tau: Optional[InvolutionSpec] = None, accuracy: int = None) -> float:
    """max ‖A₁''‖ da família na faixa"""
    return pluriharmonic_residuals(family, tau, accuracy)[0]


def reality_residual_on_M(family: FrameFamily, rho: InvolutionSpec) -> float:
    """Resíduo de ρ(F) = F restrito ao corte real y = 0"""
    _require_strip(family)
    return restrict_to_real(family).fixed_residual(rho)


def reality_residual_at(family: FrameFamily, rho: InvolutionSpec, imag_index: Sequence[int]) -> float:
    """Resíduo de ρ(F) = F num corte imaginário fixo (controle negativo fora de M)"""
    strip = _require_strip(family)
    index = (slice(None),) * (1 + strip.m) + tuple(imag_index)
    frames = family.frames[index]
    sliced = FrameFamily(strip.grid, family.lams, frames, normalized=False)
    return sliced.fixed_residual(rho)


def with_antiholomorphic_term(family: FrameFamily, generator: np.ndarray, amount: float = 0.5) -> FrameFamily:
    """
    F·exp(λ·amount·z̄₁·N): família com dependência anti-holomorfa injetada

    Controle negativo: A₁'' ganha o termo amount·N, logo o resíduo de
    pluriharmonicidade deixa de ser pequeno.
    """
    strip = _require_strip(family)
    z_bar = np.conj(strip.points[..., 0])
    lams = family.lams.reshape(-1, *([1] * len(strip.shape)))
    exponent = (amount * lams * z_bar[None])[..., None, None] * np.asarray(generator, dtype=complex)
    frames = family.frames @ expm(exponent)
    return FrameFamily(strip, family.lams, frames, normalized=False)
