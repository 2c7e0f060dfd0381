"""
Correspondência DPW ponto a ponto: F ↦ F₊ (Birkhoff à esquerda) e
F₊ ↦ F fixo por τ (decomposição de Iwasawa)
"""
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import fft
from scipy.linalg import sqrtm

from config.settings import FACTORIZATION_CONFIG, TOLERANCES
from modules.frames import FrameFamily, derivative
from modules.loopalg import InvolutionSpec
from utils.constants import ERROR_MESSAGES, SPLIT_SIDES
from utils.exceptions import ConvergenceError, InputError
from utils.helpers import max_abs
from utils.logger import get_logger

from .birkhoff import birkhoff_split
from .circle import CircleSampling, circle_points

logger = get_logger(__name__)


def circle_lambdas(N: int = None) -> np.ndarray:
    """Amostras de λ usadas pelas famílias que passam pela fatoração"""
    return circle_points(FACTORIZATION_CONFIG["dpw_samples"] if N is None else N)


def family_sampling(family: FrameFamily) -> CircleSampling:
    """Os referenciais como lote de laços; λ devem ser as N raízes da unidade em ordem"""
    expected = circle_points(family.lams.size)
    if family.lams.size < 4 or max_abs(family.lams - expected) > 1e-12:
        raise InputError("A família deve ser amostrada em λ_k = exp(2πik/N) (use circle_lambdas)")
    return CircleSampling(family.frames)


def _source_indices(family: FrameFamily, spec: InvolutionSpec) -> List[int]:
    indices = []
    for lam in family.lams:
        partner = spec.source_lambda(lam)
        try:
            indices.append(family.index_of(partner))
        except KeyError as exc:
            raise InputError(ERROR_MESSAGES["NOT_CLOSED"].format(kind=spec.kind, lam=partner)) from exc
    return indices


def apply_to_family(spec: InvolutionSpec, frames: np.ndarray, family: FrameFamily) -> np.ndarray:
    """(φF)(λ_k) = φ⁰(F(s(λ_k))) para todas as amostras"""
    return spec.act(frames[_source_indices(family, spec)])


def dpw_forward(F: FrameFamily, bandwidth: int = None) -> FrameFamily:
    """
    Fator F₊ da fatoração de Birkhoff à esquerda F = F₊F₋, ponto a ponto

    Args:
        F: Família nas amostras do círculo (grade ou faixa)
        bandwidth: Largura de banda do fator normalizado

    Returns:
        FrameFamily com F₊(λ = 0) = I em cada ponto

    Raises:
        BigCellError: com os índices dos pontos fora da grande célula
            (renormalize com renormalize_at e tente de novo)
    """
    split = birkhoff_split(family_sampling(F), side=SPLIT_SIDES["LEFT"], bandwidth=bandwidth)
    logger.info("DPW direto: %d ponto(s), condição máx. %.3e", int(np.prod(F.shape)), split.max_condition)
    return FrameFamily(F.domain, F.lams, split.plus_factor.values, normalized=F.normalized, connection=None)


def _real_steps(domain) -> Tuple[float, ...]:
    grid = getattr(domain, "grid", domain)
    return tuple(grid.steps)


def mc_degree_support(family: FrameFamily, accuracy: int = 6) -> Dict[int, float]:
    """
    max ‖coeficiente de grau d‖ da forma de Maurer-Cartan (derivadas reais)

    Returns:
        Mapa grau -> norma, para |d| < N/2
    """
    N = family_sampling(family).N
    steps = _real_steps(family.domain)
    frames = family.frames
    norms: Dict[int, float] = {}
    for axis, h in enumerate(steps):
        dF = derivative(frames, h, axis=1 + axis, accuracy=accuracy)
        A = np.linalg.solve(frames, dF)
        coefficients = fft.fft(A, axis=0) / N
        for degree in range(-(N // 2) + 1, N // 2):
            value = max_abs(coefficients[degree % N])
            norms[degree] = max(norms.get(degree, 0.0), value)
    return norms


def degree_one_dominance(family: FrameFamily, accuracy: int = 6) -> float:
    """max_{d≠1} ‖A_d‖ / ‖A₁‖ (0 para a família constante)"""
    norms = mc_degree_support(family, accuracy)
    top = norms.get(1, 0.0)
    others = max(value for degree, value in norms.items() if degree != 1)
    if top == 0.0:
        return 0.0 if others == 0.0 else float("inf")
    return others / top


def _fixed_residuals(frames: np.ndarray, family: FrameFamily, tau: InvolutionSpec) -> np.ndarray:
    """max sobre λ de ‖τ(F) − F‖ por ponto"""
    difference = apply_to_family(tau, frames, family) - frames
    return np.max(np.abs(difference), axis=(0, -2, -1))


def dpw_backward(
    F_plus: FrameFamily,
    tau: InvolutionSpec,
    bandwidth: int = None,
    tolerance: float = None,
) -> FrameFamily:
    """
    Decomposição F₊ = F·H com τ(F) = F e H ∈ Λ⁻G, ponto a ponto

    Φ = τ(F₊)⁻¹F₊ se fatora como Φ = Y₊Y₋; com D = Y₋(∞) e k = √D,
    F = F₊Y₋⁻¹k. Assim dpw_forward(F) = F₊ exatamente.

    Args:
        F_plus: Família nas amostras do círculo
        tau: Involução do tipo τ (inverte λ e conjuga)
        bandwidth: Largura de banda da fatoração de Φ
        tolerance: Resíduo máximo de τ(F) = F

    Returns:
        FrameFamily fixa por τ

    Raises:
        ConvergenceError: com os pontos onde F não ficou fixo por τ
    """
    if not (tau.inverts and tau.conjugates):
        raise InputError(f"dpw_backward requer uma involução do tipo τ, recebido {tau.kind}")
    tolerance = TOLERANCES["fixed_frames"] if tolerance is None else tolerance
    frames = family_sampling(F_plus).values
    phi = np.linalg.solve(apply_to_family(tau, frames, F_plus), frames)
    split = birkhoff_split(CircleSampling(phi), side=SPLIT_SIDES["LEFT"], bandwidth=bandwidth)

    Y_minus = split.minus_factor
    D = Y_minus.coefficient(0)
    shape = D.shape[:-2]
    roots = np.empty_like(D)
    for index in np.ndindex(*shape):
        roots[index] = sqrtm(D[index])

    F = frames @ np.linalg.solve(Y_minus.values, np.broadcast_to(roots, frames.shape))
    residuals = _fixed_residuals(F, F_plus, tau)
    bad = np.argwhere(residuals > tolerance)
    logger.info("DPW inverso: resíduo máx. de τ %.3e", float(np.max(residuals)))
    if bad.size:
        points = [tuple(int(i) for i in index) for index in bad]
        raise ConvergenceError(
            ERROR_MESSAGES["CONVERGENCE"].format(count=len(points), point=points[0], residual=float(np.max(residuals))),
            points=points,
            residuals=[float(residuals[p]) for p in points],
        )
    return FrameFamily(F_plus.domain, F_plus.lams, F, normalized=F_plus.normalized)


def renormalize_at(F: FrameFamily, q: Sequence[int]) -> FrameFamily:
    """R(x, λ) = F(q, λ)⁻¹F(x, λ); R(q) = I e R⁻¹dR = F⁻¹dF"""
    logger.debug("renormalizando no ponto %s", tuple(q))
    return F.renormalized(q)


def tau_compatibility_residual(F: FrameFamily, tau: InvolutionSpec, bandwidth: int = None) -> float:
    """
    Para F fixo por τ: o fator G₋ de F = G₋G₊ coincide com τ(F₊)

    Returns:
        max ‖G₋ − τ(F₊)‖ sobre pontos e amostras
    """
    sampling = family_sampling(F)
    left = birkhoff_split(sampling, side=SPLIT_SIDES["LEFT"], bandwidth=bandwidth)
    right = birkhoff_split(sampling, side=SPLIT_SIDES["RIGHT"], bandwidth=bandwidth)
    expected = apply_to_family(tau, left.plus_factor.values, F)
    return right.minus_factor.distance(expected)
