"""
Extensão pluriharmônica de famílias de imersões e de planos curvos para a
faixa complexa M_ε
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import FACTORIZATION_CONFIG, TOLERANCES
from modules.flats import ComplexStrip, closed_form_of, extend_frame_holo, fit_strip, restrict_to_real
from modules.frames import FrameFamily
from modules.immersions import CaseSpec, evaluate_family, second_fundamental_form_norm
from modules.loopalg import InvolutionSpec, SignatureForm, rho2, rho_hat3, row_for_lambda, tau3
from utils.constants import WARNING_MESSAGES
from utils.exceptions import BigCellError, InputError
from utils.helpers import max_abs
from utils.logger import get_logger

from .dpw import circle_lambdas, dpw_backward, dpw_forward, family_sampling
from .pluriharmonic import pluriharmonic_residuals, reality_residual_on_M

logger = get_logger(__name__)


@dataclass
class ExtensionResult:
    """Família estendida na faixa e os resíduos da verificação"""

    family: FrameFamily
    strip: ComplexStrip
    case: int
    symmetric_space: str
    pluriharmonic: float
    conjugate: float
    reality_on_m: float
    column_residual: float
    cartan_residual: float
    patches: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)

    def within_tolerances(self) -> bool:
        return (
            self.pluriharmonic <= TOLERANCES["pluriharmonic"]
            and self.reality_on_m <= TOLERANCES["reality_on_m"]
            and self.column_residual <= TOLERANCES["roundtrip"]
        )

    def as_dict(self) -> Dict:
        return {
            "case": self.case,
            "symmetric_space": self.symmetric_space,
            "strip": self.strip.as_dict(),
            "pluriharmonic_residual": self.pluriharmonic,
            "conjugate_relation_residual": self.conjugate,
            "reality_residual_on_M": self.reality_on_m,
            "column_residual": self.column_residual,
            "cartan_residual": self.cartan_residual,
            "patches": len(self.patches) or 1,
        }


def cartan_embedding(frames: np.ndarray, P: SignatureForm) -> np.ndarray:
    """F P F⁻¹ (invariante por gauge à direita que comuta com P)"""
    return (frames * P.vector) @ np.linalg.inv(frames)


def column_residual(first: np.ndarray, second: np.ndarray, m: int) -> float:
    """max sobre pontos de min(‖a − b‖, ‖a + b‖) para a coluna m"""
    a, b = first[..., :, m], second[..., :, m]
    plus = np.max(np.abs(a - b), axis=-1)
    minus = np.max(np.abs(a + b), axis=-1)
    return float(np.max(np.minimum(plus, minus)))


def _extend_local(
    closed,
    strip: ComplexStrip,
    lams: np.ndarray,
    base_values: np.ndarray,
    tau: InvolutionSpec,
    bandwidth: Optional[int],
    check: bool,
) -> np.ndarray:
    """F(q)·R̂ na faixa, com R̂ vindo de R = F(q)⁻¹F estendida holomorficamente"""
    holomorphic = extend_frame_holo(closed, strip, lams, check=check)
    plus = dpw_forward(holomorphic, bandwidth)
    extended = dpw_backward(plus, tau, bandwidth)
    expand = (slice(None),) + (None,) * len(strip.shape)
    return base_values[expand] @ extended.frames


def _tiles(count: int, size: int) -> List[Tuple[int, int]]:
    """Intervalos inclusivos de até `size` pontos cobrindo [0, count)"""
    tiles = []
    for start in range(0, count, size):
        stop = min(start + size, count) - 1
        if tiles and stop - start < 1:
            tiles[-1] = (tiles[-1][0], stop)
        else:
            tiles.append((start, stop))
    return tiles


def _patch_extend(closed, F: FrameFamily, strip: ComplexStrip, tau, bandwidth, patch_size, check):
    """Renormaliza no centro de cada bloco, estende e cola por F(q, λ)"""
    grid = strip.grid
    frames = np.empty((F.lams.size, *strip.shape, F.n, F.n), dtype=complex)
    patches = []
    axes_tiles = [_tiles(count, patch_size) for count in grid.shape]
    for bounds in np.ndindex(*[len(t) for t in axes_tiles]):
        lower = tuple(axes_tiles[a][b][0] for a, b in enumerate(bounds))
        upper = tuple(axes_tiles[a][b][1] for a, b in enumerate(bounds))
        q = tuple((lo + hi) // 2 for lo, hi in zip(lower, upper))
        sub = ComplexStrip(grid.sub_grid(lower, upper, q), strip.eps, strip.imag_counts)
        try:
            local = _extend_local(closed, sub, F.lams, F.frames[(slice(None), *q)], tau, bandwidth, check)
        except BigCellError as exc:
            points = [tuple(lo + p for lo, p in zip(lower, point[: grid.m])) + tuple(point[grid.m:]) for point in exc.points]
            raise BigCellError(str(exc), points=points, conditions=exc.conditions) from exc
        region = (slice(None),) + tuple(slice(lo, hi + 1) for lo, hi in zip(lower, upper))
        frames[region] = local
        patches.append((lower, upper))
        logger.debug("bloco %s–%s estendido a partir de q = %s", lower, upper, q)
    return frames, patches


def _patch_residuals(family: FrameFamily, patches, tau) -> Tuple[float, float]:
    """Resíduos de pluriharmonicidade bloco a bloco (o gauge salta entre blocos)"""
    strip = family.domain
    worst = (0.0, 0.0)
    for lower, upper in patches:
        region = (slice(None),) + tuple(slice(lo, hi + 1) for lo, hi in zip(lower, upper))
        sub = ComplexStrip(strip.grid.sub_grid(lower, upper, lower), strip.eps, strip.imag_counts)
        local = FrameFamily(sub, family.lams, family.frames[region], normalized=False)
        residuals = pluriharmonic_residuals(local, tau)
        worst = (max(worst[0], residuals[0]), max(worst[1], residuals[1]))
    return worst


def pluriharmonic_extend(
    F: FrameFamily,
    spec: CaseSpec,
    strip: Optional[ComplexStrip] = None,
    tau: Optional[InvolutionSpec] = None,
    bandwidth: int = None,
    patch_size: int = None,
    check: bool = True,
) -> ExtensionResult:
    """
    Extensão pluriharmônica F̂ de uma família estendida de imersões

    A conexão fechada de F é complexificada, F é estendida holomorficamente,
    o fator F₊ é tomado ponto a ponto e dpw_backward reconstrói F̂ fixo por
    τ. Em caso de falha da grande célula, a grade é dividida em blocos
    renormalizados no centro e colados por F(q, λ).

    Args:
        F: Família na grade real, amostrada em circle_lambdas()
        spec: Caso (define τ, ρ positiva, P e o espaço simétrico)
        strip: Faixa (padrão: ε e amostras de STRIP_CONFIG)
        tau: Involução τ (padrão: a do caso)
        bandwidth: Largura de banda das fatorações
        patch_size: Pontos por bloco no modo de colagem
        check: Verifica singularidades, integrabilidade e Cauchy-Riemann

    Returns:
        ExtensionResult
    """
    family_sampling(F)
    if F.connection is None:
        raise InputError("A extensão requer a conexão (com expressões fechadas) da família")
    closed = closed_form_of(F.connection)
    strip = ComplexStrip.create(F.domain) if strip is None else strip
    if strip.grid.shape != tuple(F.domain.shape) or strip.grid.ranges != F.domain.ranges:
        raise InputError("A faixa deve ser construída sobre a grade da família")
    strip = fit_strip(closed, strip.with_base((*F.domain.base_index, *strip.imag_base)))
    record = spec.record
    tau = record.tau if tau is None else tau
    patch_size = FACTORIZATION_CONFIG["patch_size"] if patch_size is None else patch_size

    logger.info("extensão pluriharmônica: caso %d, faixa ε = %s", spec.case, strip.eps)
    base_values = F.frames[(slice(None), *strip.grid.base_index)]
    patches = []
    try:
        frames = _extend_local(closed, strip, F.lams, base_values, tau, bandwidth, check)
    except BigCellError:
        logger.warning(WARNING_MESSAGES["PATCH_MODE"])
        frames, patches = _patch_extend(closed, F, strip, tau, bandwidth, patch_size, check)

    family = FrameFamily(strip, F.lams, frames, normalized=F.normalized, connection=F.connection)
    if patches:
        dbar, conjugate = _patch_residuals(family, patches, tau)
    else:
        dbar, conjugate = pluriharmonic_residuals(family, tau)

    real = restrict_to_real(family)
    result = ExtensionResult(
        family=family,
        strip=strip,
        case=spec.case,
        symmetric_space=record.symmetric_space,
        pluriharmonic=dbar,
        conjugate=conjugate,
        reality_on_m=reality_residual_on_M(family, record.rho_positive),
        column_residual=column_residual(real.frames, F.frames, record.m),
        cartan_residual=max_abs(cartan_embedding(real.frames, record.P) - cartan_embedding(F.frames, record.P)),
        patches=patches,
    )
    logger.info(
        "extensão: ‖A₁''‖ = %.3e, realidade em M = %.3e, colunas = %.3e",
        result.pluriharmonic,
        result.reality_on_m,
        result.column_residual,
    )
    return result


def gluing_residual(
    F: FrameFamily,
    spec: CaseSpec,
    strip: ComplexStrip,
    q: Sequence[int],
    r: Sequence[int],
    tau: Optional[InvolutionSpec] = None,
    bandwidth: int = None,
) -> float:
    """
    max ‖F̂_q P F̂_q⁻¹ − F̂_r P F̂_r⁻¹‖ entre as extensões renormalizadas em q e r

    F̂_x = F(x, λ)·R̂_x, com R_x = F(x)⁻¹F estendida a partir de x.
    """
    closed = closed_form_of(F.connection)
    tau = spec.record.tau if tau is None else tau
    embeddings = []
    for point in (tuple(q), tuple(r)):
        based = strip.with_base((*point, *strip.imag_base))
        frames = _extend_local(closed, based, F.lams, F.frames[(slice(None), *point)], tau, bandwidth, True)
        embeddings.append(cartan_embedding(frames, spec.record.P))
    residual = max_abs(embeddings[0] - embeddings[1])
    logger.debug("colagem entre %s e %s: %.3e", tuple(q), tuple(r), residual)
    return residual


def pluriharmonic_from_curved_flat(
    eta,
    strip: ComplexStrip,
    tau: Optional[InvolutionSpec] = None,
    lams: Sequence[complex] = None,
    signature: Optional[SignatureForm] = None,
    bandwidth: int = None,
) -> FrameFamily:
    """
    Mapa pluriharmônico a partir de um plano curvo em expressões fechadas

    F₊ = extensão holomorfa da integral de η·λ; F̂ = dpw_backward(F₊, τ).

    Args:
        eta: Expressões fechadas de η (só grau 1) ou família com closed_form
        strip: Faixa
        tau: Involução τ (padrão τ₃)
        lams: Amostras do círculo (padrão circle_lambdas())
        signature: J para projeção no grupo
        bandwidth: Largura de banda da fatoração

    Returns:
        FrameFamily na faixa (possivelmente mais estreita)
    """
    closed = closed_form_of(eta)
    if tuple(closed.degrees) != (1,):
        raise InputError(f"η deve ter apenas grau 1, recebido graus {closed.degrees}")
    strip = fit_strip(closed, strip)
    lams = circle_lambdas() if lams is None else np.asarray(lams, dtype=complex)
    plus = extend_frame_holo(closed, strip, lams, signature=signature)
    return dpw_backward(plus, tau3() if tau is None else tau, bandwidth)


@dataclass
class TotallyGeodesicReport:
    """Candidato a extensão totalmente geodésica em λ = 1"""

    case: int
    involution: str
    fixed_residual: float
    second_fundamental_form: float

    @property
    def is_candidate(self) -> bool:
        tol = TOLERANCES["totally_geodesic"]
        return bool(self.fixed_residual <= tol and self.second_fundamental_form <= tol)

    def as_dict(self) -> Dict:
        return {
            "case": self.case,
            "involution": self.involution,
            "fixed_residual": self.fixed_residual,
            "second_fundamental_form": self.second_fundamental_form,
            "is_candidate": self.is_candidate,
        }


def totally_geodesic_candidate(
    F: FrameFamily,
    spec: CaseSpec,
    strip: Optional[ComplexStrip] = None,
    tau: Optional[InvolutionSpec] = None,
) -> TotallyGeodesicReport:
    """
    Verifica se a extensão restrita a M é fixa por ρ₂ (caso 2) ou ρ̂₃ (caso 3)
    e mede a segunda forma fundamental em λ = 1
    """
    if spec.case not in (2, 3):
        raise InputError(f"Critério totalmente geodésico definido para os casos 2 e 3, recebido {spec.case}")
    extension = pluriharmonic_extend(F, spec, strip, tau)
    rho = rho2() if spec.case == 2 else rho_hat3(spec.record.Q)
    row = row_for_lambda(spec.case, 1.0, spec.m, spec.k)
    surface = evaluate_family(F, 1.0, CaseSpec(spec.case, row.row, m=spec.m, k=spec.k))
    return TotallyGeodesicReport(
        case=spec.case,
        involution=rho.kind,
        fixed_residual=float(reality_residual_on_M(extension.family, rho)),
        second_fundamental_form=float(second_fundamental_form_norm(surface)),
    )
