"""
Faixa complexa M_ε ⊂ C^m, complexificação de 1-formas fechadas e extensão
holomorfa de referenciais
"""
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from config.settings import STRIP_CONFIG, TOLERANCES
from modules.frames import (
    ClosedFormConnection,
    ConnectionFamily,
    FrameFamily,
    Grid,
    OneFormField,
    closed_residual,
    derivative,
    integrate_family,
    march_lines,
    wedge_residual,
)
from modules.loopalg import SignatureForm
from modules.frames.integrator import group_projector
from utils.constants import ERROR_MESSAGES, WARNING_MESSAGES
from utils.exceptions import InputError, IntegrabilityError, StripSingularityError
from utils.helpers import max_abs
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ComplexStrip:
    """
    Grade real × offsets imaginários: z_j = x_j + i y_j, |y_j| ≤ ε_j

    Eixos de um array na faixa: (*grid.shape, *imag_counts).
    """

    grid: Grid
    eps: Tuple[float, ...]
    imag_counts: Tuple[int, ...]
    imag_base: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        m = self.grid.m
        eps = tuple(float(e) for e in np.broadcast_to(np.asarray(self.eps, dtype=float), (m,)))
        counts = tuple(int(c) for c in np.broadcast_to(np.asarray(self.imag_counts), (m,)))
        if any(not e > 0 for e in eps):
            raise InputError(f"Largura da faixa deve ser positiva: {eps}")
        needed = STRIP_CONFIG["min_samples"]
        if any(c < needed or c % 2 == 0 for c in counts):
            raise InputError(ERROR_MESSAGES["STRIP_RESOLUTION"].format(needed=f"{needed} (ímpar)"))
        base = tuple(c // 2 for c in counts) if self.imag_base is None else tuple(int(i) for i in self.imag_base)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "imag_counts", counts)
        object.__setattr__(self, "imag_base", base)

    @classmethod
    def create(cls, grid: Grid, eps: Union[float, Sequence[float]] = None, imag_counts=None) -> "ComplexStrip":
        eps = STRIP_CONFIG["eps"] if eps is None else eps
        imag_counts = STRIP_CONFIG["imaginary_samples"] if imag_counts is None else imag_counts
        return cls(grid=grid, eps=eps, imag_counts=imag_counts)

    @property
    def m(self) -> int:
        return self.grid.m

    @property
    def shape(self) -> Tuple[int, ...]:
        return (*self.grid.shape, *self.imag_counts)

    @property
    def base_index(self) -> Tuple[int, ...]:
        return (*self.grid.base_index, *self.imag_base)

    @property
    def imag_axes(self) -> Tuple[np.ndarray, ...]:
        return tuple(np.linspace(-e, e, c) for e, c in zip(self.eps, self.imag_counts))

    @property
    def imag_steps(self) -> Tuple[float, ...]:
        return tuple(2 * e / (c - 1) for e, c in zip(self.eps, self.imag_counts))

    @property
    def real_index(self) -> Tuple[int, ...]:
        """Índices imaginários do corte real y = 0"""
        return tuple(c // 2 for c in self.imag_counts)

    @property
    def points(self) -> np.ndarray:
        """Coordenadas complexas, shape (*shape, m)"""
        real = self.grid.points.reshape(*self.grid.shape, *([1] * self.m), self.m)
        imag = np.stack(np.meshgrid(*self.imag_axes, indexing="ij"), axis=-1)
        imag = imag.reshape(*([1] * self.m), *self.imag_counts, self.m)
        return real + 1j * imag

    def with_base(self, index: Sequence[int]) -> "ComplexStrip":
        index = tuple(index)
        return ComplexStrip(self.grid.with_base(index[: self.m]), self.eps, self.imag_counts, index[self.m:])

    def halved(self) -> "ComplexStrip":
        return ComplexStrip(self.grid, tuple(e / 2 for e in self.eps), self.imag_counts)

    def real_slice(self, values: np.ndarray, lead: int = 0) -> np.ndarray:
        """Restrição a y = 0 de um array (*lead, *shape, ...)"""
        index = (slice(None),) * (lead + self.m) + self.real_index
        return values[index]

    def as_dict(self) -> Dict:
        return {"grid": self.grid.as_dict(), "eps": list(self.eps), "imag_counts": list(self.imag_counts)}


@dataclass
class StripForm:
    """1-forma complexificada Σ η̂_k dz^k nos pontos da faixa"""

    strip: ComplexStrip
    components: np.ndarray  # (m, *strip.shape, n, n)

    @property
    def n(self) -> int:
        return self.components.shape[-1]

    def real_slice(self) -> OneFormField:
        return OneFormField(self.strip.grid, self.strip.real_slice(self.components, lead=1))

    def _slices_first(self) -> np.ndarray:
        """(*imag, m, *grid, n, n): cada corte imaginário como grade real"""
        m = self.strip.m
        order = tuple(range(1 + m, 1 + 2 * m)) + (0,) + tuple(range(1, 1 + m)) + (-2, -1)
        order = tuple(a % self.components.ndim for a in order)
        return np.transpose(self.components, order)

    def flat_residuals(self) -> Tuple[float, float]:
        """(‖∂_z η̂‖ antissimetrizado, ‖η̂∧η̂‖) em todos os cortes imaginários"""
        sliced = self._slices_first()
        steps = self.strip.grid.steps
        return closed_residual(sliced, steps), wedge_residual(sliced, steps)

    def cauchy_riemann_residual(self, accuracy: int = None) -> float:
        """max ‖∂̄ η̂_k‖ sobre os eixos complexos"""
        return cauchy_riemann_residual(self.components, self.strip, lead=1, accuracy=accuracy)


def _stencil_order(size: int, wanted: int) -> int:
    """Maior ordem par ≤ wanted suportada por `size` amostras"""
    top = size - 1 if (size - 1) % 2 == 0 else size - 2
    return max(2, min(wanted, top))


def _d_bar(values: np.ndarray, strip: ComplexStrip, lead: int, j: int, orders: Tuple[int, int]) -> np.ndarray:
    d_x = derivative(values, strip.grid.steps[j], axis=lead + j, accuracy=orders[0])
    d_y = derivative(values, strip.imag_steps[j], axis=lead + strip.m + j, accuracy=orders[1])
    return 0.5 * (d_x + 1j * d_y)


def cauchy_riemann_residual(values: np.ndarray, strip: ComplexStrip, lead: int = 0, accuracy: int = None) -> float:
    """
    max ‖(∂_x + i∂_y)/2‖ por coordenada complexa

    Args:
        values: Array (*lead, *strip.shape, ...)
        strip: Faixa
        lead: Número de eixos antes dos eixos da faixa
        accuracy: Ordem das diferenças (padrão STRIP_CONFIG)
    """
    accuracy = STRIP_CONFIG["derivative_accuracy"] if accuracy is None else accuracy
    return max(max_abs(_d_bar(values, strip, lead, j, (accuracy, accuracy))) for j in range(strip.m))


def cauchy_riemann_estimate(
    values: np.ndarray, strip: ComplexStrip, lead: int = 0, accuracy: int = None
) -> Tuple[float, float]:
    """
    (resíduo, truncamento) de ∂̄ com duas ordens de diferenças

    O resíduo usa a ordem accuracy + 2 (ou a maior que o eixo comporta); o
    truncamento é a maior diferença pontual para a estimativa de ordem 2 abaixo.
    """
    accuracy = STRIP_CONFIG["derivative_accuracy"] if accuracy is None else accuracy
    residual, truncation = 0.0, 0.0
    for j in range(strip.m):
        fine = (
            _stencil_order(strip.grid.shape[j], accuracy + 2),
            _stencil_order(strip.imag_counts[j], accuracy + 2),
        )
        coarse = tuple(max(2, order - 2) for order in fine)
        high = _d_bar(values, strip, lead, j, fine)
        residual = max(residual, max_abs(high))
        truncation = max(truncation, max_abs(_d_bar(values, strip, lead, j, coarse) - high))
    return residual, truncation


def check_holomorphic(values: np.ndarray, strip: ComplexStrip, lead: int = 0, tolerance: float = None) -> Tuple[float, float]:
    """
    Verifica ∂̄ = 0 na faixa com limiar tolerância + erro de truncamento estimado

    Returns:
        (resíduo, limiar)

    Raises:
        IntegrabilityError: resíduo acima do limiar
    """
    tolerance = TOLERANCES["cr"] if tolerance is None else tolerance
    residual, truncation = cauchy_riemann_estimate(values, strip, lead)
    limit = tolerance + STRIP_CONFIG["cr_truncation_factor"] * truncation
    logger.debug("resíduo de Cauchy-Riemann %.3e (truncamento %.3e)", residual, truncation)
    if residual > limit:
        raise IntegrabilityError(ERROR_MESSAGES["NOT_HOLOMORPHIC"].format(residual=residual, threshold=limit), residual)
    return residual, limit


def _boundary(lo: float, hi: float, eps: float, samples: int) -> np.ndarray:
    """Contorno do retângulo [lo, hi] × [−ε, ε] percorrido no sentido anti-horário"""
    quarter = max(samples // 4, 8)
    bottom = np.linspace(lo, hi, quarter, endpoint=False) - 1j * eps
    right = hi + 1j * np.linspace(-eps, eps, quarter, endpoint=False)
    top = np.linspace(hi, lo, quarter, endpoint=False) + 1j * eps
    left = lo + 1j * np.linspace(eps, -eps, quarter, endpoint=False)
    return np.concatenate([bottom, right, top, left])


def winding_number(values: np.ndarray) -> int:
    """Número de voltas de uma curva fechada amostrada em torno de 0"""
    return int(_windings(np.asarray(values)[None, :])[0])


def _windings(values: np.ndarray) -> np.ndarray:
    """Voltas de cada linha de (curvas, amostras)"""
    closed = np.concatenate([values, values[:, :1]], axis=1)
    phase = np.unwrap(np.angle(closed), axis=1)
    return np.round((phase[:, -1] - phase[:, 0]) / (2 * np.pi)).astype(int)


def _slice_values(strip: ComplexStrip, others: Sequence[int]) -> np.ndarray:
    """Combinações das outras coordenadas: pontos da grade × offsets imaginários da faixa"""
    choices = [(strip.grid.axes[l][:, None] + 1j * strip.imag_axes[l][None, :]).ravel() for l in others]
    if not choices:
        return np.zeros((1, 0), dtype=complex)
    return np.stack([g.ravel() for g in np.meshgrid(*choices, indexing="ij")], axis=-1)


def check_strip_singularities(closed: ClosedFormConnection, strip: ComplexStrip):
    """
    Procura zeros dos denominadores dentro da faixa (princípio do argumento) e
    valores não finitos nos pontos da faixa

    Cada eixo é percorrido no contorno do seu retângulo com as outras
    coordenadas em todos os pontos da faixa, de modo que polos que dependem
    de várias coordenadas também são encontrados.

    Raises:
        StripSingularityError
    """
    samples = STRIP_CONFIG["winding_samples"]
    batch = STRIP_CONFIG["winding_batch"]
    grid = strip.grid
    error = StripSingularityError(ERROR_MESSAGES["STRIP_SINGULARITY"].format(eps=strip.eps), eps=strip.eps)

    for denominator in closed.denominators():
        for j in range(strip.m):
            path = _boundary(*grid.ranges[j], strip.eps[j], samples)
            others = [l for l in range(strip.m) if l != j]
            combos = _slice_values(strip, others)
            for start in range(0, len(combos), batch):
                chunk = combos[start : start + batch]
                points = np.empty((len(chunk), path.size, strip.m), dtype=complex)
                points[..., j] = path[None, :]
                for position, l in enumerate(others):
                    points[..., l] = chunk[:, position, None]
                with np.errstate(all="ignore"):
                    values = np.asarray(denominator(points), dtype=complex)
                if not np.all(np.isfinite(values)) or np.min(np.abs(values)) == 0:
                    raise error
                windings = _windings(values)
                if np.any(windings != 0):
                    logger.debug("zero de denominador no eixo %d (fatia %s)", j, chunk[np.argmax(windings != 0)])
                    raise error

    with np.errstate(all="ignore"):
        coefficients = closed.coefficients(strip.points)
    if any(not np.all(np.isfinite(values)) for values in coefficients.values()):
        raise error


def fit_strip(closed: ClosedFormConnection, strip: ComplexStrip, max_halvings: int = None) -> ComplexStrip:
    """
    Reduz ε pela metade até a faixa ficar livre de singularidades

    Returns:
        Faixa aceita (possivelmente mais estreita)
    """
    max_halvings = STRIP_CONFIG["max_halvings"] if max_halvings is None else max_halvings
    tried = []
    for halvings in range(max_halvings + 1):
        try:
            check_strip_singularities(closed, strip)
        except StripSingularityError:
            tried.append(strip.eps)
            strip = strip.halved()
            continue
        if halvings:
            logger.warning(WARNING_MESSAGES["STRIP_HALVED"].format(eps=strip.eps, halvings=halvings))
        return strip
    raise StripSingularityError(ERROR_MESSAGES["STRIP_SINGULARITY"].format(eps=tried[-1]), eps=tried[-1])


def complexify_connection(closed: ClosedFormConnection, strip: ComplexStrip) -> Dict[int, np.ndarray]:
    """Coeficientes de cada grau avaliados nas coordenadas complexas da faixa"""
    check_strip_singularities(closed, strip)
    return closed.coefficients(strip.points)


def complexify_eta(closed: ClosedFormConnection, strip: ComplexStrip, degree: int = 1) -> StripForm:
    """
    Continuação analítica de η (expressões fechadas) para a faixa

    Args:
        closed: Expressões de η
        strip: Faixa
        degree: Grau em λ tomado como η

    Returns:
        StripForm com η̂_k em cada ponto; no corte real coincide com η
    """
    coefficients = complexify_connection(closed, strip)
    if degree not in coefficients:
        raise InputError(f"Expressões sem coeficiente de grau {degree}")
    return StripForm(strip, coefficients[degree])


def closed_form_of(connection) -> ClosedFormConnection:
    """Expressões fechadas de uma conexão (InputError se for só amostrada)"""
    if isinstance(connection, ClosedFormConnection):
        return connection
    if isinstance(connection, ConnectionFamily) and connection.closed_form is not None:
        return connection.closed_form
    raise InputError("A extensão holomorfa requer expressões fechadas da conexão")


def extend_frame_holo(
    connection: Union[ClosedFormConnection, ConnectionFamily],
    strip: ComplexStrip,
    lams: Sequence[complex],
    signature: Optional[SignatureForm] = None,
    imag_order: Sequence[int] = None,
    check: bool = True,
    cr_tolerance: float = None,
) -> FrameFamily:
    """
    Extensão holomorfa do referencial para a faixa

    Integra primeiro no corte real e depois ao longo de cada direção
    imaginária, com ∂F/∂y_j = F·(i A_j(z)).

    Args:
        connection: Conexão com expressões fechadas (qualquer ordem em λ)
        strip: Faixa (use fit_strip antes para escolher ε)
        lams: Amostras de λ
        signature: J para projeção no grupo
        imag_order: Ordem dos eixos imaginários
        check: Verifica singularidades, integrabilidade e Cauchy-Riemann
        cr_tolerance: Parcela fixa do limiar de Cauchy-Riemann (somada ao truncamento estimado)

    Returns:
        FrameFamily com domínio `strip`
    """
    closed = closed_form_of(connection)
    m = strip.m
    imag_order = tuple(range(m)) if imag_order is None else tuple(imag_order)
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    if check:
        check_strip_singularities(closed, strip)

    grid = strip.grid
    real = integrate_family(ConnectionFamily.from_closed_form(closed, grid), lams, check=check, signature=signature)
    projector = group_projector(signature) if signature is not None else None

    # frames: (S, *grid, *imag processados), um eixo imaginário por vez
    frames = real.frames
    done = []
    for j in imag_order:
        lead_shape = frames.shape[1:-2]
        lines = frames.reshape(lams.size, -1, *frames.shape[-2:])
        base_points = grid.points.reshape(*grid.shape, *([1] * len(done)), m)
        imag_part = np.zeros((*lead_shape, m))
        for position, axis in enumerate(done):
            shape = [1] * len(lead_shape)
            shape[m + position] = strip.imag_counts[axis]
            imag_part[..., axis] = strip.imag_axes[axis].reshape(shape)
        anchors = (base_points + 1j * imag_part).reshape(-1, m)

        def node_values(nodes, anchors=anchors, j=j):
            points = np.broadcast_to(anchors[:, None, None, :], (anchors.shape[0], *nodes.shape, m)).copy()
            points[..., j] += 1j * nodes[None]
            return 1j * closed.evaluate_many(points, lams)[:, j]

        marched = march_lines(lines, strip.imag_axes[j], strip.imag_base[j], node_values, projector)
        frames = marched.reshape(lams.size, *lead_shape, strip.imag_counts[j], *frames.shape[-2:])
        done.append(j)

    # reordena os eixos imaginários para a ordem natural
    permutation = list(range(1 + m)) + [1 + m + done.index(j) for j in range(m)] + [1 + 2 * m, 2 + 2 * m]
    frames = np.transpose(frames, permutation)

    family = FrameFamily(strip, lams, frames, normalized=True, connection=real.connection)
    if check:
        check_holomorphic(frames, strip, lead=1, tolerance=cr_tolerance)
    return family


def restrict_to_real(family: FrameFamily) -> FrameFamily:
    """Restrição de uma família na faixa ao corte real y = 0"""
    strip = family.domain
    frames = strip.real_slice(family.frames, lead=1)
    return FrameFamily(strip.grid, family.lams, frames, family.normalized, family.connection)
