"""
Campos de 1-formas matriciais, famílias de conexões e famílias de referenciais
"""
from abc import ABC, abstractmethod
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import LOOP_CONFIG
from modules.loopalg import InvolutionSpec, LaurentLoop, SignatureForm, matrix_group_residual
from utils.constants import ERROR_MESSAGES
from utils.exceptions import DimensionError, DomainError, InputError
from utils.helpers import lambda_key, max_abs

from .grid import Grid


class OneFormField:
    """1-forma matricial Σ_j A_j dx^j amostrada numa grade"""

    def __init__(self, grid: Grid, components: np.ndarray):
        """
        Args:
            grid: Grade do domínio
            components: Array (m, *grid.shape, r, c); índice 0 é o eixo j de dx^j
                (blocos retangulares permitidos, ex. θ com c = 1)
        """
        components = np.asarray(components, dtype=complex)
        expected = (grid.m, *grid.shape)
        if components.ndim != grid.m + 3 or components.shape[:-2] != expected:
            raise DimensionError(
                ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=f"{expected} + (n, n)", got=components.shape)
            )
        self.grid = grid
        self.components = components

    @classmethod
    def zeros(cls, grid: Grid, n: int) -> "OneFormField":
        return cls(grid, np.zeros((grid.m, *grid.shape, n, n), dtype=complex))

    @classmethod
    def constant(cls, grid: Grid, matrices: Sequence[np.ndarray]) -> "OneFormField":
        """Campo com componente constante por eixo"""
        matrices = np.asarray(matrices, dtype=complex)
        shape = (grid.m, *grid.shape, *matrices.shape[-2:])
        expanded = matrices.reshape(grid.m, *([1] * grid.m), *matrices.shape[-2:])
        return cls(grid, np.broadcast_to(expanded, shape).copy())

    @property
    def n(self) -> int:
        return self.components.shape[-1]

    @property
    def m(self) -> int:
        return self.grid.m

    def component(self, axis: int) -> np.ndarray:
        return self.components[axis]

    def block(self, rows: slice, cols: slice) -> "OneFormField":
        """Sub-bloco de cada componente"""
        return OneFormField(self.grid, self.components[..., rows, cols])

    def __add__(self, other: "OneFormField") -> "OneFormField":
        return OneFormField(self.grid, self.components + other.components)

    def __sub__(self, other: "OneFormField") -> "OneFormField":
        return OneFormField(self.grid, self.components - other.components)

    def scale(self, factor: complex) -> "OneFormField":
        return OneFormField(self.grid, factor * self.components)

    def conjugated(self, K: np.ndarray) -> "OneFormField":
        """K A K⁻¹ ponto a ponto; K tem shape (*grid.shape, n, n) ou (n, n)"""
        K = np.asarray(K, dtype=complex)
        return OneFormField(self.grid, K @ self.components @ np.linalg.inv(K))

    def max_abs(self) -> float:
        return max_abs(self.components)


class ClosedFormConnection(ABC):
    """
    Conexão A(λ) = Σ_d A_d λ^d com coeficientes avaliáveis em qualquer ponto
    (inclusive coordenadas complexas)
    """

    def __init__(self, n: int, m: int, degrees: Sequence[int]):
        self.n = int(n)
        self.m = int(m)
        self.degrees = tuple(sorted(int(d) for d in degrees))

    @abstractmethod
    def coefficients(self, points: np.ndarray) -> Dict[int, np.ndarray]:
        """
        Coeficientes nos pontos

        Args:
            points: Array (..., m) de coordenadas reais ou complexas

        Returns:
            Mapa grau -> array (m, ..., n, n)
        """

    def denominators(self) -> List[Callable[[np.ndarray], np.ndarray]]:
        """Funções cujos zeros são singularidades dos coeficientes"""
        return []

    def evaluate_many(self, points: np.ndarray, lams: Sequence[complex]) -> np.ndarray:
        """Componentes em cada λ: array (S, m, ..., n, n)"""
        lams = np.atleast_1d(np.asarray(lams, dtype=complex))
        if np.any(lams == 0) and any(d < 0 for d in self.degrees):
            raise DomainError(ERROR_MESSAGES["ZERO_LAMBDA"])
        coeffs = self.coefficients(np.asarray(points))
        shape = next(iter(coeffs.values())).shape if coeffs else (self.m, *np.shape(points)[:-1], self.n, self.n)
        result = np.zeros((lams.size, *shape), dtype=complex)
        extra = (None,) * len(shape)
        for degree, values in coeffs.items():
            result += np.power(lams, degree)[(slice(None), *extra)] * values
        return result

    def evaluate(self, points: np.ndarray, lam: complex) -> np.ndarray:
        return self.evaluate_many(points, [lam])[0]


class ConnectionFamily:
    """Família em λ de 1-formas A(λ) = Σ_d A_d λ^d sobre uma grade"""

    def __init__(
        self,
        coeffs: Dict[int, OneFormField],
        closed_form: Optional[ClosedFormConnection] = None,
    ):
        """
        Args:
            coeffs: Mapa grau -> OneFormField (mesma grade)
            closed_form: Expressões fechadas de onde os coeficientes foram amostrados
        """
        if not coeffs:
            raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected="coeficientes", got="nenhum"))
        fields = list(coeffs.values())
        grid, n = fields[0].grid, fields[0].n
        lo, hi = LOOP_CONFIG["min_degree"], LOOP_CONFIG["max_degree"]
        for degree, field in coeffs.items():
            if field.grid != grid or field.n != n:
                raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=(grid.shape, n), got=(field.grid.shape, field.n)))
            if not lo <= degree <= hi:
                raise DimensionError(ERROR_MESSAGES["DEGREE_CAP"].format(degree=degree, lo=lo, hi=hi))
        self.coeffs = dict(sorted((int(d), f) for d, f in coeffs.items()))
        self.grid = grid
        self.closed_form = closed_form

    @classmethod
    def from_closed_form(cls, closed_form: ClosedFormConnection, grid: Grid) -> "ConnectionFamily":
        """Amostra as expressões fechadas na grade"""
        values = closed_form.coefficients(grid.points)
        coeffs = {d: OneFormField(grid, values[d]) for d in closed_form.degrees}
        return cls(coeffs, closed_form=closed_form)

    @classmethod
    def zero(cls, grid: Grid, n: int) -> "ConnectionFamily":
        return cls({0: OneFormField.zeros(grid, n)})

    @property
    def n(self) -> int:
        return next(iter(self.coeffs.values())).n

    @property
    def m(self) -> int:
        return self.grid.m

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(self.coeffs)

    def coefficient(self, degree: int) -> OneFormField:
        if degree in self.coeffs:
            return self.coeffs[degree]
        return OneFormField.zeros(self.grid, self.n)

    def components(self, lams: Sequence[complex]) -> np.ndarray:
        """Componentes de A(λ) para cada λ: (S, m, *shape, n, n)"""
        lams = np.atleast_1d(np.asarray(lams, dtype=complex))
        if np.any(lams == 0) and any(d < 0 for d in self.coeffs):
            raise DomainError(ERROR_MESSAGES["ZERO_LAMBDA"])
        first = next(iter(self.coeffs.values())).components
        result = np.zeros((lams.size, *first.shape), dtype=complex)
        extra = (None,) * first.ndim
        for degree, field in self.coeffs.items():
            result += np.power(lams, degree)[(slice(None), *extra)] * field.components
        return result

    def evaluate(self, lam: complex) -> OneFormField:
        return OneFormField(self.grid, self.components([lam])[0])

    def connection_order(self, tol: float = None) -> Tuple[int, int]:
        """Menor e maior grau com coeficiente não desprezível"""
        tol = LOOP_CONFIG["zero_tolerance"] if tol is None else tol
        active = [d for d, f in self.coeffs.items() if f.max_abs() > tol]
        return (min(active), max(active)) if active else (0, 0)

    def loop_at(self, axis: int, index: Sequence[int]) -> LaurentLoop:
        """Componente dx^axis no ponto `index` como laço de Laurent"""
        index = tuple(index)
        return LaurentLoop({d: f.components[(axis, *index)] for d, f in self.coeffs.items()}, n=self.n)

    def fixed_residual(self, spec: InvolutionSpec) -> float:
        """max ‖φ(A)_d − A_d‖ sobre graus e pontos, com a ação exata nos coeficientes"""
        worst = 0.0
        for degree, field in self.coeffs.items():
            image = spec.act(field.components)
            if spec.negates and degree % 2:
                image = -image
            target = self.coeffs.get(-degree if spec.inverts else degree)
            current = target.components if target is not None else 0.0
            worst = max(worst, max_abs(image - current))
        return worst

    def on_grid(self, grid: Grid) -> "ConnectionFamily":
        """Reamostra as expressões fechadas em outra grade"""
        if self.closed_form is None:
            raise InputError("Conexão amostrada não pode ser reamostrada sem expressões fechadas")
        return ConnectionFamily.from_closed_form(self.closed_form, grid)

    def conjugated(self, T) -> "ConnectionFamily":
        """Ad_T de cada coeficiente (T diagonal constante, dado pelo vetor da diagonal)"""
        diagonal = np.asarray(T, dtype=complex)
        scaling = diagonal[:, None] / diagonal[None, :]
        return ConnectionFamily({d: OneFormField(f.grid, scaling * f.components) for d, f in self.coeffs.items()})


class FrameFamily:
    """
    Referenciais F_λ(x) para cada amostra de λ

    O domínio é uma Grid ou uma ComplexStrip (qualquer objeto com `shape` e
    `base_index`).
    """

    def __init__(
        self,
        domain,
        lams: Sequence[complex],
        frames: np.ndarray,
        normalized: bool = True,
        connection: Optional[ConnectionFamily] = None,
    ):
        lams = np.atleast_1d(np.asarray(lams, dtype=complex))
        frames = np.asarray(frames, dtype=complex)
        expected = (lams.size, *domain.shape)
        if frames.shape[:-2] != expected:
            raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=expected, got=frames.shape[:-2]))
        self.domain = domain
        self.lams = lams
        self.frames = frames
        self.normalized = normalized
        self.connection = connection

    @property
    def n(self) -> int:
        return self.frames.shape[-1]

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.domain.shape)

    def index_of(self, lam: complex) -> int:
        """Índice da amostra λ (KeyError se ausente)"""
        keys = [lambda_key(value) for value in self.lams]
        key = lambda_key(lam)
        if key not in keys:
            raise KeyError(lam)
        return keys.index(key)

    def frame_at(self, lam: complex) -> np.ndarray:
        return self.frames[self.index_of(lam)]

    def base_residual(self) -> float:
        """max ‖F(p) − I‖ sobre as amostras"""
        base = self.frames[(slice(None), *self.domain.base_index)]
        return max_abs(base - np.eye(self.n))

    def group_residual(self, J: SignatureForm) -> float:
        return matrix_group_residual(self.frames, J)

    def fixed_residual(self, spec: InvolutionSpec) -> float:
        """
        max ‖φ⁰(F(s(λ))) − F(λ)‖ sobre a grade

        As amostras de λ devem ser fechadas sob s; caso contrário InputError.
        """
        worst = 0.0
        for index, lam in enumerate(self.lams):
            partner = spec.source_lambda(lam)
            try:
                source = self.index_of(partner)
            except KeyError as exc:
                raise InputError(ERROR_MESSAGES["NOT_CLOSED"].format(kind=spec.kind, lam=partner)) from exc
            worst = max(worst, max_abs(spec.act(self.frames[source]) - self.frames[index]))
        return worst

    def renormalized(self, index: Sequence[int]) -> "FrameFamily":
        """F(q)⁻¹ F(x) para q = index"""
        index = tuple(index)
        inverse = np.linalg.inv(self.frames[(slice(None), *index)])
        extra = (None,) * len(self.shape)
        frames = inverse[(slice(None), *extra)] @ self.frames
        domain = self.domain.with_base(index)
        return FrameFamily(domain, self.lams, frames, normalized=True, connection=self.connection)

    def select(self, lams: Sequence[complex]) -> "FrameFamily":
        indices = [self.index_of(lam) for lam in lams]
        return FrameFamily(self.domain, self.lams[indices], self.frames[indices], self.normalized, self.connection)
