"""
Formas de assinatura, involuções de laços e resíduos de pertinência
"""
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from utils.constants import ERROR_MESSAGES, INVOLUTION_KINDS
from utils.exceptions import DimensionError, InputError
from utils.helpers import max_abs

from .laurent_loop import LaurentLoop


@dataclass(frozen=True)
class SignatureForm:
    """Forma diagonal com entradas ±1 (J, Ĵ, P, Q)"""

    diag: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.diag)
        if not values or any(v not in (1, -1) for v in values):
            raise InputError(f"Forma de assinatura inválida: {self.diag}")
        object.__setattr__(self, "diag", values)

    @classmethod
    def identity(cls, n: int) -> "SignatureForm":
        return cls((1,) * n)

    @classmethod
    def from_blocks(cls, *blocks: Tuple[int, int]) -> "SignatureForm":
        """Monta a partir de pares (sinal, tamanho)"""
        values = []
        for sign, size in blocks:
            values.extend([sign] * size)
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.diag, dtype=float)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.vector)

    def inner(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Produto ⟨x, y⟩_J bilinear ao longo do último eixo"""
        return np.sum(x * self.vector * y, axis=-1)

    def __mul__(self, other: "SignatureForm") -> "SignatureForm":
        if other.n != self.n:
            raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=self.n, got=other.n))
        return SignatureForm(tuple(a * b for a, b in zip(self.diag, other.diag)))


def default_P(m: int, k: int) -> SignatureForm:
    """P = diag(I_m, −I_{k+1}) (σ⁰ = Ad_P)"""
    return SignatureForm.from_blocks((1, m), (-1, k + 1))


def default_Q(m: int, k: int) -> SignatureForm:
    """Q = diag(I_{m+1}, −I_k) (μ⁰ = Ad_Q)"""
    return SignatureForm.from_blocks((1, m + 1), (-1, k))


def hyperbolic_J(m: int, k: int) -> SignatureForm:
    """J = diag(I_m, −1, I_k) do caso hiperbólico"""
    return SignatureForm.from_blocks((1, m), (-1, 1), (1, k))


# (conjuga, inverte λ, troca sinal de λ, matrizes de Ad)
_KIND_TABLE = {
    "sigma": (False, False, True, ("P",)),
    "mu": (False, True, False, ("Q",)),
    "rho1": (True, False, True, ()),
    "rho2": (True, False, False, ()),
    "rho3": (True, True, False, ()),
    "rho_hat3": (True, False, False, ("Q",)),
    "tau1": (True, True, False, ("P", "Q")),
    "tau2": (True, True, False, ("Q",)),
    "tau3": (True, True, False, ()),
}


@dataclass(frozen=True)
class InvolutionSpec:
    """
    Involução de laços (φX)(λ) = φ⁰(X(s(λ)))

    σ: P X(−λ) P; μ: Q X(1/λ) Q; ρ₁: conj X(−λ̄); ρ₂: conj X(λ̄);
    ρ₃ = τ₃: conj X(1/λ̄); ρ̂₃: Q conj X(λ̄) Q; τ₁: QP conj X(1/λ̄) PQ;
    τ₂: Q conj X(1/λ̄) Q.
    """

    kind: str
    P: Optional[SignatureForm] = None
    Q: Optional[SignatureForm] = None

    def __post_init__(self):
        if self.kind not in _KIND_TABLE:
            raise InputError(ERROR_MESSAGES["UNKNOWN_INVOLUTION"].format(kind=self.kind))
        for name in _KIND_TABLE[self.kind][3]:
            if getattr(self, name) is None:
                raise InputError(ERROR_MESSAGES["MISSING_MATRIX"].format(kind=self.kind, name=name))

    @property
    def conjugates(self) -> bool:
        return _KIND_TABLE[self.kind][0]

    @property
    def inverts(self) -> bool:
        """Troca Λ⁺ e Λ⁻ (involução negativa)"""
        return _KIND_TABLE[self.kind][1]

    @property
    def negates(self) -> bool:
        return _KIND_TABLE[self.kind][2]

    @property
    def ad_diagonal(self) -> Optional[np.ndarray]:
        """Diagonal S com φ⁰(X) = S·(X ou X̄)·S, ou None"""
        names = _KIND_TABLE[self.kind][3]
        if not names:
            return None
        diagonal = np.ones(getattr(self, names[0]).n)
        for name in names:
            diagonal = diagonal * getattr(self, name).vector
        return diagonal

    @property
    def dimension(self) -> Optional[int]:
        diagonal = self.ad_diagonal
        return None if diagonal is None else diagonal.size

    def source_lambda(self, lam: complex) -> complex:
        """s(λ) na fórmula pontual"""
        lam = complex(lam)
        if self.negates:
            lam = -lam
        if self.inverts:
            lam = 1.0 / lam
        if self.conjugates:
            lam = lam.conjugate()
        return lam

    def act(self, matrices: np.ndarray) -> np.ndarray:
        """φ⁰ aplicada às matrizes (últimos dois eixos)"""
        result = np.conj(matrices) if self.conjugates else np.array(matrices, dtype=complex)
        diagonal = self.ad_diagonal
        if diagonal is not None:
            if result.shape[-1] != diagonal.size:
                raise DimensionError(
                    ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=diagonal.size, got=result.shape[-1])
                )
            result = diagonal[:, None] * result * diagonal[None, :]
        return result


def sigma(P: SignatureForm) -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["SIGMA"], P=P)


def mu(Q: SignatureForm) -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["MU"], Q=Q)


def rho1() -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["RHO1"])


def rho2() -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["RHO2"])


def rho3() -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["RHO3"])


def rho_hat3(Q: SignatureForm) -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["RHO_HAT3"], Q=Q)


def tau1(P: SignatureForm, Q: SignatureForm) -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["TAU1"], P=P, Q=Q)


def tau2(Q: SignatureForm) -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["TAU2"], Q=Q)


def tau3() -> InvolutionSpec:
    return InvolutionSpec(INVOLUTION_KINDS["TAU3"])


def apply_involution(spec: InvolutionSpec, loop: LaurentLoop) -> LaurentLoop:
    """
    Ação exata nos coeficientes

    A_d vai para φ⁰(A_d)·(−1)^d (se s troca o sinal) no grau −d (se s inverte)
    ou d; φ⁰ conjuga quando a involução é antilinear.
    """
    if spec.dimension is not None and spec.dimension != loop.n:
        raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=loop.n, got=spec.dimension))

    def transform(degree, matrix):
        new_matrix = spec.act(matrix)
        if spec.negates and degree % 2:
            new_matrix = -new_matrix
        return (-degree if spec.inverts else degree), new_matrix

    return loop.map_coefficients(transform)


def apply_pointwise(spec: InvolutionSpec, loop: LaurentLoop, lam: complex) -> np.ndarray:
    """Fórmula pontual φ⁰(X(s(λ))) (usada para conferir a ação nos coeficientes)"""
    return spec.act(loop.evaluate(spec.source_lambda(lam)))


def fixed_residual(spec: InvolutionSpec, loop: LaurentLoop, lambda_samples: Iterable[complex]) -> float:
    """max_λ ‖φ(L)(λ) − L(λ)‖_∞ sobre as amostras"""
    lams = list(lambda_samples)
    if not lams:
        return 0.0
    image = apply_involution(spec, loop)
    return max_abs(image.evaluate_many(lams) - loop.evaluate_many(lams))


def conjugate_by(T, loop: LaurentLoop) -> LaurentLoop:
    """
    Ad_T em cada coeficiente: A -> T A T⁻¹

    Args:
        T: Matriz diagonal invertível (ou vetor de sua diagonal)
        loop: Laço
    """
    diagonal = np.asarray(T, dtype=complex)
    if diagonal.ndim == 2:
        if max_abs(diagonal - np.diag(np.diag(diagonal))) > 0:
            raise InputError("T deve ser diagonal")
        diagonal = np.diag(diagonal)
    if diagonal.size != loop.n:
        raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=loop.n, got=diagonal.size))
    if np.any(diagonal == 0):
        raise InputError(ERROR_MESSAGES["SINGULAR_T"])

    scaling = diagonal[:, None] / diagonal[None, :]
    return loop.map_coefficients(lambda degree, matrix: (degree, scaling * matrix))


def group_residual(loop: LaurentLoop, J: SignatureForm, lambda_samples: Sequence[complex]) -> float:
    """max_λ ‖Fᵗ J F − J‖_∞ com F = L(λ)"""
    if J.n != loop.n:
        raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=loop.n, got=J.n))
    values = loop.evaluate_many(lambda_samples)
    return matrix_group_residual(values, J)


def matrix_group_residual(values: np.ndarray, J: SignatureForm) -> float:
    """‖Fᵗ J F − J‖_∞ para um array (..., n, n) de matrizes"""
    gram = np.swapaxes(values, -1, -2) @ (J.vector[:, None] * values)
    return max_abs(gram - J.matrix)


def lie_algebra_residual(values: np.ndarray, J: SignatureForm) -> float:
    """‖Xᵗ J + J X‖_∞ (pertinência a 𝔰𝔬(J))"""
    jx = J.vector[:, None] * values
    return max_abs(np.swapaxes(jx, -1, -2) + jx)
