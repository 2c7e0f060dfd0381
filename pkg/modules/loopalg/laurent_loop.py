"""
Módulo de laços de Laurent finitos com coeficientes matriciais
"""
from typing import Dict, Iterable, Mapping, Optional, Tuple

import numpy as np

from config.settings import LOOP_CONFIG
from utils.constants import ERROR_MESSAGES
from utils.exceptions import DimensionError, DomainError, InputError
from utils.helpers import max_abs


def as_cmatrix(values, n: Optional[int] = None) -> np.ndarray:
    """
    Converte para matriz complexa quadrada finita

    Args:
        values: Dados da matriz
        n: Dimensão esperada (opcional)

    Returns:
        Array complexo (n, n) somente leitura
    """
    matrix = np.array(values, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(
            ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected="matriz quadrada", got=matrix.shape)
        )
    if n is not None and matrix.shape[0] != n:
        raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=n, got=matrix.shape[0]))
    if matrix.shape[0] > LOOP_CONFIG["max_dimension"]:
        raise DimensionError(
            ERROR_MESSAGES["DIMENSION_CAP"].format(n=matrix.shape[0], cap=LOOP_CONFIG["max_dimension"])
        )
    if not np.all(np.isfinite(matrix)):
        raise InputError(ERROR_MESSAGES["NON_FINITE"])
    matrix.setflags(write=False)
    return matrix


class LaurentLoop:
    """Polinômio de Laurent em λ com coeficientes matriciais n×n (imutável)"""

    def __init__(self, coeffs: Mapping[int, object], n: Optional[int] = None):
        """
        Inicializa o laço

        Args:
            coeffs: Mapa grau -> matriz n×n
            n: Dimensão (obrigatória quando coeffs está vazio)
        """
        if not coeffs and n is None:
            raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected="n", got="nenhum coeficiente"))

        lo, hi = LOOP_CONFIG["min_degree"], LOOP_CONFIG["max_degree"]
        stored: Dict[int, np.ndarray] = {}
        for degree, value in coeffs.items():
            degree = int(degree)
            if degree < lo or degree > hi:
                raise DimensionError(ERROR_MESSAGES["DEGREE_CAP"].format(degree=degree, lo=lo, hi=hi))
            matrix = as_cmatrix(value, n)
            n = matrix.shape[0]
            stored[degree] = matrix

        if n > LOOP_CONFIG["max_dimension"]:
            raise DimensionError(ERROR_MESSAGES["DIMENSION_CAP"].format(n=n, cap=LOOP_CONFIG["max_dimension"]))

        self._n = int(n)
        self._coeffs = dict(sorted(stored.items()))

    # Construtores

    @classmethod
    def constant(cls, matrix) -> "LaurentLoop":
        """Laço constante"""
        return cls({0: matrix})

    @classmethod
    def identity(cls, n: int) -> "LaurentLoop":
        """Laço identidade"""
        return cls({0: np.eye(n)})

    @classmethod
    def monomial(cls, matrix, degree: int) -> "LaurentLoop":
        """Laço A·λ^d"""
        return cls({degree: matrix})

    # Acesso

    @property
    def n(self) -> int:
        return self._n

    @property
    def coeffs(self) -> Dict[int, np.ndarray]:
        return dict(self._coeffs)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(self._coeffs)

    def coeff(self, degree: int) -> np.ndarray:
        """Coeficiente de grau d (zero se ausente)"""
        if degree in self._coeffs:
            return self._coeffs[degree]
        return np.zeros((self._n, self._n), dtype=complex)

    def has_negative_degrees(self) -> bool:
        return any(d < 0 for d in self._coeffs)

    def connection_order(self, tol: float = None) -> Tuple[int, int]:
        """
        Ordem (a, b): menor e maior grau com coeficiente não desprezível

        Returns:
            Tupla (a, b); (0, 0) para o laço nulo
        """
        tol = LOOP_CONFIG["zero_tolerance"] if tol is None else tol
        active = [d for d, c in self._coeffs.items() if max_abs(c) > tol]
        if not active:
            return (0, 0)
        return (min(active), max(active))

    # Avaliação

    def evaluate(self, lam: complex) -> np.ndarray:
        """
        Avalia Σ_d A_d λ^d

        Args:
            lam: Valor de λ (não nulo se houver graus negativos)

        Returns:
            Matriz complexa n×n
        """
        lam = complex(lam)
        if lam == 0:
            if self.has_negative_degrees():
                raise DomainError(ERROR_MESSAGES["ZERO_LAMBDA"])
            return np.array(self.coeff(0))

        result = np.zeros((self._n, self._n), dtype=complex)
        for degree, matrix in self._coeffs.items():
            result += matrix * lam ** degree
        return result

    def evaluate_many(self, lams: Iterable[complex]) -> np.ndarray:
        """Avalia em várias amostras de λ, retornando (S, n, n)"""
        lams = np.asarray(list(lams), dtype=complex)
        if np.any(lams == 0) and self.has_negative_degrees():
            raise DomainError(ERROR_MESSAGES["ZERO_LAMBDA"])

        result = np.zeros((lams.size, self._n, self._n), dtype=complex)
        for degree, matrix in self._coeffs.items():
            result += np.power(lams, degree)[:, None, None] * matrix
        return result

    __call__ = evaluate

    # Álgebra

    def map_coefficients(self, func) -> "LaurentLoop":
        """Aplica func(grau, matriz) -> (novo_grau, nova_matriz) a cada coeficiente"""
        mapped: Dict[int, np.ndarray] = {}
        for degree, matrix in self._coeffs.items():
            new_degree, new_matrix = func(degree, matrix)
            mapped[new_degree] = mapped.get(new_degree, 0) + np.asarray(new_matrix)
        return LaurentLoop(mapped, n=self._n)

    def _check_same_dimension(self, other: "LaurentLoop"):
        if other.n != self._n:
            raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected=self._n, got=other.n))

    def __add__(self, other: "LaurentLoop") -> "LaurentLoop":
        self._check_same_dimension(other)
        degrees = set(self._coeffs) | set(other._coeffs)
        return LaurentLoop({d: self.coeff(d) + other.coeff(d) for d in degrees}, n=self._n)

    def __sub__(self, other: "LaurentLoop") -> "LaurentLoop":
        self._check_same_dimension(other)
        degrees = set(self._coeffs) | set(other._coeffs)
        return LaurentLoop({d: self.coeff(d) - other.coeff(d) for d in degrees}, n=self._n)

    def __matmul__(self, other: "LaurentLoop") -> "LaurentLoop":
        """Produto pontual (convolução dos coeficientes)"""
        self._check_same_dimension(other)
        product: Dict[int, np.ndarray] = {}
        for d1, a in self._coeffs.items():
            for d2, b in other._coeffs.items():
                product[d1 + d2] = product.get(d1 + d2, 0) + a @ b
        return LaurentLoop(product, n=self._n)

    def scale(self, factor: complex) -> "LaurentLoop":
        return LaurentLoop({d: factor * c for d, c in self._coeffs.items()}, n=self._n)

    def trimmed(self, tol: float = None) -> "LaurentLoop":
        """Remove coeficientes desprezíveis"""
        tol = LOOP_CONFIG["zero_tolerance"] if tol is None else tol
        kept = {d: c for d, c in self._coeffs.items() if max_abs(c) > tol}
        return LaurentLoop(kept, n=self._n)

    def coefficient_distance(self, other: "LaurentLoop") -> float:
        """Máxima diferença entre coeficientes (norma do máximo)"""
        self._check_same_dimension(other)
        degrees = set(self._coeffs) | set(other._coeffs)
        return max((max_abs(self.coeff(d) - other.coeff(d)) for d in degrees), default=0.0)

    def __repr__(self) -> str:
        return f"LaurentLoop(n={self._n}, degrees={list(self._coeffs)})"


def eval_loop(loop: LaurentLoop, lam: complex) -> np.ndarray:
    """Avalia o laço em λ (erro de domínio em λ = 0 com graus negativos)"""
    return loop.evaluate(lam)
