"""
Representação de laços por amostras equiespaçadas no círculo unitário
"""
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy import fft

from config.settings import FACTORIZATION_CONFIG, LOOP_CONFIG
from modules.loopalg import LaurentLoop
from utils.constants import ERROR_MESSAGES, WARNING_MESSAGES
from utils.exceptions import DimensionError, InputError
from utils.helpers import max_abs
from utils.logger import get_logger

logger = get_logger(__name__)


def circle_points(N: int = None) -> np.ndarray:
    """λ_k = exp(2πik/N), k = 0..N−1"""
    N = FACTORIZATION_CONFIG["samples"] if N is None else int(N)
    if N < 4:
        raise InputError(ERROR_MESSAGES["UNDER_RESOLVED"].format(n=N, bandwidth=1))
    return np.exp(2j * np.pi * np.arange(N) / N)


def check_resolution(N: int, bandwidth: int):
    """N ≥ 4 × largura de banda, senão InputError"""
    if N < 4 * bandwidth:
        raise InputError(ERROR_MESSAGES["UNDER_RESOLVED"].format(n=N, bandwidth=bandwidth))


@dataclass
class CircleSampling:
    """
    Valores L(λ_k) nas N raízes da unidade

    values tem shape (N, *batch, n, n): um laço por ponto do lote (ex. cada
    ponto de uma grade).
    """

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.ndim < 3 or self.values.shape[-1] != self.values.shape[-2]:
            raise DimensionError(
                ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected="(N, ..., n, n)", got=self.values.shape)
            )

    @classmethod
    def from_loop(cls, loop: LaurentLoop, N: int = None) -> "CircleSampling":
        return cls(loop.evaluate_many(circle_points(N)))

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], N: int = None) -> "CircleSampling":
        """func recebe as N amostras de λ e devolve (N, ..., n, n)"""
        return cls(func(circle_points(N)))

    @property
    def N(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[-1]

    @property
    def batch_shape(self) -> Tuple[int, ...]:
        return self.values.shape[1:-2]

    @property
    def points(self) -> np.ndarray:
        return circle_points(self.N)

    def fourier(self) -> np.ndarray:
        """Coeficientes c_d = (1/N) Σ_k L(λ_k) λ_k^{−d}; grau d no índice d mod N"""
        return fft.fft(self.values, axis=0) / self.N

    def coefficient(self, degree: int) -> np.ndarray:
        return self.fourier()[degree % self.N]

    def _degree_norms(self, degrees) -> np.ndarray:
        coefficients = self.fourier()
        indices = [d % self.N for d in degrees]
        if not indices:
            return np.zeros(self.batch_shape)
        return np.max(np.abs(coefficients[indices]), axis=(0, -2, -1))

    def negative_support(self) -> np.ndarray:
        """max |c_d|, d < 0, por ponto do lote"""
        return self._degree_norms(range(-(self.N // 2) + 1, 0))

    def positive_support(self) -> np.ndarray:
        """max |c_d|, d > 0, por ponto do lote"""
        return self._degree_norms(range(1, self.N // 2))

    def spectral_tail(self) -> float:
        """Maior coeficiente do quartil superior de graus, relativo a max(1, ‖L‖)"""
        quarter = self.N // 4
        degrees = list(range(quarter + 1, self.N // 2 + 1)) + list(range(-(self.N // 2) + 1, -quarter))
        tail = float(np.max(self._degree_norms(degrees)))
        return tail / max(1.0, max_abs(self.values))

    def check_spectrum(self, tolerance: float = None, limit: float = None) -> float:
        """
        Cauda espectral relativa; avisa acima de `tolerance` e falha acima de `limit`

        Raises:
            InputError: amostragem no círculo insuficiente para o laço
        """
        tolerance = FACTORIZATION_CONFIG["spectral_tail_tolerance"] if tolerance is None else tolerance
        limit = FACTORIZATION_CONFIG["spectral_tail_limit"] if limit is None else limit
        tail = self.spectral_tail()
        if tail > limit:
            raise InputError(ERROR_MESSAGES["SPECTRAL_UNDER_RESOLVED"].format(tail=tail, limit=limit, n=self.N))
        if tail > tolerance:
            logger.warning(WARNING_MESSAGES["SPECTRAL_TAIL"].format(tail=tail, tol=tolerance))
        return tail

    def reflected(self) -> "CircleSampling":
        """Amostras de L(1/λ): o índice k vai para −k mod N"""
        return CircleSampling(self.values[(-np.arange(self.N)) % self.N])

    def inverse(self) -> "CircleSampling":
        return CircleSampling(np.linalg.inv(self.values))

    def __matmul__(self, other: "CircleSampling") -> "CircleSampling":
        return CircleSampling(self.values @ other.values)

    def distance(self, other: Union["CircleSampling", np.ndarray]) -> float:
        values = other.values if isinstance(other, CircleSampling) else np.asarray(other)
        return max_abs(self.values - values)

    def take(self, index) -> "CircleSampling":
        """Laço de um único ponto do lote"""
        return CircleSampling(self.values[(slice(None), *tuple(index))])

    def to_loop(self, tol: float = None, max_degree: Optional[int] = None) -> LaurentLoop:
        """
        Polinômio de Laurent com os coeficientes acima de tol

        Só vale para amostras sem lote; coeficientes fora dos graus permitidos
        acima de tol levantam DimensionError.
        """
        if self.batch_shape:
            raise DimensionError(ERROR_MESSAGES["DIMENSION_MISMATCH"].format(expected="um laço", got=self.batch_shape))
        tol = LOOP_CONFIG["zero_tolerance"] * max(1.0, max_abs(self.values)) * 1e4 if tol is None else tol
        cap = LOOP_CONFIG["max_degree"] if max_degree is None else max_degree
        coefficients = self.fourier()
        coeffs = {}
        for degree in range(-(self.N // 2) + 1, self.N // 2):
            value = coefficients[degree % self.N]
            if max_abs(value) <= tol:
                continue
            if abs(degree) > cap:
                raise DimensionError(ERROR_MESSAGES["DEGREE_CAP"].format(degree=degree, lo=-cap, hi=cap))
            coeffs[degree] = value
        return LaurentLoop(coeffs, n=self.n)
