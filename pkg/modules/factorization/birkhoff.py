"""
Fatoração de Birkhoff L = L₊L₋ (ou L₋L₊) por mínimos quadrados em blocos de
Toeplitz na representação de Fourier truncada
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple, Union

import numpy as np
from scipy import fft

from config.settings import FACTORIZATION_CONFIG, TOLERANCES
from modules.loopalg import LaurentLoop
from utils.constants import ERROR_MESSAGES, SPLIT_SIDES
from utils.exceptions import BigCellError, InputError
from utils.helpers import max_abs
from utils.logger import get_logger

from .circle import CircleSampling, check_resolution

logger = get_logger(__name__)

LoopSource = Union[LaurentLoop, CircleSampling, Callable[[np.ndarray], np.ndarray]]

# pontos por bloco de SVD
_CHUNK = 2048


@dataclass
class SplitResult:
    """
    Fatores no círculo e diagnósticos por ponto do lote

    Lado esquerdo: L = plus·minus com plus(0) = I. Lado direito:
    L = minus·plus com minus(∞) = I.
    """

    plus_factor: CircleSampling
    minus_factor: CircleSampling
    side: str
    residual: float
    condition: np.ndarray
    system_residual: np.ndarray
    plus_support: float
    minus_support: float
    normalization: float
    failures: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def in_big_cell(self) -> bool:
        return not self.failures

    @property
    def max_condition(self) -> float:
        return float(np.max(self.condition))

    def plus_loop(self, tol: float = None) -> LaurentLoop:
        return self.plus_factor.to_loop(tol)

    def minus_loop(self, tol: float = None) -> LaurentLoop:
        return self.minus_factor.to_loop(tol)

    def diagnostics(self) -> List[Dict]:
        """Um registro por ponto do lote (índice, condição, resíduo do sistema)"""
        records = []
        for index in np.ndindex(*self.condition.shape):
            records.append(
                {
                    "point": list(index),
                    "condition": float(self.condition[index]),
                    "system_residual": float(self.system_residual[index]),
                    "in_big_cell": tuple(index) not in self.failures,
                }
            )
        return records

    def as_dict(self) -> Dict:
        return {
            "side": self.side,
            "residual": self.residual,
            "condition": self.max_condition,
            "plus_support": self.plus_support,
            "minus_support": self.minus_support,
            "normalization": self.normalization,
            "in_big_cell": self.in_big_cell,
            "failures": [list(p) for p in self.failures],
        }


def _as_sampling(loop: LoopSource, N: int = None) -> CircleSampling:
    if isinstance(loop, CircleSampling):
        return loop
    if isinstance(loop, LaurentLoop):
        return CircleSampling.from_loop(loop, N)
    if callable(loop):
        return CircleSampling.from_function(loop, N)
    raise InputError(f"Laço não suportado: {type(loop).__name__}")


def _toeplitz_system(coefficients: np.ndarray, bandwidth: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sistema X M = R para X = [X₁ … X_B], com (X L)_d = 0 para d = 1..2B

    M[(e, i), (d, j)] = L_{d−e}[i, j] e R = −[L₁ … L_{2B}].

    Args:
        coefficients: (N, P, n, n), grau d no índice d mod N
        bandwidth: B

    Returns:
        (M, R) com shapes (P, nB, 2nB) e (P, n, 2nB)
    """
    N, P, n, _ = coefficients.shape
    B, D = bandwidth, 2 * bandwidth
    e = np.arange(1, B + 1)
    d = np.arange(1, D + 1)
    blocks = coefficients[(d[None, :] - e[:, None]) % N]  # (B, D, P, n, n)
    M = np.transpose(blocks, (2, 0, 3, 1, 4)).reshape(P, B * n, D * n)
    rhs = coefficients[d % N]  # (D, P, n, n)
    R = -np.transpose(rhs, (1, 2, 0, 3)).reshape(P, n, D * n)
    return M, R


def _solve_chunk(M: np.ndarray, R: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Mínimos quadrados X = R M⁺ via SVD em lote; devolve (X, condição, resíduo)"""
    U, S, Vh = np.linalg.svd(M, full_matrices=False)
    top = S[..., :1]
    usable = S > top * np.finfo(float).eps * max(M.shape[-2:])
    inverse = np.where(usable, 1.0 / np.where(usable, S, 1.0), 0.0)
    pinv = np.conj(np.swapaxes(Vh, -1, -2)) @ (inverse[..., :, None] * np.conj(np.swapaxes(U, -1, -2)))
    X = R @ pinv
    with np.errstate(divide="ignore", invalid="ignore"):
        condition = np.where(S[..., -1] > 0, S[..., 0] / S[..., -1], np.inf)
    residual = np.max(np.abs(X @ M - R), axis=(-2, -1))
    return X, condition, residual


def _left_split(values: np.ndarray, bandwidth: int):
    """
    values (N, P, n, n) → (plus, minus, condição, resíduo do sistema)

    X = L₊⁻¹ = I + Σ_{e=1}^{B} X_e λ^e é escolhido para que X·L não tenha
    graus positivos.
    """
    N, P, n, _ = values.shape
    coefficients = fft.fft(values, axis=0) / N
    lams = np.exp(2j * np.pi * np.arange(N) / N)
    powers = lams[:, None] ** np.arange(1, bandwidth + 1)[None, :]  # (N, B)

    X_all = np.empty((P, n, bandwidth * n), dtype=complex)
    condition = np.empty(P)
    system = np.empty(P)
    for start in range(0, P, _CHUNK):
        stop = min(P, start + _CHUNK)
        M, R = _toeplitz_system(coefficients[:, start:stop], bandwidth)
        X_all[start:stop], condition[start:stop], system[start:stop] = _solve_chunk(M, R)

    blocks = np.transpose(X_all.reshape(P, n, bandwidth, n), (2, 0, 1, 3))  # (B, P, n, n)
    X = np.eye(n) + np.einsum("ke,epij->kpij", powers, blocks)
    minus = X @ values
    plus = np.linalg.inv(X)
    return plus, minus, condition, system


def birkhoff_split(
    loop: LoopSource,
    side: str = SPLIT_SIDES["LEFT"],
    N: int = None,
    bandwidth: int = None,
    threshold: float = None,
    raise_on_failure: bool = True,
) -> SplitResult:
    """
    Fatoração de Birkhoff de um laço (ou de um lote de laços)

    Args:
        loop: LaurentLoop, CircleSampling (N, *lote, n, n) ou função de λ
        side: "left" (L = L₊L₋, L₊(0) = I) ou "right" (L = L₋L₊, L₋(∞) = I)
        N: Amostras no círculo (quando o laço não está amostrado)
        bandwidth: Largura de banda B do fator normalizado (padrão min(16, N/4))
        threshold: Condição máxima do sistema para a grande célula
        raise_on_failure: Levanta BigCellError se algum ponto ficar fora

    Returns:
        SplitResult com fatores amostrados e diagnósticos
    """
    if side not in SPLIT_SIDES.values():
        raise InputError(f"Lado de fatoração desconhecido: {side}")
    sampling = _as_sampling(loop, N)
    N = sampling.N
    bandwidth = min(FACTORIZATION_CONFIG["bandwidth"], N // 4) if bandwidth is None else int(bandwidth)
    check_resolution(N, bandwidth)
    threshold = FACTORIZATION_CONFIG["condition_threshold"] if threshold is None else threshold
    sampling.check_spectrum()

    batch, n = sampling.batch_shape, sampling.n
    source = sampling.reflected() if side == SPLIT_SIDES["RIGHT"] else sampling
    flat = source.values.reshape(N, -1, n, n)
    plus, minus, condition, system = _left_split(flat, bandwidth)

    plus = CircleSampling(plus.reshape(N, *batch, n, n))
    minus = CircleSampling(minus.reshape(N, *batch, n, n))
    if side == SPLIT_SIDES["RIGHT"]:
        plus, minus = minus.reflected(), plus.reflected()
        product = minus @ plus
        normalized = minus
    else:
        product = plus @ minus
        normalized = plus

    scale = np.maximum(1.0, np.max(np.abs(flat), axis=(0, -2, -1)))
    condition = condition.reshape(batch)
    system = system.reshape(batch)
    bad = (condition > threshold) | (system > TOLERANCES["birkhoff"] * scale.reshape(batch))
    failures = [tuple(int(i) for i in index) for index in np.argwhere(bad)]

    result = SplitResult(
        plus_factor=plus,
        minus_factor=minus,
        side=side,
        residual=product.distance(sampling),
        condition=condition,
        system_residual=system,
        plus_support=float(np.max(plus.negative_support())),
        minus_support=float(np.max(minus.positive_support())),
        normalization=max_abs(normalized.coefficient(0) - np.eye(n)),
        failures=failures,
    )
    logger.debug(
        "Birkhoff (%s): %d laço(s), condição máx. %.3e, resíduo %.3e",
        side,
        flat.shape[1],
        result.max_condition,
        result.residual,
    )
    if failures and raise_on_failure:
        worst = int(np.argmax(condition.ravel()))
        raise BigCellError(
            ERROR_MESSAGES["BIG_CELL"].format(
                count=len(failures), point=failures[0], condition=float(condition.ravel()[worst])
            ),
            points=failures,
            conditions=[float(condition[p]) for p in failures],
        )
    return result


def in_big_cell(loop: LoopSource, N: int = None, bandwidth: int = None, threshold: float = None) -> Tuple[bool, float]:
    """(pertence à grande célula, condição do sistema)"""
    result = birkhoff_split(loop, N=N, bandwidth=bandwidth, threshold=threshold, raise_on_failure=False)
    return result.in_big_cell, result.max_condition
