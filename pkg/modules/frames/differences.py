"""
Diferenças finitas em grades uniformes
"""
from functools import lru_cache
from typing import Tuple

import numpy as np


@lru_cache(maxsize=128)
def fornberg_weights(offsets: Tuple[float, ...], order: int = 1) -> Tuple[float, ...]:
    """
    Pesos de diferenças finitas (algoritmo de Fornberg) em x0 = 0

    Args:
        offsets: Posições dos nós relativas ao ponto de avaliação
        order: Ordem da derivada

    Returns:
        Pesos, um por nó
    """
    x = np.asarray(offsets, dtype=float)
    n = x.size
    c = np.zeros((n, order + 1))
    c1 = 1.0
    c4 = x[0]
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return tuple(c[:, order])


def derivative(values: np.ndarray, h: float, axis: int, accuracy: int = 2) -> np.ndarray:
    """
    Primeira derivada ao longo de um eixo

    Centrada no interior e unilateral nas bordas, com ordem `accuracy`
    (reduzida quando o eixo tem poucas amostras).
    """
    values = np.asarray(values)
    size = values.shape[axis]
    accuracy = int(min(accuracy, size - 1))
    if accuracy <= 2:
        return np.gradient(values, h, axis=axis, edge_order=min(2, size - 1) or 1)

    width = accuracy + 1
    half = accuracy // 2
    moved = np.moveaxis(values, axis, 0)
    result = np.empty_like(moved, dtype=np.result_type(moved.dtype, float))

    def stencil(start, index):
        offsets = tuple(float(s - index) for s in range(start, start + width))
        return np.asarray(fornberg_weights(offsets, 1)) / h

    # interior: mesmo estêncil centrado
    if accuracy % 2 == 0 and size - 2 * half > 0:
        weights = stencil(0, half)
        interior = np.zeros_like(result[half:size - half])
        for k, w in enumerate(weights):
            interior = interior + w * moved[k:size - 2 * half + k]
        result[half:size - half] = interior
        edge = list(range(half)) + list(range(size - half, size))
    else:
        edge = list(range(size))

    for index in edge:
        start = min(max(index - half, 0), size - width)
        weights = stencil(start, index)
        result[index] = np.tensordot(weights, moved[start:start + width], axes=(0, 0))

    return np.moveaxis(result, 0, axis)
