"""
Grade retangular do domínio de parâmetros
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from config.settings import GRID_CONFIG
from utils.exceptions import InputError


@dataclass(frozen=True)
class Grid:
    """Produto de intervalos amostrado uniformemente, com ponto base p"""

    ranges: Tuple[Tuple[float, float], ...]
    counts: Tuple[int, ...]
    base_index: Tuple[int, ...]

    def __post_init__(self):
        ranges = tuple((float(lo), float(hi)) for lo, hi in self.ranges)
        counts = tuple(int(c) for c in self.counts)
        base = tuple(int(i) for i in self.base_index)

        if len(ranges) != len(counts) or len(base) != len(counts):
            raise InputError("Grade: ranges, counts e base_index devem ter o mesmo tamanho")
        if any(c < GRID_CONFIG["min_count"] for c in counts):
            raise InputError(f"Grade: pelo menos {GRID_CONFIG['min_count']} amostras por eixo")
        if any(not hi > lo for lo, hi in ranges):
            raise InputError(f"Grade: intervalos degenerados {ranges}")
        if any(not 0 <= i < c for i, c in zip(base, counts)):
            raise InputError(f"Grade: ponto base {base} fora da grade {counts}")

        object.__setattr__(self, "ranges", ranges)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "base_index", base)

    @classmethod
    def create(
        cls,
        counts: Sequence[int] = None,
        ranges: Sequence[Tuple[float, float]] = None,
        base_index: Optional[Sequence[int]] = None,
    ) -> "Grid":
        """
        Constrói a grade; sem base_index, usa o ponto mais próximo da origem

        Args:
            counts: Amostras por eixo
            ranges: Intervalos [lo, hi] por eixo
            base_index: Índice do ponto base
        """
        counts = tuple(counts or GRID_CONFIG["counts"])
        ranges = tuple(ranges or GRID_CONFIG["ranges"])
        if base_index is None:
            base_index = tuple(
                int(np.argmin(np.abs(np.linspace(lo, hi, c)))) for (lo, hi), c in zip(ranges, counts)
            )
        return cls(ranges=ranges, counts=counts, base_index=tuple(base_index))

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.counts

    @property
    def axes(self) -> Tuple[np.ndarray, ...]:
        return tuple(np.linspace(lo, hi, c) for (lo, hi), c in zip(self.ranges, self.counts))

    @property
    def steps(self) -> Tuple[float, ...]:
        return tuple((hi - lo) / (c - 1) for (lo, hi), c in zip(self.ranges, self.counts))

    @property
    def points(self) -> np.ndarray:
        """Coordenadas de todos os pontos, shape (*counts, m)"""
        return np.stack(np.meshgrid(*self.axes, indexing="ij"), axis=-1)

    @property
    def base_point(self) -> np.ndarray:
        return np.array([axis[i] for axis, i in zip(self.axes, self.base_index)])

    def point(self, index: Sequence[int]) -> np.ndarray:
        return np.array([axis[i] for axis, i in zip(self.axes, index)])

    def nearest_index(self, coordinates: Sequence[float]) -> Tuple[int, ...]:
        """Índice do ponto da grade mais próximo das coordenadas"""
        return tuple(int(np.argmin(np.abs(axis - x))) for axis, x in zip(self.axes, coordinates))

    def with_base(self, base_index: Sequence[int]) -> "Grid":
        return Grid(ranges=self.ranges, counts=self.counts, base_index=tuple(base_index))

    def refined(self) -> "Grid":
        """Mesma região com passo h/2 (o ponto base é preservado)"""
        counts = tuple(2 * c - 1 for c in self.counts)
        return Grid(ranges=self.ranges, counts=counts, base_index=tuple(2 * i for i in self.base_index))

    def sub_grid(self, lower: Sequence[int], upper: Sequence[int], base_index: Sequence[int]) -> "Grid":
        """Sub-grade [lower, upper] (índices inclusivos) com ponto base em índices globais"""
        axes = self.axes
        ranges = tuple((axes[a][lo], axes[a][hi]) for a, (lo, hi) in enumerate(zip(lower, upper)))
        counts = tuple(hi - lo + 1 for lo, hi in zip(lower, upper))
        base = tuple(b - lo for b, lo in zip(base_index, lower))
        return Grid(ranges=ranges, counts=counts, base_index=base)

    def as_dict(self):
        return {"ranges": [list(r) for r in self.ranges], "counts": list(self.counts), "base_index": list(self.base_index)}

    @classmethod
    def from_dict(cls, document) -> "Grid":
        return cls(
            ranges=tuple(tuple(r) for r in document["ranges"]),
            counts=tuple(document["counts"]),
            base_index=tuple(document["base_index"]),
        )
