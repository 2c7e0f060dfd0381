"""
Escolha de caso/linha e curvatura para inserção e avaliação
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from modules.loopalg import CaseRow, case_catalog
from utils.constants import ERROR_MESSAGES
from utils.exceptions import InadmissibleCurvatureError, InputError


@dataclass(frozen=True)
class CaseSpec:
    """Caso 1..4, linha 1..3 e, opcionalmente, a curvatura c da imersão inserida"""

    case: int
    row: int
    c: Optional[float] = None
    m: int = 2
    k: int = 1

    def __post_init__(self):
        record = self.record
        if self.c is None:
            return
        c = float(self.c)
        if not np.isfinite(c) or c == 0:
            raise InadmissibleCurvatureError(ERROR_MESSAGES["INADMISSIBLE_CURVATURE"].format(c=c, eps=record.eps))
        if self.formula_curvature == 1:
            raise InadmissibleCurvatureError(ERROR_MESSAGES["TOTALLY_GEODESIC"])
        if not record.contains_curvature(c):
            raise InadmissibleCurvatureError(
                ERROR_MESSAGES["INADMISSIBLE_CURVATURE"].format(c=c, eps=record.eps)
                + f" Intervalo da linha: {record.curvature_interval[:2]}"
            )

    @property
    def record(self) -> CaseRow:
        return case_catalog(self.case, self.row, self.m, self.k)

    @property
    def eps(self) -> int:
        return self.record.eps

    @property
    def quadric_sign(self) -> int:
        return self.record.quadric_sign

    @property
    def formula_curvature(self) -> float:
        """c de 4/(λ₀+λ₀⁻¹)², o valor que fixa λ₀"""
        if self.c is None:
            raise InputError("CaseSpec sem curvatura")
        return float(self.c) * self.quadric_sign

    @property
    def untransformed_curvature(self) -> float:
        """Curvatura da imersão no referencial não transformado (antes de Ad_T)"""
        return self.formula_curvature * self.eps

    @property
    def lambda0(self) -> complex:
        """λ₀ = (1/√c)(1 + √(1−c)) com c = formula_curvature (ramos principais)"""
        c = self.formula_curvature
        root = np.sqrt(complex(c))
        return complex((1 + np.sqrt(complex(1 - c))) / root)

    def with_curvature(self, c: float) -> "CaseSpec":
        return CaseSpec(self.case, self.row, c, self.m, self.k)
