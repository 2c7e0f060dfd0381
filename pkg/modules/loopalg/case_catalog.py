"""
Catálogo dos casos 1-4 (linhas 1-3): conjugações Ad_T, formas Ĵ, faixas de λ,
intervalos de curvatura e quádricas-alvo
"""
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from config.settings import LAMBDA_RANGE_CONFIG
from utils.constants import ERROR_MESSAGES, LAMBDA_RANGES
from utils.exceptions import DomainError, InputError

from .involutions import (
    InvolutionSpec,
    SignatureForm,
    default_P,
    default_Q,
    hyperbolic_J,
    rho1,
    rho2,
    rho3,
    rho_hat3,
    tau1,
    tau2,
    tau3,
)

INF = float("inf")

# Dados por caso: ε, ρ da linha, ρ positiva (extensão), τ, grupo, espaço simétrico
_CASES = {
    1: {"eps": 1, "rho": "rho1", "rho_positive": "rho1", "tau": "tau1",
        "group": "SO(m+k+1,C)", "symmetric_space": "SO(m+k,1)/(SO(m)xSO(k,1))"},
    2: {"eps": 1, "rho": "rho2", "rho_positive": "rho2", "tau": "tau2",
        "group": "SO(m+k+1,C)", "symmetric_space": "SO(m+1,k)/(SO(m)xSO(k,1))"},
    3: {"eps": 1, "rho": "rho3", "rho_positive": "rho_hat3", "tau": "tau3",
        "group": "SO(m+k+1,C)", "symmetric_space": "SO(m+k+1)/(SO(m)xSO(k+1))"},
    4: {"eps": -1, "rho": "rho2", "rho_positive": "rho2", "tau": "tau2",
        "group": "SO(m+k,1,C)", "symmetric_space": "SO(m,k+1)/(SO(m)xSO(k+1))"},
}

# (faixa, T por blocos (m, 1, k), Ĵ por blocos, intervalo (lo, hi, lo fechado, hi fechado), alvo)
_ROWS = {
    (1, 1): ("imaginary", (1, 1, 1), (1, 1, 1), (-INF, 0.0, False, False), "S^{m+k}"),
    (1, 2): ("real", (1j, 1, 1), (1, -1, -1), (-1.0, 0.0, True, False), "H^{m+k}_k"),
    (1, 3): ("circle", (1j, 1, 1j), (1, -1, 1), (-INF, -1.0, False, True), "H^{m+k}"),
    (2, 1): ("imaginary", (1j, 1, 1), (1, -1, -1), (0.0, INF, False, False), "H^{m+k}_k"),
    (2, 2): ("real", (1, 1, 1), (1, 1, 1), (0.0, 1.0, False, True), "S^{m+k}"),
    (2, 3): ("circle", (1j, 1j, 1), (1, 1, -1), (1.0, INF, True, False), "S^{m+k}_k"),
    (3, 1): ("imaginary", (1j, 1, 1j), (1, -1, 1), (0.0, INF, False, False), "H^{m+k}"),
    (3, 2): ("real", (1j, 1j, 1), (1, 1, -1), (0.0, 1.0, False, True), "S^{m+k}_k"),
    (3, 3): ("circle", (1, 1, 1), (1, 1, 1), (1.0, INF, True, False), "S^{m+k}"),
    (4, 1): ("imaginary", (1, 1j, 1j), (1, 1, -1), (-INF, 0.0, False, False), "S^{m+k}_k"),
    (4, 2): ("real", (1, 1, 1), (1, -1, 1), (-1.0, 0.0, True, False), "H^{m+k}"),
    (4, 3): ("circle", (1, 1, 1j), (1, -1, -1), (-INF, -1.0, False, True), "H^{m+k}_k"),
}

# Linhas adicionais (assinaturas mistas) registradas em tempo de execução
_EXTRA_ROWS: Dict[Tuple[int, int], Callable[[int, int], "CaseRow"]] = {}


def _blocks(values, m: int, k: int) -> np.ndarray:
    first, middle, last = values
    return np.concatenate([np.full(m, first), [middle], np.full(k, last)]).astype(complex)


@dataclass(frozen=True)
class CaseRow:
    """Uma linha de uma das tabelas de casos"""

    case: int
    row: int
    m: int
    k: int
    T: Tuple[complex, ...]
    J_hat: SignatureForm
    J: SignatureForm
    lambda_range: str
    curvature_interval: Tuple[float, float, bool, bool]
    target_label: str
    eps: int
    rho_kind: str
    rho_positive_kind: str
    tau_kind: str
    group_label: str
    symmetric_space: str

    @property
    def n(self) -> int:
        return self.m + self.k + 1

    @property
    def T_matrix(self) -> np.ndarray:
        return np.diag(np.array(self.T, dtype=complex))

    @property
    def quadric_sign(self) -> int:
        """+1 para alvos do tipo esfera, −1 para os do tipo hiperbólico"""
        return int(self.J_hat.diag[self.m])

    @property
    def P(self) -> SignatureForm:
        return default_P(self.m, self.k)

    @property
    def Q(self) -> SignatureForm:
        return default_Q(self.m, self.k)

    def involution(self, kind: str) -> InvolutionSpec:
        """Constrói a involução pelo nome usando P, Q deste caso"""
        builders = {
            "rho1": rho1,
            "rho2": rho2,
            "rho3": rho3,
            "rho_hat3": lambda: rho_hat3(self.Q),
            "tau1": lambda: tau1(self.P, self.Q),
            "tau2": lambda: tau2(self.Q),
            "tau3": tau3,
        }
        return builders[kind]()

    @property
    def rho(self) -> InvolutionSpec:
        return self.involution(self.rho_kind)

    @property
    def rho_positive(self) -> InvolutionSpec:
        return self.involution(self.rho_positive_kind)

    @property
    def tau(self) -> InvolutionSpec:
        return self.involution(self.tau_kind)

    def curvature(self, lam: complex) -> float:
        """c_λ = ±4/(λ+λ⁻¹)², sinal igual ao da quádrica-alvo"""
        lam = complex(lam)
        s = lam + 1.0 / lam
        return float(np.real(self.quadric_sign * 4.0 / s ** 2))

    def contains_lambda(self, lam: complex) -> bool:
        """λ pertence à faixa desta linha (excluídos 0 e ±i)"""
        lam = complex(lam)
        tol = LAMBDA_RANGE_CONFIG["axis_tolerance"]
        radius = LAMBDA_RANGE_CONFIG["exclusion_radius"]
        if abs(lam) < radius or abs(lam - 1j) < radius or abs(lam + 1j) < radius:
            return False
        if self.lambda_range == LAMBDA_RANGES["REAL"]:
            return abs(lam.imag) <= tol
        if self.lambda_range == LAMBDA_RANGES["IMAGINARY"]:
            return abs(lam.real) <= tol
        return abs(abs(lam) - 1.0) <= tol

    def contains_curvature(self, c: float) -> bool:
        lo, hi, lo_closed, hi_closed = self.curvature_interval
        above = c >= lo if lo_closed else c > lo
        below = c <= hi if hi_closed else c < hi
        return bool(above and below)

    def require_lambda(self, lam: complex):
        """Valida λ para esta linha, senão DomainError"""
        lam = complex(lam)
        radius = LAMBDA_RANGE_CONFIG["exclusion_radius"]
        if abs(lam - 1j) < radius or abs(lam + 1j) < radius:
            raise DomainError(ERROR_MESSAGES["LAMBDA_EXCLUDED"].format(lam=lam))
        if not self.contains_lambda(lam):
            raise DomainError(
                ERROR_MESSAGES["LAMBDA_OUT_OF_RANGE"].format(
                    lam=lam, range=self.lambda_range, case=self.case, row=self.row
                )
            )

    def as_dict(self) -> Dict:
        lo, hi, lo_closed, hi_closed = self.curvature_interval
        return {
            "case": self.case,
            "row": self.row,
            "m": self.m,
            "k": self.k,
            "T": [[v.real, v.imag] for v in map(complex, self.T)],
            "J_hat": list(self.J_hat.diag),
            "lambda_range": self.lambda_range,
            "curvature_interval": [lo, hi, lo_closed, hi_closed],
            "target": self.target_label,
            "quadric_sign": self.quadric_sign,
            "group": self.group_label,
            "symmetric_space": self.symmetric_space,
        }


def conjugation_pair_residual(T, J_hat: SignatureForm, J: SignatureForm) -> float:
    """
    Mede T Ĵ T = κ J com κ = ±1

    Se FᵗJF = J então (Ad_T F)ᵗ Ĵ (Ad_T F) = Ĵ exatamente nesse caso.
    """
    t = np.asarray(T, dtype=complex)
    product = t * J_hat.vector * t
    kappa = np.sign(product[0].real) or 1.0
    return float(np.max(np.abs(product - kappa * J.vector)))


def case_catalog(case: int, row: int, m: int = 2, k: int = 1) -> CaseRow:
    """
    Registro (T, Ĵ, faixa de λ, intervalo de curvatura, alvo, sinal da quádrica)

    Args:
        case: 1..4
        row: 1..3 (1: λ ∈ iR*, 2: λ ∈ R*, 3: λ ∈ S¹)
        m: Dimensão da variedade
        k: Codimensão
    """
    if (case, row) in _EXTRA_ROWS:
        return _EXTRA_ROWS[(case, row)](m, k)
    if (case, row) not in _ROWS or m < 1 or k < 0:
        raise InputError(ERROR_MESSAGES["INVALID_CASE"].format(case=case, row=row))

    lambda_range, t_blocks, j_blocks, interval, target = _ROWS[(case, row)]
    info = _CASES[case]
    J = hyperbolic_J(m, k) if info["eps"] < 0 else SignatureForm.identity(m + k + 1)
    J_hat = SignatureForm(tuple(int(v.real) for v in _blocks(j_blocks, m, k)))

    return CaseRow(
        case=case,
        row=row,
        m=m,
        k=k,
        T=tuple(_blocks(t_blocks, m, k)),
        J_hat=J_hat,
        J=J,
        lambda_range=lambda_range,
        curvature_interval=interval,
        target_label=target,
        eps=info["eps"],
        rho_kind=info["rho"],
        rho_positive_kind=info["rho_positive"],
        tau_kind=info["tau"],
        group_label=info["group"],
        symmetric_space=info["symmetric_space"],
    )


def all_case_rows(m: int = 2, k: int = 1):
    """As 12 linhas das tabelas"""
    return [case_catalog(case, row, m, k) for (case, row) in sorted(_ROWS)]


def row_for_lambda(case: int, lam: complex, m: int = 2, k: int = 1) -> CaseRow:
    """Primeira linha do caso cuja faixa contém λ"""
    # λ = ±1 pertence a R* e a S¹; a linha do círculo tem prioridade
    for row in (3, 1, 2):
        record = case_catalog(case, row, m, k)
        if record.contains_lambda(lam):
            return record
    raise DomainError(
        ERROR_MESSAGES["LAMBDA_OUT_OF_RANGE"].format(lam=complex(lam), range="nenhuma", case=case, row="-")
    )


def mixed_signature(m: int, k: int, l: int, eps: int) -> SignatureForm:
    """J = diag(I_m, ε, −I_l, I_{k−l}) (generalização de assinatura mista)"""
    if not 0 <= l <= k or eps not in (1, -1):
        raise InputError(f"Parâmetros de assinatura inválidos: l={l}, k={k}, ε={eps}")
    return SignatureForm.from_blocks((1, m), (eps, 1), (-1, l), (1, k - l))


def register_case_row(case: int, row: int, builder: Callable[[int, int], CaseRow]):
    """
    Registra uma linha extra do catálogo

    A linha produzida por builder(m, k) deve satisfazer T Ĵ T = ±J. As 12
    linhas das tabelas não podem ser substituídas.
    """
    if (case, row) in _ROWS:
        raise InputError(f"Caso {case}, linha {row} já pertence ao catálogo")
    sample = builder(2, 1)
    if conjugation_pair_residual(sample.T, sample.J_hat, sample.J) > 1e-12:
        raise InputError(f"Par (T, Ĵ) incompatível com J para caso {case}, linha {row}")
    _EXTRA_ROWS[(case, row)] = builder


def unregister_case_row(case: int, row: int):
    _EXTRA_ROWS.pop((case, row), None)
