"""
Configuração de uma execução da CLI

Ordem de precedência: padrões embutidos < arquivo em LOOPFRAME_CONFIG (lido
após load_dotenv) < arquivo de --config < flags da linha de comando.
O arquivo usa o mesmo contêiner JSON dos laços, com chaves ordenadas.
"""
import json
import os
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from dotenv import load_dotenv

from config.settings import APP_CONFIG, EXPORT_CONFIG, FACTORIZATION_CONFIG, GRID_CONFIG, STRIP_CONFIG, TOLERANCES
from utils.constants import ERROR_MESSAGES, EXPORT_FORMATS, LAMBDA_RANGES, SPLIT_SIDES, VERIFY_GROUPS
from utils.exceptions import InputError
from utils.helpers import parse_grid, parse_lambda
from utils.logger import get_logger

logger = get_logger(__name__)

# λ usado quando a linha não recebe --lambda
DEFAULT_LAMBDAS = {
    LAMBDA_RANGES["IMAGINARY"]: "0.5i",
    LAMBDA_RANGES["REAL"]: "2",
    LAMBDA_RANGES["CIRCLE"]: "1",
}


def _default_grid() -> str:
    return "x".join(str(c) for c in GRID_CONFIG["counts"])


@dataclass
class RunConfig:
    """Parâmetros de um comando (example, verify, split, extend)"""

    case: int = 3
    row: int = 3
    c: Optional[float] = None
    lambdas: List[str] = field(default_factory=list)
    grid: str = field(default_factory=_default_grid)
    ranges: List[List[float]] = field(default_factory=lambda: [list(r) for r in GRID_CONFIG["ranges"]])
    strip_eps: float = STRIP_CONFIG["eps"]
    imaginary_samples: int = STRIP_CONFIG["imaginary_samples"]
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(TOLERANCES))
    seed: int = 0
    out: Optional[str] = None
    format: Optional[str] = None
    diagnostics: bool = False
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    groups: List[str] = field(default_factory=lambda: list(VERIFY_GROUPS))
    side: str = SPLIT_SIDES["LEFT"]
    input: Optional[str] = None
    bandwidth: Optional[int] = None
    dpw_samples: int = FACTORIZATION_CONFIG["dpw_samples"]
    patch_size: int = FACTORIZATION_CONFIG["patch_size"]

    def validate(self) -> "RunConfig":
        """Verifica tolerâncias, grade, λ, formato e grupos (InputError/DomainError)"""
        unknown = sorted(set(self.tolerances) - set(TOLERANCES))
        if unknown:
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail=f"tolerâncias desconhecidas {unknown}"))
        for name, value in self.tolerances.items():
            if not float(value) > 0:
                raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail=f"tolerância '{name}' deve ser positiva"))
        parse_grid(self.grid)
        if len(self.ranges) != 2 or any(len(r) != 2 or not r[0] < r[1] for r in self.ranges):
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail=f"intervalos inválidos {self.ranges}"))
        if not self.strip_eps > 0:
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail="strip_eps deve ser positivo"))
        if self.imaginary_samples < STRIP_CONFIG["min_samples"] or self.imaginary_samples % 2 == 0:
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail="imaginary_samples deve ser ímpar e ≥ 3"))
        if self.threads < 1:
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail="threads deve ser ≥ 1"))
        if self.format is not None and self.format not in EXPORT_CONFIG["formats"]:
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail=f"formato '{self.format}'"))
        if self.side not in SPLIT_SIDES.values():
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail=f"lado '{self.side}'"))
        bad_groups = sorted(set(self.groups) - set(VERIFY_GROUPS))
        if bad_groups:
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail=f"grupos desconhecidos {bad_groups}"))

        # importação tardia: o catálogo depende de config.settings
        from modules.immersions import CaseSpec

        spec = CaseSpec(self.case, self.row, self.c)
        for lam in self.lambda_values():
            spec.record.require_lambda(lam)
        return self

    def lambda_values(self) -> List[complex]:
        """λ pedidos (ou o padrão da faixa da linha)"""
        if self.lambdas:
            return [parse_lambda(text) for text in self.lambdas]

        from modules.loopalg import case_catalog

        record = case_catalog(self.case, self.row)
        return [parse_lambda(DEFAULT_LAMBDAS[record.lambda_range])]

    def export_format(self) -> str:
        """Formato pedido, ou deduzido da extensão de --out (padrão csv)"""
        if self.format:
            return self.format
        suffix = Path(self.out).suffix.lstrip(".").lower() if self.out else ""
        return suffix if suffix in EXPORT_CONFIG["formats"] else EXPORT_FORMATS["CSV"]

    def grid_counts(self) -> Tuple[int, int]:
        return parse_grid(self.grid)

    def make_grid(self):
        from modules.frames import Grid

        return Grid.create(self.grid_counts(), tuple(tuple(r) for r in self.ranges))

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, document: Dict, base: Optional["RunConfig"] = None) -> "RunConfig":
        """Sobrepõe as chaves do documento a base (ou aos padrões)"""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(document) - known)
        if unknown:
            raise InputError(ERROR_MESSAGES["BAD_CONFIG"].format(detail=f"chaves desconhecidas {unknown}"))
        merged = (base or cls()).to_dict()
        for key, value in document.items():
            if key == "tolerances":
                merged["tolerances"] = {**merged["tolerances"], **{k: float(v) for k, v in value.items()}}
            else:
                merged[key] = value
        return cls(**merged)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def write(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json())
        return path


def read_config_file(path) -> Dict:
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(ERROR_MESSAGES["BAD_FILE"].format(path=path, detail=exc)) from exc
    if not isinstance(document, dict):
        raise InputError(ERROR_MESSAGES["BAD_FILE"].format(path=path, detail="esperado um objeto JSON"))
    return document


def load_config(path=None, overrides: Optional[Dict] = None, base: Optional[RunConfig] = None) -> RunConfig:
    """
    Monta a configuração efetiva

    Args:
        path: Arquivo explícito (--config)
        overrides: Valores das flags; None significa "não informado"
        base: Padrões do comando (no lugar de RunConfig())

    Returns:
        RunConfig validada
    """
    load_dotenv()
    config = base or RunConfig()
    env_path = os.getenv(APP_CONFIG["config_env_var"])
    if env_path:
        logger.info("configuração padrão de %s", env_path)
        config = RunConfig.from_dict(read_config_file(env_path), config)
    if path:
        config = RunConfig.from_dict(read_config_file(path), config)
    if overrides:
        config = RunConfig.from_dict({k: v for k, v in overrides.items() if v is not None}, config)
    return config.validate()


@contextmanager
def tolerances_applied(config: RunConfig) -> Iterator[Dict[str, float]]:
    """Aplica as tolerâncias da execução em TOLERANCES e restaura ao sair"""
    saved = dict(TOLERANCES)
    TOLERANCES.update({k: float(v) for k, v in config.tolerances.items()})
    try:
        yield TOLERANCES
    finally:
        TOLERANCES.clear()
        TOLERANCES.update(saved)
