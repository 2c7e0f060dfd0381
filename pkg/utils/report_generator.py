"""
Módulo para geração de relatórios de verificação

Os relatórios não têm carimbo de data: a mesma configuração gera o mesmo
texto, com os números impressos em precisão fixa.
"""
import json
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config.settings import REPORT_CONFIG
from utils.helpers import format_number


def _rounded(value, decimals: int):
    """Float arredondado para a precisão do relatório (None para NaN/Inf)"""
    if value is None:
        return None
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return float(f"{value:.{decimals}e}") if np.isfinite(value) else None
    if isinstance(value, (complex, np.complexfloating)):
        return [_rounded(value.real, decimals), _rounded(value.imag, decimals)]
    if isinstance(value, dict):
        return {str(k): _rounded(v, decimals) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_rounded(v, decimals) for v in value]
    return value


class ReportGenerator:
    """Classe para acumular verificações (resíduo × tolerância) e valores medidos"""

    def __init__(self, title: str, context: Optional[Dict] = None, precision: int = None):
        """
        Inicializa o gerador de relatórios

        Args:
            title: Título do relatório (nome do comando)
            context: Parâmetros da execução incluídos no cabeçalho
            precision: Casas decimais dos números impressos
        """
        self.title = title
        self.context = dict(context or {})
        self.precision = REPORT_CONFIG["precision"] if precision is None else precision
        self.checks: List[Dict] = []
        self.values: List[Dict] = []
        self.notes: List[str] = []

    def add_check(
        self, name: str, group: str, residual: float, tolerance: float, detail: str = "", expect_above: bool = False
    ) -> bool:
        """
        Registra uma verificação; passa se residual ≤ tolerance (NaN falha)

        Com expect_above (controles negativos) passa se residual > tolerance.
        """
        residual = float(residual)
        within = residual > tolerance if expect_above else residual <= tolerance
        passed = bool(np.isfinite(residual) and within)
        self.checks.append(
            {
                "name": name,
                "group": group,
                "residual": residual,
                "tolerance": float(tolerance),
                "passed": passed,
                "detail": detail,
                "negative_control": expect_above,
            }
        )
        return passed

    def add_failure(self, name: str, group: str, message: str, tolerance: float = float("nan")):
        """Verificação que não pôde ser medida (exceção durante a execução)"""
        self.checks.append(
            {
                "name": name,
                "group": group,
                "residual": float("nan"),
                "tolerance": float(tolerance),
                "passed": False,
                "detail": message,
                "negative_control": False,
            }
        )

    def add_value(self, name: str, value, unit: str = "-"):
        self.values.append({"name": name, "value": value, "unit": unit})

    def add_note(self, text: str):
        self.notes.append(text)

    @property
    def passed(self) -> bool:
        return all(check["passed"] for check in self.checks)

    @property
    def failed_checks(self) -> List[Dict]:
        return [check for check in self.checks if not check["passed"]]

    def _format(self, value) -> str:
        if isinstance(value, (bool, np.bool_)):
            return "sim" if value else "não"
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            return format_number(float(value), self.precision)
        if isinstance(value, (complex, np.complexfloating)):
            sign = "+" if value.imag >= 0 else "-"
            return f"{format_number(value.real, self.precision)}{sign}{format_number(abs(value.imag), self.precision)}i"
        if isinstance(value, (list, tuple)):
            return "[" + ", ".join(self._format(v) for v in value) + "]"
        return str(value)

    def generate_markdown_report(self) -> str:
        """
        Gera relatório em texto (Markdown)

        Returns:
            String com o relatório
        """
        lines = [f"# Relatório loopframe: {self.title}", ""]
        if self.context:
            lines += ["## Parâmetros", ""]
            lines += [f"- **{key}:** {self._format(self.context[key])}" for key in sorted(self.context)]
            lines.append("")

        if self.values:
            lines += ["## Valores medidos", ""]
            lines += [
                f"- **{item['name']}:** {self._format(item['value'])}"
                + ("" if item["unit"] == "-" else f" {item['unit']}")
                for item in self.values
            ]
            lines.append("")

        if self.checks:
            lines += ["## Verificações", "", "| Resultado | Grupo | Verificação | Resíduo | Tolerância |", "|---|---|---|---|---|"]
            for check in self.checks:
                status = "PASSOU" if check["passed"] else "FALHOU"
                lines.append(
                    f"| {status} | {check['group']} | {check['name']} | "
                    f"{format_number(check['residual'], self.precision)} | {format_number(check['tolerance'], self.precision)} |"
                )
            lines.append("")
            for check in self.failed_checks:
                if check["detail"]:
                    lines.append(f"- {check['name']}: {check['detail']}")
            lines.append(f"**Resultado:** {len(self.checks) - len(self.failed_checks)}/{len(self.checks)} verificações passaram")
            lines.append("")

        if self.notes:
            lines += ["## Observações", ""] + [f"- {note}" for note in self.notes] + [""]
        return "\n".join(lines)

    def as_dict(self) -> Dict:
        return {
            "title": self.title,
            "context": _rounded(self.context, self.precision),
            "values": [
                {"name": item["name"], "value": _rounded(item["value"], self.precision), "unit": item["unit"]}
                for item in self.values
            ],
            "checks": [
                {**check, "residual": _rounded(check["residual"], self.precision), "tolerance": _rounded(check["tolerance"], self.precision)}
                for check in self.checks
            ],
            "notes": list(self.notes),
            "passed": self.passed,
        }

    def generate_json_report(self) -> str:
        """Relatório legível por máquina (chaves ordenadas)"""
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def generate_summary_table(self) -> pd.DataFrame:
        """
        Gera tabela resumo das verificações

        Returns:
            DataFrame com uma linha por verificação
        """
        summary_data = {
            "Verificação": [check["name"] for check in self.checks],
            "Grupo": [check["group"] for check in self.checks],
            "Resíduo": [format_number(check["residual"], self.precision) for check in self.checks],
            "Tolerância": [format_number(check["tolerance"], self.precision) for check in self.checks],
            "Resultado": ["PASSOU" if check["passed"] else "FALHOU" for check in self.checks],
        }
        return pd.DataFrame(summary_data)

    def write(self, path) -> Path:
        """Grava em JSON (extensão .json) ou Markdown"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = self.generate_json_report() if path.suffix.lower() == ".json" else self.generate_markdown_report()
        path.write_text(text, encoding="utf-8")
        return path
