"""
Funções auxiliares gerais
"""
import re
from typing import Tuple

import numpy as np

from utils.constants import ERROR_MESSAGES
from utils.exceptions import InputError

_POLAR_PATTERN = re.compile(r"^(?P<r>[-+]?[0-9.]*(?:[eE][-+]?[0-9]+)?)\*?e\^\{(?P<t>[^}]+)\}$")
_GRID_PATTERN = re.compile(r"^(?P<w>\d+)[xX](?P<h>\d+)$")


def format_number(value: float, decimals: int = 6) -> str:
    """
    Formata um número real em notação científica de precisão fixa

    Args:
        value: Valor a ser formatado
        decimals: Número de casas decimais

    Returns:
        String formatada ("nan" para valores ausentes)
    """
    if value is None or not np.isfinite(value):
        return "nan" if value is None or np.isnan(value) else ("inf" if value > 0 else "-inf")
    return f"{value:.{decimals}e}"


def format_complex(value: complex, decimals: int = 6) -> str:
    """Formata um complexo como 'a+bi' com precisão fixa"""
    value = complex(value)
    sign = "+" if value.imag >= 0 else "-"
    return f"{value.real:.{decimals}g}{sign}{abs(value.imag):.{decimals}g}i"


def _parse_angle(text: str) -> float:
    """Interpreta o expoente de e^{...} (ex. '0.3i', 'i*pi/4', '-pi/3*i')"""
    cleaned = text.replace(" ", "").replace("pi", "π").replace("i", "").replace("*", "")
    if "π" not in cleaned:
        return float(cleaned)

    before, _, after = cleaned.partition("π")
    if before in ("", "+"):
        coefficient = 1.0
    elif before == "-":
        coefficient = -1.0
    else:
        coefficient = float(before)

    if after:
        if not after.startswith("/"):
            raise ValueError(text)
        coefficient /= float(after[1:])
    return coefficient * np.pi


def parse_lambda(text: str) -> complex:
    """
    Interpreta um valor do parâmetro espectral λ

    Aceita as formas 'a+bi', '0.5i', 'i', '-2' e 're^{ti}' (ex. 'e^{0.3i}',
    '2e^{i*pi/4}').

    Args:
        text: Texto informado na linha de comando ou no arquivo de configuração

    Returns:
        Valor complexo
    """
    raw = str(text).strip().replace(" ", "")
    if not raw:
        raise InputError(ERROR_MESSAGES["BAD_LAMBDA"].format(text=text))

    match = _POLAR_PATTERN.match(raw)
    try:
        if match:
            radius_text = match.group("r")
            if radius_text in ("", "+"):
                radius = 1.0
            elif radius_text == "-":
                radius = -1.0
            else:
                radius = float(radius_text)
            return complex(radius * np.exp(1j * _parse_angle(match.group("t"))))
        return complex(raw.replace("i", "j"))
    except ValueError as exc:
        raise InputError(ERROR_MESSAGES["BAD_LAMBDA"].format(text=text)) from exc


def parse_grid(text: str) -> Tuple[int, int]:
    """
    Interpreta uma especificação de grade 'LxA'

    Returns:
        Tupla (amostras no eixo 1, amostras no eixo 2)
    """
    match = _GRID_PATTERN.match(str(text).strip())
    if not match:
        raise InputError(ERROR_MESSAGES["BAD_GRID"].format(text=text))
    counts = (int(match.group("w")), int(match.group("h")))
    if min(counts) < 2:
        raise InputError(ERROR_MESSAGES["BAD_GRID"].format(text=text))
    return counts


def max_abs(values: np.ndarray) -> float:
    """Norma do máximo das entradas (0 para arrays vazios)"""
    values = np.asarray(values)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))


def ensure_finite(values: np.ndarray, what: str = "array") -> np.ndarray:
    """Garante entradas finitas, senão InputError"""
    values = np.asarray(values)
    if not np.all(np.isfinite(values)):
        raise InputError(f"{ERROR_MESSAGES['NON_FINITE']} ({what})")
    return values


def lambda_key(lam: complex, digits: int = 12) -> Tuple[float, float]:
    """Chave arredondada para localizar amostras de λ"""
    lam = complex(lam)
    return (round(lam.real, digits) + 0.0, round(lam.imag, digits) + 0.0)
