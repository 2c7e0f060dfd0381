"""
Leitura e gravação de arquivos de laços

Formato: documento JSON com campos `n` (inteiro) e `coeffs` (mapa grau -> matriz
n×n de pares [re, im]); campos opcionais `factor` e `meta`.
"""
import json
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np

from utils.constants import ERROR_MESSAGES
from utils.exceptions import InputError

from .laurent_loop import LaurentLoop


def matrix_to_pairs(matrix: np.ndarray):
    """Matriz complexa -> lista aninhada de pares [re, im]"""
    matrix = np.asarray(matrix, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def pairs_to_matrix(pairs) -> np.ndarray:
    """Lista aninhada de pares [re, im] -> matriz complexa"""
    array = np.asarray(pairs, dtype=float)
    if array.ndim != 3 or array.shape[-1] != 2:
        raise InputError(f"Matriz deve ser n×n de pares [re, im], recebido shape {array.shape}")
    return array[..., 0] + 1j * array[..., 1]


def loop_to_dict(loop: LaurentLoop, factor: Optional[str] = None, meta: Optional[Dict] = None) -> Dict:
    document = {
        "n": loop.n,
        "coeffs": {str(d): matrix_to_pairs(c) for d, c in loop.coeffs.items()},
    }
    if factor is not None:
        document["factor"] = factor
    if meta:
        document["meta"] = meta
    return document


def loop_from_dict(document: Dict) -> LaurentLoop:
    try:
        n = int(document["n"])
        coeffs = {int(d): pairs_to_matrix(c) for d, c in document["coeffs"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Documento de laço inválido: {exc}") from exc
    return LaurentLoop(coeffs, n=n)


def write_loop(path, loop: LaurentLoop, factor: Optional[str] = None, meta: Optional[Dict] = None) -> Path:
    """Grava o laço; floats em repr mais curto (ida e volta exata)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(loop_to_dict(loop, factor, meta), indent=1, sort_keys=True) + "\n")
    return path


def read_loop(path) -> Tuple[LaurentLoop, Dict]:
    """
    Lê um arquivo de laço

    Returns:
        Tupla (laço, cabeçalho com 'factor'/'meta' quando presentes)
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(ERROR_MESSAGES["BAD_FILE"].format(path=path, detail=exc)) from exc
    header = {key: document[key] for key in ("factor", "meta") if key in document}
    return loop_from_dict(document), header
