"""
Gravação e leitura de famílias de referenciais

Mesmo contêiner JSON dos arquivos de laços: cabeçalho com a grade e o shape
explícito; valores em ordem eixo-major (C) como pares [re, im].
"""
import json
from pathlib import Path
from typing import Dict, Tuple

import numpy as np

from utils.constants import ERROR_MESSAGES
from utils.exceptions import InputError

from .fields import FrameFamily
from .grid import Grid


def array_to_document(values: np.ndarray) -> Dict:
    values = np.asarray(values, dtype=complex)
    flat = values.ravel()
    return {
        "shape": list(values.shape),
        "data": np.stack([flat.real, flat.imag], axis=-1).tolist(),
    }


def array_from_document(document: Dict) -> np.ndarray:
    try:
        shape = tuple(int(s) for s in document["shape"])
        pairs = np.asarray(document["data"], dtype=float).reshape(-1, 2)
        return (pairs[:, 0] + 1j * pairs[:, 1]).reshape(shape)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Array inválido: {exc}") from exc


def _write(path, document: Dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=1, sort_keys=True) + "\n")
    return path


def _read(path) -> Dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(ERROR_MESSAGES["BAD_FILE"].format(path=path, detail=exc)) from exc


def write_frames(path, family: FrameFamily) -> Path:
    """Grava uma família de referenciais sobre uma Grid"""
    document = {
        "kind": "frames",
        "grid": family.domain.as_dict(),
        "lams": [[float(z.real), float(z.imag)] for z in family.lams],
        "normalized": bool(family.normalized),
        "values": array_to_document(family.frames),
    }
    return _write(path, document)


def read_frames(path) -> Tuple[FrameFamily, Dict]:
    document = _read(path)
    lams = [complex(re, im) for re, im in document["lams"]]
    family = FrameFamily(
        Grid.from_dict(document["grid"]),
        lams,
        array_from_document(document["values"]),
        normalized=document.get("normalized", True),
    )
    return family, {key: document[key] for key in ("kind", "meta") if key in document}
