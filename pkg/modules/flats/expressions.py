"""
Expressões fechadas em notação prefixa, avaliáveis em coordenadas complexas

Gramática:
    expr := número | coordenada | (const re [im])
          | (add e e ...) | (sub e e) | (mul e e ...) | (div e e) | (neg e)
          | (sin e) | (cos e) | (exp e) | (pow e k)      k inteiro

Exemplo: (mul (const 0.5) (cos v))

O texto vira uma expressão sympy; a avaliação usa lambdify sobre numpy.
"""
import json
import re
from functools import cached_property
from pathlib import Path
from typing import Callable, Dict, List, Sequence

import numpy as np
import sympy as sp

from modules.frames import ClosedFormConnection
from utils.constants import ERROR_MESSAGES
from utils.exceptions import ExpressionError, InputError

_TOKEN = re.compile(r"\(|\)|[^\s()]+")

_ARITY = {
    "add": (2, None),
    "mul": (2, None),
    "sub": (2, 2),
    "div": (2, 2),
    "neg": (1, 1),
    "sin": (1, 1),
    "cos": (1, 1),
    "exp": (1, 1),
    "pow": (2, 2),
}

_BUILD = {
    "add": lambda args: sp.Add(*args),
    "mul": lambda args: sp.Mul(*args),
    "sub": lambda args: args[0] - args[1],
    "div": lambda args: args[0] / args[1],
    "neg": lambda args: -args[0],
    "sin": lambda args: sp.sin(args[0]),
    "cos": lambda args: sp.cos(args[0]),
    "exp": lambda args: sp.exp(args[0]),
}


class Expression:
    """Expressão sympy com as coordenadas em ordem fixa"""

    def __init__(self, expr: sp.Expr, coordinates: Sequence[str] = ("u", "v")):
        self.expr = sp.sympify(expr)
        self.coordinates = tuple(coordinates)
        self.symbols = sp.symbols(self.coordinates)

    @cached_property
    def _function(self) -> Callable:
        return sp.lambdify(self.symbols, self.expr, modules="numpy")

    def evaluate(self, env: Dict[str, np.ndarray]) -> np.ndarray:
        """Avalia com as coordenadas em env (arrays reais ou complexos)"""
        args = [np.asarray(env[name]) if name in env else 0.0 for name in self.coordinates]
        return np.asarray(self._function(*args))

    def denominators(self) -> List["Expression"]:
        """Bases que aparecem com potência negativa"""
        bases = {p.base for p in self.expr.atoms(sp.Pow) if p.exp.is_negative}
        return [Expression(base, self.coordinates) for base in sorted(bases, key=sp.default_sort_key)]

    def coordinates_used(self) -> set:
        return {str(s) for s in self.expr.free_symbols}

    @property
    def is_zero(self) -> bool:
        return self.expr.is_zero is True

    def __eq__(self, other) -> bool:
        return isinstance(other, Expression) and self.expr == other.expr and self.coordinates == other.coordinates

    def __hash__(self) -> int:
        return hash((self.expr, self.coordinates))

    def __repr__(self) -> str:
        return f"Expression({self.expr})"


def _number(token: str) -> sp.Expr:
    if token.endswith("i"):
        value = complex(token.replace("i", "j"))
        return sp.Float(value.real) + sp.I * sp.Float(value.imag)
    return sp.Float(float(token))


def parse_expression(text: str, coordinates: Sequence[str] = ("u", "v")) -> Expression:
    """
    Converte texto prefixo em Expression

    Args:
        text: Expressão
        coordinates: Nomes das coordenadas aceitas

    Returns:
        Expression
    """
    tokens = _TOKEN.findall(str(text))
    if not tokens:
        raise ExpressionError(ERROR_MESSAGES["EXPRESSION_PARSE"].format(detail="expressão vazia"))
    symbols = {name: sp.Symbol(name) for name in coordinates}
    position = 0

    def fail(detail):
        raise ExpressionError(ERROR_MESSAGES["EXPRESSION_PARSE"].format(detail=f"{detail} em '{text}'"))

    def parse() -> sp.Expr:
        nonlocal position
        if position >= len(tokens):
            fail("fim inesperado")
        token = tokens[position]
        position += 1

        if token == ")":
            fail("')' inesperado")
        if token != "(":
            if token in symbols:
                return symbols[token]
            try:
                return _number(token)
            except ValueError:
                fail(f"símbolo desconhecido '{token}'")

        if position >= len(tokens):
            fail("fim inesperado")
        op = tokens[position]
        position += 1

        if op == "const":
            parts = []
            while position < len(tokens) and tokens[position] != ")":
                parts.append(tokens[position])
                position += 1
            if position >= len(tokens) or len(parts) not in (1, 2):
                fail("const espera 1 ou 2 números")
            position += 1
            try:
                re_part = float(parts[0])
                im_part = float(parts[1]) if len(parts) == 2 else 0.0
            except ValueError:
                fail("número inválido em const")
            return sp.Float(re_part) + sp.I * sp.Float(im_part) if im_part else sp.Float(re_part)

        if op not in _ARITY:
            fail(f"operador desconhecido '{op}'")
        args = []
        while position < len(tokens) and tokens[position] != ")":
            args.append(parse())
        if position >= len(tokens):
            fail("')' ausente")
        position += 1

        low, high = _ARITY[op]
        if len(args) < low or (high is not None and len(args) > high):
            fail(f"{op} recebeu {len(args)} argumento(s)")
        if op == "pow":
            exponent = args[1]
            if not (exponent.is_number and exponent.is_real and float(exponent) == int(float(exponent))):
                fail("pow espera expoente inteiro")
            return sp.Pow(args[0], sp.Integer(int(float(exponent))))
        return _BUILD[op](args)

    tree = parse()
    if position != len(tokens):
        fail("símbolos após o fim")
    return Expression(tree, coordinates)


class ExpressionConnection(ClosedFormConnection):
    """Conexão com coeficientes dados por expressões prefixas"""

    def __init__(
        self,
        coeffs: Dict[int, Sequence[Sequence[Sequence[str]]]],
        coordinates: Sequence[str] = ("u", "v"),
    ):
        """
        Args:
            coeffs: Mapa grau -> textos [eixo][linha][coluna]
            coordinates: Nomes das coordenadas, na ordem dos eixos
        """
        if not coeffs:
            raise InputError("Conexão sem coeficientes")
        self.coordinates = tuple(coordinates)
        self.source = {int(d): [[[str(e) for e in row] for row in axis] for axis in c] for d, c in coeffs.items()}
        first = next(iter(self.source.values()))
        m, n = len(first), len(first[0])
        super().__init__(n=n, m=m, degrees=self.source)
        if m != len(self.coordinates):
            raise InputError(f"{m} componentes para {len(self.coordinates)} coordenadas")

        self.trees: Dict[int, List[List[List[Expression]]]] = {}
        for degree, axes in self.source.items():
            if len(axes) != m or any(len(rows) != n or any(len(r) != n for r in rows) for rows in axes):
                raise InputError(f"Coeficiente de grau {degree} deve ter shape ({m}, {n}, {n})")
            self.trees[degree] = [
                [[parse_expression(text, self.coordinates) for text in row] for row in rows] for rows in axes
            ]

    def _env(self, points: np.ndarray) -> Dict[str, np.ndarray]:
        points = np.asarray(points)
        if points.shape[-1] != self.m:
            raise InputError(f"Pontos devem ter {self.m} coordenadas, recebido {points.shape[-1]}")
        return {name: points[..., j] for j, name in enumerate(self.coordinates)}

    def coefficients(self, points: np.ndarray) -> Dict[int, np.ndarray]:
        env = self._env(points)
        shape = np.shape(points)[:-1]
        result = {}
        for degree, axes in self.trees.items():
            values = np.zeros((self.m, *shape, self.n, self.n), dtype=complex)
            for j, rows in enumerate(axes):
                for r, row in enumerate(rows):
                    for c, tree in enumerate(row):
                        if not tree.is_zero:
                            values[(j, Ellipsis, r, c)] = tree.evaluate(env)
            result[degree] = values
        return result

    def denominators(self) -> List[Callable[[np.ndarray], np.ndarray]]:
        unique = {}
        for axes in self.trees.values():
            for rows in axes:
                for row in rows:
                    for tree in row:
                        for sub in tree.denominators():
                            unique[sub] = sub

        def bind(expression):
            return lambda points: np.broadcast_to(expression.evaluate(self._env(points)), np.shape(points)[:-1])

        return [bind(expression) for expression in unique.values()]

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "m": self.m,
            "coordinates": list(self.coordinates),
            "coeffs": {str(d): c for d, c in self.source.items()},
        }

    @classmethod
    def from_dict(cls, document: Dict) -> "ExpressionConnection":
        try:
            connection = cls(
                {int(d): c for d, c in document["coeffs"].items()},
                coordinates=tuple(document.get("coordinates", ("u", "v"))),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"Documento de conexão inválido: {exc}") from exc
        if "n" in document and int(document["n"]) != connection.n:
            raise InputError(f"n declarado {document['n']} difere do shape {connection.n}")
        return connection


def write_connection(path, connection: ExpressionConnection) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(connection.to_dict(), indent=1, sort_keys=True) + "\n")
    return path


def read_connection(path) -> ExpressionConnection:
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(ERROR_MESSAGES["BAD_FILE"].format(path=path, detail=exc)) from exc
    return ExpressionConnection.from_dict(document)


def zero_matrix_text(n: int) -> List[List[str]]:
    return [["0"] * n for _ in range(n)]
