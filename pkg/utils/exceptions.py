"""
Hierarquia de exceções do pacote

Cada exceção carrega a chave do código de saída da CLI (ver EXIT_CODES).
"""
from typing import List, Optional, Sequence, Tuple


class LoopFrameError(Exception):
    """Erro base do pacote"""

    exit_key = "INVARIANT_FAILURE"


class InputError(LoopFrameError, ValueError):
    """Entrada inválida (código de saída 2)"""

    exit_key = "BAD_INPUT"


class DomainError(InputError):
    """λ fora do domínio (λ = 0, λ = ±i, fora da faixa do caso)"""


class DimensionError(InputError):
    """Dimensões incompatíveis ou acima do limite"""


class InadmissibleCurvatureError(InputError):
    """Curvatura não admissível para a inserção de λ"""


class ExpressionError(InputError):
    """Erro de sintaxe ou avaliação de expressão"""


class StripSingularityError(InputError):
    """Singularidade da continuação analítica dentro da faixa"""

    def __init__(self, message: str, eps: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.eps = tuple(eps) if eps is not None else None


class DegenerateSurfaceError(InputError):
    """Superfície sem posto completo ou normal não completável"""


class IntegrabilityError(LoopFrameError):
    """Conexão não satisfaz a equação de Maurer-Cartan"""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class RealityError(LoopFrameError):
    """Parte imaginária acima da tolerância"""


class NonConstantRatioError(LoopFrameError):
    """Razão entre métricas induzidas não é constante"""


class ConvergenceError(LoopFrameError):
    """Decomposição ponto a ponto sem convergência (lista os pontos)"""

    def __init__(self, message: str, points: Optional[List[Tuple[int, ...]]] = None, residuals=None):
        super().__init__(message)
        self.points = list(points or [])
        self.residuals = list(residuals if residuals is not None else [])


class BigCellError(LoopFrameError):
    """Laço fora da grande célula (código de saída 3)"""

    exit_key = "BIG_CELL"

    def __init__(
        self,
        message: str,
        points: Optional[List[Tuple[int, ...]]] = None,
        conditions: Optional[List[float]] = None,
    ):
        super().__init__(message)
        self.points = list(points or [])
        self.conditions = list(conditions or [])
