"""
Constantes utilizadas em todo o pacote
"""

# Códigos de saída da CLI
EXIT_CODES = {
    "OK": 0,
    "INVARIANT_FAILURE": 1,
    "BAD_INPUT": 2,
    "BIG_CELL": 3,
}

# Tipos de involução suportados
INVOLUTION_KINDS = {
    "SIGMA": "sigma",
    "MU": "mu",
    "RHO1": "rho1",
    "RHO2": "rho2",
    "RHO3": "rho3",
    "RHO_HAT3": "rho_hat3",
    "TAU1": "tau1",
    "TAU2": "tau2",
    "TAU3": "tau3",
}

# Faixas de λ (linhas das tabelas de casos)
LAMBDA_RANGES = {
    "IMAGINARY": "imaginary",  # iR* \ {±i}
    "REAL": "real",            # R*
    "CIRCLE": "circle",        # S¹ \ {±i}
}

# Lados da fatoração de Birkhoff
SPLIT_SIDES = {
    "LEFT": "left",    # L = L+ L-, L+(0) = I
    "RIGHT": "right",  # L = L- L+, L-(∞) = I
}

# Formatos de exportação
EXPORT_FORMATS = {
    "CSV": "csv",
    "OBJ": "obj",
    "VTK": "vtk",
}

# Grupos de verificação da suíte `verify`
VERIFY_GROUPS = ["loopalg", "frames", "immersions", "flats", "factorization"]

# Mensagens de erro
ERROR_MESSAGES = {
    "ZERO_LAMBDA": "❌ λ = 0 não pertence ao domínio de um laço com graus negativos.",
    "DIMENSION_MISMATCH": "❌ Dimensões incompatíveis: esperado {expected}, recebido {got}.",
    "DIMENSION_CAP": "❌ Dimensão n = {n} excede o limite de {cap}.",
    "DEGREE_CAP": "❌ Grau {degree} fora do intervalo permitido [{lo}, {hi}].",
    "NON_FINITE": "❌ Valores não finitos (NaN/Inf) detectados.",
    "UNKNOWN_INVOLUTION": "❌ Involução desconhecida: {kind}.",
    "MISSING_MATRIX": "❌ A involução {kind} requer a matriz {name}.",
    "SINGULAR_T": "❌ Matriz de conjugação T singular.",
    "INVALID_CASE": "❌ Caso/linha inválidos: caso {case}, linha {row}.",
    "LAMBDA_OUT_OF_RANGE": "❌ λ = {lam} fora da faixa '{range}' do caso {case}, linha {row}.",
    "LAMBDA_EXCLUDED": "❌ λ = {lam} excluído: o coreferencial se anula em λ = ±i (f não é imersão).",
    "NON_INTEGRABLE": "❌ Conexão não integrável: resíduo de Maurer-Cartan {residual:.3e} > {threshold:.3e}.",
    "NOT_HOLOMORPHIC": "❌ Extensão não holomorfa: resíduo de Cauchy-Riemann {residual:.3e} > {threshold:.3e}.",
    "SINGULAR_FRAME": "❌ Referencial singular no ponto {point}.",
    "INADMISSIBLE_CURVATURE": "❌ Curvatura c = {c} inadmissível para inserção (ε = {eps}).",
    "TOTALLY_GEODESIC": "❌ c = 1: imersão totalmente geodésica, não é possível inserir λ.",
    "REALITY_VIOLATION": "❌ Parte imaginária {imag:.3e} acima da tolerância {tol:.3e} (caso/involução incorretos?).",
    "NOT_FIXED_BY_INVOLUTION": "❌ Família não fixada por {kind} (resíduo {residual:.3e} > {tol:.3e}).",
    "DEGENERATE_SURFACE": "❌ Superfície degenerada: espaço tangente com posto deficiente em {point}.",
    "NORMAL_COMPLETION": "❌ Complemento normal não ortonormalizável em {point}.",
    "NON_CONSTANT_RATIO": "❌ Razão de métricas não constante (variação relativa {spread:.3e}).",
    "NON_PROPORTIONAL_METRIC": "❌ Métricas não proporcionais no ponto {index} (desvio relativo {mismatch:.3e}).",
    "EXPRESSION_PARSE": "❌ Expressão inválida: {detail}.",
    "STRIP_SINGULARITY": "❌ Singularidade dentro da faixa ε = {eps}; tente reduzir ε pela metade.",
    "STRIP_RESOLUTION": "❌ A faixa precisa de pelo menos {needed} amostras imaginárias por eixo.",
    "BIG_CELL": "❌ Fora da grande célula em {count} ponto(s); primeiro ponto {point}, condição {condition:.3e}.",
    "NOT_CLOSED": "❌ Amostras de λ não fechadas sob {kind}: falta λ = {lam}.",
    "CONVERGENCE": "❌ Decomposição de Iwasawa sem convergência em {count} ponto(s); primeiro ponto {point}, resíduo {residual:.3e}.",
    "BAD_LAMBDA": "❌ Não foi possível interpretar λ = '{text}'.",
    "BAD_GRID": "❌ Não foi possível interpretar a grade '{text}' (use LxA, ex. 64x64).",
    "BAD_CONFIG": "❌ Configuração inválida: {detail}.",
    "BAD_FILE": "❌ Arquivo inválido '{path}': {detail}.",
    "UNDER_RESOLVED": "❌ Amostragem insuficiente: N = {n} < 4 × largura de banda {bandwidth}.",
    "SPECTRAL_UNDER_RESOLVED": "❌ Cauda espectral {tail:.3e} acima de {limit:.3e} com N = {n} amostras de λ: aumente a amostragem no círculo.",
}

# Mensagens de sucesso
SUCCESS_MESSAGES = {
    "EXAMPLE_WRITTEN": "✅ Superfície do exemplo gravada em {path}.",
    "VERIFY_PASSED": "✅ Todas as {count} verificações passaram.",
    "SPLIT_WRITTEN": "✅ Fatores gravados em {paths}.",
    "EXTEND_WRITTEN": "✅ Extensão pluriharmônica gravada em {path}.",
}

# Mensagens de aviso
WARNING_MESSAGES = {
    "DEGENERATE_POINTS": "⚠️ {count} ponto(s) degenerado(s) ignorado(s) na estimativa de curvatura.",
    "SPECTRAL_TAIL": "⚠️ Cauda espectral {tail:.3e} acima de {tol:.3e}: amostragem no círculo possivelmente insuficiente.",
    "STRIP_HALVED": "⚠️ Faixa reduzida para ε = {eps} após {halvings} redução(ões).",
    "PROJECTION_SKIPPED": "⚠️ Conexão fora da álgebra de Lie de J; projeção no grupo desativada.",
    "VERIFY_FAILED": "⚠️ {failed} de {count} verificações falharam.",
    "PATCH_MODE": "⚠️ Falha da grande célula a partir do ponto base; usando renormalização por blocos.",
}
