"""
Suíte de invariantes executada por `verify`

Cada grupo é uma lista de funções check_*(config, report) que registram
resíduo × tolerância no relatório. Exceções viram falhas registradas, nunca
interrompem a suíte.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List

import numpy as np
from scipy.linalg import expm

from config.run_config import RunConfig
from config.settings import TOLERANCES
from modules.factorization import (
    birkhoff_split,
    circle_lambdas,
    column_residual,
    degree_one_dominance,
    dpw_backward,
    dpw_forward,
    gluing_residual,
    in_big_cell,
    pluriharmonic_extend,
    pluriharmonic_from_curved_flat,
    pluriharmonic_residual,
    tau_compatibility_residual,
    with_antiholomorphic_term,
)
from modules.factorization.circle import CircleSampling
from modules.flats import (
    ComplexStrip,
    CurvedFlatData,
    check_holomorphic,
    check_flat,
    curved_flat_from_eta,
    example_flat_connection,
    example_flat_frames,
    example_flat_matrices,
    extend_frame_holo,
)
from modules.frames import ConnectionFamily, Grid, integrate_family, mc_form, mc_residual
from modules.immersions import (
    CaseSpec,
    coframe_rank,
    column_of,
    evaluate_family,
    example_connection,
    example_connection_family,
    example_frame_family,
    example_mc_form,
    extract_adapted_frame,
    gauss_curvature_estimate,
    insert_for_case,
    metric_ratio,
    quadric_residual,
    second_fundamental_form_norm,
    surface_from_frames,
)
from modules.loopalg import (
    LaurentLoop,
    all_case_rows,
    apply_involution,
    apply_pointwise,
    case_catalog,
    conjugation_pair_residual,
    default_P,
    default_Q,
    fixed_residual,
    matrix_group_residual,
    mu,
    rho1,
    rho2,
    rho3,
    rho_hat3,
    sigma,
    tau1,
    tau2,
    tau3,
)
from utils.constants import LAMBDA_RANGES, VERIFY_GROUPS
from utils.helpers import max_abs, parse_lambda
from utils.logger import get_logger
from utils.report_generator import ReportGenerator

logger = get_logger(__name__)

Check = Callable[[RunConfig, ReportGenerator], None]

# limites fixos dos critérios de aceitação que não são tolerâncias configuráveis
FD_RECOVERY_TOLERANCE = 1e-3
GEODESIC_COORDINATE_TOLERANCE = 1e-12
NEGATIVE_CONTROL_FLOOR = 1e-2

# λ de prova por linha do caso 3 (faixas imaginária, real e círculo)
CURVATURE_PROBES = ((1, "0.5i"), (2, "2"), (3, "e^{0.3i}"))


def _rng(config: RunConfig, salt: int) -> np.random.Generator:
    return np.random.default_rng([config.seed, salt])


def _random_matrix(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))


def _random_lambda(rng: np.random.Generator, lambda_range: str) -> complex:
    """λ aleatório na faixa, longe de 0 e de ±i"""
    t = rng.uniform(0.3, 0.8) if rng.random() < 0.5 else rng.uniform(1.3, 3.0)
    if lambda_range == LAMBDA_RANGES["IMAGINARY"]:
        return complex(0, t if rng.random() < 0.5 else -t)
    if lambda_range == LAMBDA_RANGES["REAL"]:
        return complex(t if rng.random() < 0.5 else -t)
    angle = rng.uniform(-1.2, 1.2) + (np.pi if rng.random() < 0.5 else 0.0)
    return complex(np.exp(1j * angle))


def _patch_setup(config: RunConfig):
    """Bloco pequeno da família do exemplo nas amostras do círculo e sua faixa"""
    grid = Grid.create((9, 9), ((-0.15, 0.15), (-0.15, 0.15)))
    family = example_frame_family(grid, circle_lambdas(config.dpw_samples))
    strip = ComplexStrip.create(grid, config.strip_eps, config.imaginary_samples)
    return family, strip


# loopalg


def check_involution_actions(config: RunConfig, report: ReportGenerator):
    """Ação nos coeficientes = fórmula pontual e φ∘φ = id"""
    rng = _rng(config, 1)
    loop = LaurentLoop({d: _random_matrix(rng, 4) for d in range(-2, 3)})
    P, Q = default_P(2, 1), default_Q(2, 1)
    specs = [sigma(P), mu(Q), rho1(), rho2(), rho3(), rho_hat3(Q), tau1(P, Q), tau2(Q), tau3()]
    lams = rng.uniform(0.5, 2.0, 8) * np.exp(2j * np.pi * rng.random(8))

    order_two = max(apply_involution(s, apply_involution(s, loop)).coefficient_distance(loop) for s in specs)
    pointwise = max(
        max_abs(apply_involution(s, loop).evaluate(lam) - apply_pointwise(s, loop, lam)) for s in specs for lam in lams
    )
    report.add_check("involuções de ordem 2", "loopalg", order_two, TOLERANCES["involution"])
    report.add_check("ação nos coeficientes = fórmula pontual", "loopalg", pointwise, TOLERANCES["involution"])


def check_catalog_pairs(config: RunConfig, report: ReportGenerator):
    """T Ĵ T = ±J para as 12 linhas"""
    worst = max(conjugation_pair_residual(row.T, row.J_hat, row.J) for row in all_case_rows())
    report.add_check("pares (T, Ĵ) do catálogo", "loopalg", worst, TOLERANCES["involution"])


def _fixed_lie_loop(rng: np.random.Generator, row) -> LaurentLoop:
    """Laço em 𝔰𝔬(J) de graus −1..1 fixo por σ, μ e ρ da linha"""
    J = row.J.vector
    coeffs = {}
    for degree in (-1, 0, 1):
        X = _random_matrix(rng, row.n, 0.3)
        coeffs[degree] = 0.5 * (X - J[:, None] * X.T * J[None, :])
    loop = LaurentLoop(coeffs)
    for spec in (sigma(row.P), mu(row.Q), row.rho):
        loop = (loop + apply_involution(spec, loop)).scale(0.5)
    return loop


def check_table_coverage(config: RunConfig, report: ReportGenerator):
    """Ad_T F ∈ SO(Ĵ) e coluna real na faixa de cada linha"""
    rng = _rng(config, 2)
    group, reality, fixed = 0.0, 0.0, 0.0
    for row in all_case_rows():
        loop = _fixed_lie_loop(rng, row)
        lams = [_random_lambda(rng, row.lambda_range) for _ in range(4)]
        fixed = max(fixed, max(fixed_residual(s, loop, lams) for s in (sigma(row.P), mu(row.Q), row.rho)))
        t = np.asarray(row.T, dtype=complex)
        for lam in lams:
            F = expm(loop.evaluate(lam))
            transformed = t[:, None] * F / t[None, :]
            group = max(group, matrix_group_residual(transformed, row.J_hat))
            reality = max(reality, max_abs(column_of(F, row.T, row.m).imag))
    report.add_check("laços de teste fixos por σ, μ, ρ", "loopalg", fixed, TOLERANCES["involution"])
    report.add_check("Ad_T F no grupo de Ĵ (todas as linhas)", "loopalg", group, TOLERANCES["group"])
    report.add_check("colunas reais na faixa de λ (todas as linhas)", "loopalg", reality, TOLERANCES["reality"])


# frames


def check_example_mc_form(config: RunConfig, report: ReportGenerator):
    """Expressões da forma de Maurer-Cartan do exemplo = F⁻¹dF analítico"""
    rng = _rng(config, 3)
    connection = example_connection()
    worst = 0.0
    for _ in range(20):
        u, v = rng.uniform(-1.0, 1.0, 2)
        lam = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.random())
        expected = np.stack(example_mc_form(u, v, lam))
        values = connection.evaluate(np.array([[u, v]]), lam)[:, 0]
        worst = max(worst, max_abs(values - expected))
    report.add_check("forma de Maurer-Cartan do exemplo", "frames", worst, 1e-10)


def check_mc_recovery(config: RunConfig, report: ReportGenerator):
    """Diferenças finitas numa grade 128² recuperam a forma exata"""
    grid = Grid.create((128, 128), ((-1.0, 1.0), (-1.0, 1.0)))
    lam = np.exp(0.3j)
    family = example_frame_family(grid, [lam])
    recovered = mc_form(family.frames[0], grid, accuracy=4).components
    exact = example_connection_family(grid).evaluate(lam).components
    report.add_check("recuperação por diferenças finitas (128²)", "frames", max_abs(recovered - exact), FD_RECOVERY_TOLERANCE)


def check_integrator(config: RunConfig, report: ReportGenerator):
    """Integração Magnus do exemplo contra o referencial fechado"""
    grid = Grid.create((33, 33), ((-0.5, 0.5), (-0.5, 0.5)))
    lams = [1.0, np.exp(0.3j), 2.0, 0.5j]
    connection = example_connection_family(grid)
    integrability = max(mc_residual(connection, lam, "analytic") for lam in lams)
    numeric = integrate_family(connection, lams, signature=case_catalog(3, 3).J)
    exact = example_frame_family(grid, lams)
    report.add_check("Maurer-Cartan analítico do exemplo", "frames", integrability, TOLERANCES["mc_threshold"])
    report.add_check("integrador vs referencial fechado", "frames", max_abs(numeric.frames - exact.frames), TOLERANCES["frame_oracle"])


# immersions


def _example_surface(grid: Grid, row: int, lam: complex):
    return evaluate_family(example_frame_family(grid, [lam]), lam, CaseSpec(3, row))


def check_normalization(config: RunConfig, report: ReportGenerator):
    """f^λ(0, 0) = e_m para λ admissíveis aleatórios"""
    rng = _rng(config, 4)
    grid = Grid.create((5, 5), ((-1.0, 1.0), (-1.0, 1.0)))
    target = np.zeros(4)
    target[2] = 1.0
    worst = 0.0
    for _ in range(20):
        row = int(rng.integers(1, 4))
        lam = _random_lambda(rng, case_catalog(3, row).lambda_range)
        surface = _example_surface(grid, row, lam)
        worst = max(worst, max_abs(surface.points[grid.base_index] - target))
    report.add_check("normalização f(0, 0) = e_m", "immersions", worst, 1e-12)


def check_curvature_and_quadric(config: RunConfig, report: ReportGenerator):
    """Curvatura 4/(λ+λ⁻¹)² com sinal da linha e pertinência à quádrica"""
    grid = config.make_grid()
    for row, text in CURVATURE_PROBES:
        lam = parse_lambda(text)
        surface = _example_surface(grid, row, lam)
        expected = case_catalog(3, row).curvature(lam)
        estimate = gauss_curvature_estimate(surface)
        report.add_check(
            f"curvatura linha {row} (λ = {text})", "immersions", estimate.relative_error(expected), TOLERANCES["curvature_rel"]
        )
        report.add_check(f"quádrica linha {row} (λ = {text})", "immersions", quadric_residual(surface), TOLERANCES["quadric"])


def check_metric_ratio(config: RunConfig, report: ReportGenerator):
    """g(e^{0.3i}) = cos²(0.3)·g(1) e posto do coreferencial independente de λ"""
    grid = config.make_grid()
    connection = example_connection_family(grid)
    ratio = metric_ratio(connection, 1.0, np.exp(0.3j), CaseSpec(3, 3))
    expected = np.cos(0.3) ** 2
    report.add_check("razão de métricas cos²(0.3)", "immersions", abs(ratio - expected) / expected, TOLERANCES["metric_ratio_rel"])

    rng = _rng(config, 5)
    lams = [1.0, np.exp(0.3j), 2.0, 0.5j]
    mismatches = 0
    for _ in range(100):
        index = tuple(int(rng.integers(1, size - 1)) for size in grid.shape)
        ranks = {coframe_rank(connection, lam, index) for lam in lams}
        mismatches += int(ranks != {grid.m})
    report.add_check("posto do coreferencial independente de λ", "immersions", mismatches, 0.0)


def check_totally_geodesic_endpoint(config: RunConfig, report: ReportGenerator):
    """Em λ = 1: quarta coordenada nula e segunda forma fundamental nula"""
    surface = _example_surface(config.make_grid(), 3, 1.0)
    report.add_check("λ = 1: quarta coordenada", "immersions", max_abs(surface.points[..., 3]), GEODESIC_COORDINATE_TOLERANCE)
    report.add_check(
        "λ = 1: segunda forma fundamental", "immersions", second_fundamental_form_norm(surface), TOLERANCES["totally_geodesic"]
    )


def check_insertion_round_trip(config: RunConfig, report: ReportGenerator):
    """Extração em λ₀ (c = 0.5), inserção, reintegração e reavaliação"""
    grid = Grid.create((65, 65), ((-0.5, 0.5), (-0.5, 0.5)))
    spec = CaseSpec(3, 2, c=0.5)
    lam0 = spec.lambda0.real
    surface = evaluate_family(example_frame_family(grid, [lam0]), lam0, spec)
    data = extract_adapted_frame(surface)
    family = integrate_family(insert_for_case(data, spec), [lam0], signature=spec.record.J)
    rebuilt = data.restore(surface_from_frames(family.frames[0], grid, spec, lam0))
    report.add_check("ida e volta da inserção de λ (c = 0.5)", "immersions", max_abs(rebuilt.points - surface.points), TOLERANCES["roundtrip"])


# flats


def check_example_flat(config: RunConfig, report: ReportGenerator):
    """Plano curvo de referência: 𝔭 e realidade de η, equações e integração contra exp(λ(φ₁N₁ + φ₂N₂))"""
    grid = Grid.create((33, 33), ((-0.5, 0.5), (-0.5, 0.5)))
    lams = circle_lambdas(8)
    worst_involution, worst_flat, worst_frames = 0.0, 0.0, 0.0
    for twisted, rho in ((False, rho2()), (True, rho_hat3(default_Q(2, 1)))):
        closed = example_flat_connection(twisted)
        data = CurvedFlatData.from_closed_form(closed, grid, default_P(2, 1), rho)
        worst_involution = max(worst_involution, *data.validate())
        worst_flat = max(worst_flat, *check_flat(ConnectionFamily.from_closed_form(closed, grid)))
        family = curved_flat_from_eta(data, lams)
        exact = np.stack([example_flat_frames(grid.points, lam, twisted) for lam in lams])
        worst_frames = max(worst_frames, max_abs(family.frames - exact))
    report.add_check("η em 𝔭 e fixa por ρ", "flats", worst_involution, TOLERANCES["involution"])
    report.add_check("equações de plano curvo", "flats", worst_flat, TOLERANCES["mc_threshold"])
    report.add_check("plano curvo vs referencial exato", "flats", worst_frames, TOLERANCES["frame_oracle"])


def check_holomorphic_extension(config: RunConfig, report: ReportGenerator):
    """Extensão holomorfa do plano curvo na faixa: Cauchy-Riemann e referencial exato"""
    grid = Grid.create((9, 9), ((-0.15, 0.15), (-0.15, 0.15)))
    strip = ComplexStrip.create(grid, config.strip_eps, config.imaginary_samples)
    lams = circle_lambdas(8)
    family = extend_frame_holo(example_flat_connection(), strip, lams)
    exact = np.stack([example_flat_frames(strip.points, lam) for lam in lams])
    residual, limit = check_holomorphic(family.frames, strip, lead=1)
    report.add_check("Cauchy-Riemann da extensão", "flats", residual, limit)
    report.add_check("extensão holomorfa vs exata", "flats", max_abs(family.frames - exact), TOLERANCES["frame_oracle"])


# factorization


def _sl2_factors():
    plus = LaurentLoop({0: np.eye(2), 1: np.array([[0.0, 1.0], [0.0, 0.0]])})
    minus = LaurentLoop({0: np.array([[2.0, 0.0], [0.0, 0.5]]), -1: np.array([[0.0, 0.0], [0.5, 0.0]])})
    return plus, minus


def check_birkhoff(config: RunConfig, report: ReportGenerator):
    """Fatores conhecidos de um laço de SL₂, identidade e diag(λ, λ⁻¹)"""
    plus, minus = _sl2_factors()
    result = birkhoff_split(plus @ minus)
    N = result.plus_factor.N
    factors = max(
        result.plus_factor.distance(CircleSampling.from_loop(plus, N)),
        result.minus_factor.distance(CircleSampling.from_loop(minus, N)),
    )
    report.add_check("SL₂: fatores conhecidos", "factorization", factors, TOLERANCES["birkhoff"])
    report.add_check("SL₂: suporte dos fatores", "factorization", max(result.plus_support, result.minus_support), TOLERANCES["support"])

    right = birkhoff_split(minus @ plus, side="right")
    report.add_check("SL₂: fatoração à direita", "factorization", right.residual, TOLERANCES["birkhoff"])

    identity = birkhoff_split(LaurentLoop.identity(3))
    report.add_check("identidade = I·I", "factorization", max(identity.residual, identity.normalization), TOLERANCES["birkhoff"])

    inside, _ = in_big_cell(LaurentLoop({1: np.diag([1.0, 0.0]), -1: np.diag([0.0, 1.0])}))
    report.add_check("diag(λ, λ⁻¹) fora da grande célula", "factorization", float(inside), 0.0)


def check_dpw(config: RunConfig, report: ReportGenerator):
    """Ida e volta DPW, dominância do grau 1 e compatibilidade com τ"""
    family, _ = _patch_setup(config)
    tau = case_catalog(3, 3).tau
    plus = dpw_forward(family, config.bandwidth)
    back = dpw_backward(plus, tau, config.bandwidth)
    report.add_check("dominância do grau 1 em F₊", "factorization", degree_one_dominance(plus), TOLERANCES["dpw_dominance"])
    report.add_check("ida e volta DPW (coluna m)", "factorization", column_residual(back.frames, family.frames, 2), TOLERANCES["roundtrip"])
    report.add_check(
        "fator à direita = τ(F₊)", "factorization", tau_compatibility_residual(family, tau, config.bandwidth), TOLERANCES["roundtrip"]
    )


def check_extension(config: RunConfig, report: ReportGenerator):
    """Extensão pluriharmônica do exemplo, controle negativo e colagem"""
    family, strip = _patch_setup(config)
    spec = CaseSpec(3, 3)
    result = pluriharmonic_extend(family, spec, strip, bandwidth=config.bandwidth)
    report.add_check("pluriharmonicidade ‖A₁''‖", "factorization", result.pluriharmonic, TOLERANCES["pluriharmonic"])
    report.add_check("relação conjugada A₋₁'' = τ(A₁')", "factorization", result.conjugate, TOLERANCES["pluriharmonic"])
    report.add_check("realidade em M", "factorization", result.reality_on_m, TOLERANCES["reality_on_m"])
    report.add_check("coluna m no corte real", "factorization", result.column_residual, TOLERANCES["roundtrip"])

    generator = example_flat_matrices()[0]
    injected = with_antiholomorphic_term(result.family, generator)
    report.add_check(
        "controle negativo (termo anti-holomorfo)",
        "factorization",
        pluriharmonic_residual(injected, spec.record.tau),
        NEGATIVE_CONTROL_FLOOR,
        expect_above=True,
    )

    base = strip.grid.base_index
    other = tuple(i + 2 for i in base)
    glued = gluing_residual(family, spec, result.strip, base, other, bandwidth=config.bandwidth)
    report.add_check("colagem entre pontos base", "factorization", glued, TOLERANCES["gluing"])


def check_flat_extension(config: RunConfig, report: ReportGenerator):
    """Plano curvo → mapa pluriharmônico"""
    grid = Grid.create((9, 9), ((-0.15, 0.15), (-0.15, 0.15)))
    strip = ComplexStrip.create(grid, config.strip_eps, config.imaginary_samples)
    family = pluriharmonic_from_curved_flat(example_flat_connection(), strip, lams=circle_lambdas(config.dpw_samples))
    report.add_check(
        "plano curvo: pluriharmonicidade", "factorization", pluriharmonic_residual(family, tau3()), TOLERANCES["pluriharmonic"]
    )


CHECKS: Dict[str, List[Check]] = {
    "loopalg": [check_involution_actions, check_catalog_pairs, check_table_coverage],
    "frames": [check_example_mc_form, check_mc_recovery, check_integrator],
    "immersions": [
        check_normalization,
        check_curvature_and_quadric,
        check_metric_ratio,
        check_totally_geodesic_endpoint,
        check_insertion_round_trip,
    ],
    "flats": [check_example_flat, check_holomorphic_extension],
    "factorization": [check_birkhoff, check_dpw, check_extension, check_flat_extension],
}


def _run_group(config: RunConfig, group: str) -> ReportGenerator:
    local = ReportGenerator(group)
    for check in CHECKS[group]:
        logger.info("verificando %s.%s", group, check.__name__)
        try:
            check(config, local)
        except Exception as exc:
            logger.debug("falha em %s", check.__name__, exc_info=True)
            local.add_failure(check.__name__, group, f"{type(exc).__name__}: {exc}")
    return local


def run_suite(config: RunConfig, report: ReportGenerator) -> ReportGenerator:
    """
    Executa os grupos pedidos (até config.threads em paralelo)

    A ordem das verificações no relatório segue VERIFY_GROUPS, qualquer que
    seja a ordem de término.
    """
    groups = [group for group in VERIFY_GROUPS if group in config.groups]
    with ThreadPoolExecutor(max_workers=max(1, min(config.threads, len(groups) or 1))) as pool:
        results = list(pool.map(lambda group: _run_group(config, group), groups))
    for local in results:
        report.checks.extend(local.checks)
    return report
