"""
Comandos da CLI: example, verify, split e extend

Cada comando recebe a RunConfig já validada e devolve o código de saída.
Relatórios vão para stdout; mensagens de erro e avisos para stderr.
"""
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from config.run_config import RunConfig, load_config, tolerances_applied
from config.settings import EXTEND_CONFIG, TOLERANCES
from modules.cli.parser import build_parser, overrides_from_args
from modules.cli.verify_suite import run_suite
from modules.export import export_surface, strip_to_vtk
from modules.factorization import birkhoff_split, circle_lambdas, pluriharmonic_extend, totally_geodesic_candidate
from modules.flats import ComplexStrip, read_connection
from modules.frames import ConnectionFamily, integrate_family, write_frames
from modules.immersions import (
    CaseSpec,
    evaluate_family,
    example_frame_family,
    extract_adapted_frame,
    gauss_curvature_estimate,
    insert_for_case,
    quadric_residual,
    surface_from_frames,
)
from modules.loopalg import read_loop, write_loop
from utils.constants import EXIT_CODES, SUCCESS_MESSAGES, WARNING_MESSAGES
from utils.exceptions import BigCellError, DegenerateSurfaceError, InputError, LoopFrameError
from utils.helpers import format_complex, lambda_key, max_abs
from utils.logger import get_logger, setup_logging
from utils.report_generator import ReportGenerator

logger = get_logger(__name__)


def _exit_code(report: ReportGenerator) -> int:
    return EXIT_CODES["OK"] if report.passed else EXIT_CODES["INVARIANT_FAILURE"]


def _report_path(out) -> Path:
    path = Path(out)
    return path.with_name(path.stem + ".report.json")


def _finish(report: ReportGenerator, config: RunConfig):
    """Imprime o relatório e o resumo de aprovação"""
    print(report.generate_markdown_report())
    if config.diagnostics and report.checks:
        print(report.generate_summary_table().to_string(index=False))
    if report.passed:
        print(SUCCESS_MESSAGES["VERIFY_PASSED"].format(count=len(report.checks)))
    else:
        print(
            WARNING_MESSAGES["VERIFY_FAILED"].format(failed=len(report.failed_checks), count=len(report.checks)),
            file=sys.stderr,
        )


def _surface_path(out, fmt: str, lam: complex, several: bool) -> Path:
    """Caminho de saída; com vários λ, um arquivo por λ"""
    path = Path(out)
    if not path.suffix:
        path = path.with_suffix(f".{fmt}")
    if several:
        tag = format_complex(lam, 4).replace(".", "p").replace("+", "_").replace("-", "m")
        path = path.with_name(f"{path.stem}_lam{tag}{path.suffix}")
    return path


def _example_lambdas(config: RunConfig, spec: CaseSpec) -> List[complex]:
    """λ pedidos; com --c, λ₀ da curvatura entra (sozinho se nenhum λ foi dado)"""
    lams = config.lambda_values() if config.lambdas or spec.c is None else []
    if spec.c is not None and not any(lambda_key(lam) == lambda_key(spec.lambda0) for lam in lams):
        lams.append(spec.lambda0)
    return lams


def _insertion_round_trip(surface, spec: CaseSpec, grid) -> float:
    """Extrai (ω, θ, β, η), insere λ₀, reintegra e compara os pontos"""
    lam0 = spec.lambda0
    data = extract_adapted_frame(surface)
    family = integrate_family(insert_for_case(data, spec), [lam0], signature=spec.record.J)
    rebuilt = data.restore(surface_from_frames(family.frames[0], grid, spec, lam0))
    return max_abs(rebuilt.points - surface.points)


def cmd_example(config: RunConfig) -> int:
    """Superfície do exemplo do caso 3 em cada λ com curvatura e quádrica"""
    if config.case != 3:
        raise InputError(f"O exemplo fechado existe apenas para o caso 3 (recebido caso {config.case})")
    spec = CaseSpec(3, config.row, config.c)
    grid = config.make_grid()
    lams = _example_lambdas(config, spec)
    family = example_frame_family(grid, lams)
    report = ReportGenerator(
        "example",
        context={"case": 3, "row": config.row, "grid": config.grid, "lambdas": [format_complex(lam) for lam in lams]},
    )
    if spec.c is not None:
        report.add_value("λ₀ da curvatura c", format_complex(spec.lambda0))

    for lam in lams:
        label = format_complex(lam, 4)
        surface = evaluate_family(family, lam, spec)
        estimate = gauss_curvature_estimate(surface)
        expected = spec.record.curvature(lam)
        report.add_check(
            f"curvatura (λ = {label})", "immersions", estimate.relative_error(expected), TOLERANCES["curvature_rel"]
        )
        report.add_check(f"quádrica (λ = {label})", "immersions", quadric_residual(surface), TOLERANCES["quadric"])
        report.add_value(f"curvatura esperada 4/(λ+λ⁻¹)² (λ = {label})", float(expected))
        if estimate.interior.size:
            report.add_value(f"curvatura mediana estimada (λ = {label})", float(np.median(estimate.interior)))
        if estimate.degenerate:
            lines = sorted({round(float(grid.axes[1][index[1]]), 12) for index in estimate.degenerate})
            report.add_value(f"linhas degeneradas v (λ = {label})", lines)
        if spec.c is not None and lambda_key(lam) == lambda_key(spec.lambda0):
            try:
                residual = _insertion_round_trip(surface, spec, grid)
            except DegenerateSurfaceError as exc:
                report.add_note(f"ida e volta pela inserção omitida: {exc}")
            else:
                report.add_check(
                    f"ida e volta pela inserção (λ₀ = {label})", "immersions", residual, TOLERANCES["roundtrip"]
                )

        if config.out:
            fmt = config.export_format()
            path = export_surface(surface, _surface_path(config.out, fmt, lam, len(lams) > 1), fmt)
            print(SUCCESS_MESSAGES["EXAMPLE_WRITTEN"].format(path=path))

    if config.out:
        out = Path(config.out)
        frames_path = write_frames(out.with_name(out.stem + "_frames.json"), family)
        print(SUCCESS_MESSAGES["EXAMPLE_WRITTEN"].format(path=frames_path))

    _finish(report, config)
    if config.out:
        report.write(_report_path(config.out))
    return _exit_code(report)


def cmd_verify(config: RunConfig) -> int:
    """Suíte de invariantes dos grupos pedidos"""
    report = ReportGenerator("verify", context={"seed": config.seed, "grid": config.grid, "groups": list(config.groups)})
    run_suite(config, report)
    _finish(report, config)
    if config.out:
        report.write(config.out)
    return _exit_code(report)


def _factor_paths(config: RunConfig) -> Dict[str, Path]:
    source = Path(config.out or config.input)
    stem = source.with_suffix("") if source.suffix else source
    return {factor: stem.with_name(f"{stem.name}_{factor}.json") for factor in ("plus", "minus")}


def cmd_split(config: RunConfig) -> int:
    """Fatoração de Birkhoff de um arquivo de laço"""
    if not config.input:
        raise InputError("split exige um arquivo de laço")
    loop, header = read_loop(config.input)
    result = birkhoff_split(loop, side=config.side, bandwidth=config.bandwidth)
    scale = max(1.0, max(float(np.max(np.abs(c))) for c in loop.coeffs.values()))

    report = ReportGenerator("split", context={"input": str(config.input), "side": config.side, "n": loop.n})
    report.add_check("resíduo L − fatores", "factorization", result.residual, TOLERANCES["birkhoff"] * scale)
    report.add_check("suporte do fator normalizado", "factorization", result.plus_support, TOLERANCES["support"])
    report.add_check("suporte do fator oposto", "factorization", result.minus_support, TOLERANCES["support"])
    report.add_check("normalização", "factorization", result.normalization, TOLERANCES["birkhoff"])
    report.add_value("condição máxima", result.max_condition)

    meta = {"side": config.side, **({"source": header["meta"]} if "meta" in header else {})}
    paths = _factor_paths(config)
    write_loop(paths["plus"], result.plus_loop(), factor="plus", meta=meta)
    write_loop(paths["minus"], result.minus_loop(), factor="minus", meta=meta)
    print(SUCCESS_MESSAGES["SPLIT_WRITTEN"].format(paths=", ".join(str(p) for p in paths.values())))

    _finish(report, config)
    if config.diagnostics:
        print(json.dumps({"split": result.as_dict(), "points": result.diagnostics()}, indent=1, sort_keys=True))
    return _exit_code(report)


def _extension_family(config: RunConfig, spec: CaseSpec):
    """Família de entrada nas amostras do círculo: conexão do arquivo ou exemplo"""
    grid = config.make_grid()
    lams = circle_lambdas(config.dpw_samples)
    if config.input:
        connection = ConnectionFamily.from_closed_form(read_connection(config.input), grid)
        return integrate_family(connection, lams, signature=spec.record.J)
    if config.case != 3:
        raise InputError("Sem arquivo de conexão, extend usa o exemplo do caso 3")
    return example_frame_family(grid, lams)


def cmd_extend(config: RunConfig) -> int:
    """Extensão pluriharmônica na faixa complexa e verificações associadas"""
    spec = CaseSpec(config.case, config.row)
    family = _extension_family(config, spec)
    strip = ComplexStrip.create(family.domain, config.strip_eps, config.imaginary_samples)
    result = pluriharmonic_extend(family, spec, strip, bandwidth=config.bandwidth, patch_size=config.patch_size)

    report = ReportGenerator(
        "extend",
        context={"case": spec.case, "row": spec.row, "grid": config.grid, "input": config.input or "exemplo caso 3"},
    )
    report.add_check("pluriharmonicidade ‖A₁''‖", "factorization", result.pluriharmonic, TOLERANCES["pluriharmonic"])
    report.add_check("relação conjugada", "factorization", result.conjugate, TOLERANCES["pluriharmonic"])
    report.add_check("realidade em M", "factorization", result.reality_on_m, TOLERANCES["reality_on_m"])
    report.add_check("coluna recuperada em M", "factorization", result.column_residual, TOLERANCES["roundtrip"])
    report.add_value("espaço simétrico", result.symmetric_space)
    report.add_value("ε da faixa", list(result.strip.eps))
    report.add_value("blocos", len(result.patches) or 1)
    report.add_value("resíduo do mergulho de Cartan", result.cartan_residual)
    if config.diagnostics and spec.case in (2, 3):
        candidate = totally_geodesic_candidate(family, spec, strip)
        report.add_note(f"candidato totalmente geodésico: {json.dumps(candidate.as_dict(), sort_keys=True)}")

    if config.out:
        lam = EXTEND_CONFIG["frames_lambda"]
        path = strip_to_vtk(result.family, lam, spec, Path(config.out).with_suffix(".vtk"))
        frames_path = path.with_name(path.stem + "_frames.npz")
        np.savez_compressed(frames_path, frames=result.family.frame_at(lam), points=result.strip.points, lam=lam)
        print(SUCCESS_MESSAGES["EXTEND_WRITTEN"].format(path=path))

    _finish(report, config)
    if config.out:
        report.write(_report_path(config.out))
    return _exit_code(report)


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "example": cmd_example,
    "verify": cmd_verify,
    "split": cmd_split,
    "extend": cmd_extend,
}


def command_defaults(command: str) -> RunConfig:
    """Padrões por comando antes do arquivo de configuração e das flags"""
    if command == "extend":
        return RunConfig(grid=EXTEND_CONFIG["grid"], ranges=[list(r) for r in EXTEND_CONFIG["ranges"]])
    return RunConfig()


def _print_big_cell(exc: BigCellError):
    print(str(exc), file=sys.stderr)
    for point, condition in zip(exc.points, exc.conditions):
        print(f"  ponto {tuple(point)}: condição {condition:.3e}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Ponto de entrada da CLI

    Returns:
        0 sucesso, 1 invariante violado, 2 entrada inválida, 3 fora da grande célula
    """
    args = build_parser().parse_args(argv)
    setup_logging("DEBUG" if args.debug else "INFO" if args.verbose else None)
    try:
        config = load_config(args.config, overrides_from_args(args), command_defaults(args.command))
        if args.show_config:
            print(config.to_json(), end="")
            return EXIT_CODES["OK"]
        with tolerances_applied(config):
            return COMMANDS[args.command](config)
    except BigCellError as exc:
        _print_big_cell(exc)
        return EXIT_CODES[exc.exit_key]
    except LoopFrameError as exc:
        logger.debug("falha em %s", args.command, exc_info=True)
        print(str(exc), file=sys.stderr)
        return EXIT_CODES[exc.exit_key]
