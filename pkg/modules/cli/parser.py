"""
Definição das flags da linha de comando
"""
import argparse
from typing import Dict

from config.settings import APP_CONFIG, EXPORT_CONFIG, TOLERANCES
from utils.constants import SPLIT_SIDES, VERIFY_GROUPS

COMMAND_HELP = {
    "example": "Gera a superfície do exemplo do caso 3 e o relatório de curvatura",
    "verify": "Executa a suíte de invariantes",
    "split": "Fatoração de Birkhoff de um arquivo de laço",
    "extend": "Extensão pluriharmônica para a faixa complexa",
}


def _tolerance_flag(name: str) -> str:
    return "--tol-" + name.replace("_", "-")


def _common_options() -> argparse.ArgumentParser:
    """Flags compartilhadas; default None significa 'não informado'"""
    common = argparse.ArgumentParser(add_help=False)
    run = common.add_argument_group("execução")
    run.add_argument("--config", help="Arquivo JSON de configuração")
    run.add_argument("--show-config", action="store_true", help="Imprime a configuração efetiva e sai")
    run.add_argument("--seed", type=int)
    run.add_argument("--threads", type=int, help="Trabalhadores em paralelo (padrão: núcleos disponíveis)")
    run.add_argument("--diagnostics", action="store_const", const=True, help="Inclui diagnósticos por ponto")
    run.add_argument("--verbose", action="store_true", help="Log em nível INFO")
    run.add_argument("--debug", action="store_true", help="Log em nível DEBUG")

    geometry = common.add_argument_group("geometria")
    geometry.add_argument("--case", type=int, choices=[1, 2, 3, 4])
    geometry.add_argument("--row", type=int, choices=[1, 2, 3])
    geometry.add_argument("--c", type=float, help="Curvatura da imersão inserida")
    geometry.add_argument("--lambda", dest="lambdas", action="append", help="λ (a+bi, 0.5i, e^{0.3i}); repetível")
    geometry.add_argument("--grid", help="Grade LxA, ex. 64x64")
    geometry.add_argument("--range", dest="ranges", type=float, nargs=4, metavar=("U0", "U1", "V0", "V1"))
    geometry.add_argument("--strip-eps", type=float)
    geometry.add_argument("--imag-samples", dest="imaginary_samples", type=int)

    factorization = common.add_argument_group("fatoração")
    factorization.add_argument("--side", choices=list(SPLIT_SIDES.values()))
    factorization.add_argument("--bandwidth", type=int)
    factorization.add_argument("--dpw-samples", type=int)
    factorization.add_argument("--patch-size", type=int)
    factorization.add_argument("--groups", nargs="+", choices=VERIFY_GROUPS, help="Grupos da suíte verify")

    output = common.add_argument_group("saída")
    output.add_argument("--out", help="Arquivo de saída")
    output.add_argument("--format", choices=EXPORT_CONFIG["formats"])

    tolerances = common.add_argument_group("tolerâncias")
    for name in TOLERANCES:
        tolerances.add_argument(_tolerance_flag(name), dest=f"tol_{name}", type=float, metavar="TOL")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog=APP_CONFIG["name"], description=APP_CONFIG["description"])
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_CONFIG['version']}")
    # flags só nos subcomandos: os padrões do subparser sobrescreveriam os do principal
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMANDO")
    for name, text in COMMAND_HELP.items():
        command = commands.add_parser(name, help=text, parents=[common])
        if name in ("split", "extend"):
            command.add_argument("input", nargs="?", help="Arquivo de laço (split) ou de conexão (extend)")
    return parser


_FIELDS = (
    "case",
    "row",
    "c",
    "lambdas",
    "grid",
    "strip_eps",
    "imaginary_samples",
    "seed",
    "out",
    "format",
    "diagnostics",
    "threads",
    "groups",
    "side",
    "bandwidth",
    "dpw_samples",
    "patch_size",
)


def overrides_from_args(args: argparse.Namespace) -> Dict:
    """Flags informadas como dicionário parcial de RunConfig"""
    overrides = {name: getattr(args, name, None) for name in _FIELDS}
    if getattr(args, "ranges", None):
        u0, u1, v0, v1 = args.ranges
        overrides["ranges"] = [[u0, u1], [v0, v1]]
    overrides["input"] = getattr(args, "input", None)
    tolerances = {name: getattr(args, f"tol_{name}") for name in TOLERANCES if getattr(args, f"tol_{name}", None) is not None}
    if tolerances:
        overrides["tolerances"] = tolerances
    return overrides
