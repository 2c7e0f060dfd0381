"""
Interface de linha de comando: example, verify, split e extend
"""
from .parser import build_parser, overrides_from_args
from .verify_suite import CHECKS, run_suite
from .commands import COMMANDS, cmd_example, cmd_extend, cmd_split, cmd_verify, command_defaults, main

__all__ = [
    "build_parser",
    "overrides_from_args",
    "CHECKS",
    "run_suite",
    "COMMANDS",
    "cmd_example",
    "cmd_extend",
    "cmd_split",
    "cmd_verify",
    "command_defaults",
    "main",
]
