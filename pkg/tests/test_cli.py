"""
Testes da linha de comando (códigos de saída e arquivos gerados)
"""
import json

import numpy as np
import pytest

from modules.cli import build_parser, main
from modules.frames import read_frames
from modules.immersions import CaseSpec
from modules.loopalg import LaurentLoop, read_loop, write_loop

PLUS = LaurentLoop({0: np.eye(2), 1: np.array([[0.0, 1.0], [0.0, 0.0]])})
MINUS = LaurentLoop({0: np.array([[2.0, 0.0], [0.0, 0.5]]), -1: np.array([[0.0, 0.0], [0.5, 0.0]])})


@pytest.fixture(autouse=True)
def no_environment_config(monkeypatch):
    monkeypatch.delenv("LOOPFRAME_CONFIG", raising=False)


def test_parser_lists_commands():
    help_text = build_parser().format_help()
    for command in ("example", "verify", "split", "extend"):
        assert command in help_text


def test_show_config(capsys):
    assert main(["verify", "--show-config", "--seed", "5", "--tol-quadric", "1e-6"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["seed"] == 5
    assert document["tolerances"]["quadric"] == 1e-6


def test_extend_has_small_default_domain(capsys):
    assert main(["extend", "--show-config"]) == 0
    assert json.loads(capsys.readouterr().out)["grid"] == "9x9"


def test_example_writes_mesh_and_report(tmp_path, capsys):
    out = tmp_path / "surface.obj"
    assert main(["example", "--grid", "33x33", "--lambda", "e^{0.3i}", "--out", str(out)]) == 0
    assert out.exists()
    report = json.loads((tmp_path / "surface.report.json").read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert "PASSOU" in capsys.readouterr().out


def test_example_several_lambdas(tmp_path):
    out = tmp_path / "surface.csv"
    assert main(["example", "--row", "2", "--grid", "33x33", "--lambda", "2", "--lambda", "-0.5", "--out", str(out)]) == 0
    assert len(list(tmp_path.glob("surface_lam*.csv"))) == 2


def test_example_with_curvature_inserts_lambda0(tmp_path):
    out = tmp_path / "surface.csv"
    argv = ["example", "--row", "2", "--c", "0.5", "--grid", "65x65", "--range", "-0.5", "0.5", "-0.5", "0.5"]
    assert main(argv + ["--out", str(out)]) == 0
    report = json.loads((tmp_path / "surface.report.json").read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert any(check["name"].startswith("ida e volta pela inserção") for check in report["checks"])
    family, _ = read_frames(tmp_path / "surface_frames.json")
    assert len(family.lams) == 1
    assert abs(family.lams[0] - CaseSpec(3, 2, c=0.5).lambda0) <= 1e-12


def test_example_inadmissible_curvature_is_bad_input():
    assert main(["example", "--row", "3", "--c", "0.5"]) == 2


def test_tightened_tolerance_fails(capsys):
    assert main(["example", "--grid", "17x17", "--tol-curvature-rel", "1e-20"]) == 1
    assert "FALHOU" in capsys.readouterr().out


def test_lambda_outside_row_is_bad_input(capsys):
    assert main(["example", "--lambda", "2"]) == 2
    assert "❌" in capsys.readouterr().err


def test_example_only_for_case_three():
    assert main(["example", "--case", "2"]) == 2


def test_argparse_rejects_unknown_choice():
    with pytest.raises(SystemExit) as info:
        main(["split", "--side", "up"])
    assert info.value.code == 2


def test_verify_single_group(tmp_path, capsys):
    out = tmp_path / "verify.json"
    assert main(["verify", "--groups", "loopalg", "--threads", "1", "--out", str(out)]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert {check["group"] for check in report["checks"]} == {"loopalg"}


def test_verify_report_is_reproducible(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "--groups", "loopalg", "--seed", "3", "--out", str(first)])
    main(["verify", "--groups", "loopalg", "--seed", "3", "--threads", "2", "--out", str(second)])
    assert first.read_bytes() == second.read_bytes()


def test_split_writes_factors(tmp_path):
    path = write_loop(tmp_path / "loop.json", PLUS @ MINUS)
    assert main(["split", str(path)]) == 0
    plus, header = read_loop(tmp_path / "loop_plus.json")
    minus, _ = read_loop(tmp_path / "loop_minus.json")
    assert header["factor"] == "plus"
    assert header["meta"]["side"] == "left"
    assert plus.coefficient_distance(PLUS) <= 1e-8
    assert minus.coefficient_distance(MINUS) <= 1e-8


def test_split_outside_big_cell(tmp_path, capsys):
    path = write_loop(tmp_path / "loop.json", LaurentLoop({1: np.diag([1.0, 0.0]), -1: np.diag([0.0, 1.0])}))
    assert main(["split", str(path)]) == 3
    assert "ponto" in capsys.readouterr().err


def test_split_requires_input():
    assert main(["split"]) == 2


def test_extend_example(tmp_path):
    out = tmp_path / "strip.vtk"
    assert main(["extend", "--imag-samples", "5", "--out", str(out)]) == 0
    assert out.exists()
    assert (tmp_path / "strip_frames.npz").exists()
    assert json.loads((tmp_path / "strip.report.json").read_text(encoding="utf-8"))["passed"] is True
