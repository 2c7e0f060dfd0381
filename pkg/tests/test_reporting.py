"""
Testes do relatório e da configuração de execução
"""
import json

import pytest

from config.run_config import RunConfig, load_config, tolerances_applied
from config.settings import TOLERANCES
from utils.exceptions import DomainError, InputError
from utils.report_generator import ReportGenerator


class TestReportGenerator:
    def test_checks_and_negative_controls(self):
        report = ReportGenerator("verify")
        assert report.add_check("dentro", "frames", 1e-9, 1e-8)
        assert not report.add_check("fora", "frames", 1e-7, 1e-8)
        assert report.add_check("controle", "factorization", 0.5, 1e-2, expect_above=True)
        assert not report.add_check("nan", "frames", float("nan"), 1.0)
        assert [c["name"] for c in report.failed_checks] == ["fora", "nan"]
        assert not report.passed

    def test_failure_record(self):
        report = ReportGenerator("verify")
        report.add_failure("quebrou", "flats", "❌ erro")
        assert report.failed_checks[0]["detail"] == "❌ erro"

    def test_json_is_deterministic_and_rounded(self):
        def build():
            report = ReportGenerator("example", context={"grid": "9x9", "lambdas": ["1+0i"]})
            report.add_check("curvatura", "immersions", 0.0012345678, 1e-2)
            report.add_value("esperada", 1.0 / 3.0)
            return report.generate_json_report()

        first, second = build(), build()
        assert first == second
        document = json.loads(first)
        assert document["checks"][0]["residual"] == pytest.approx(1.234568e-3)
        assert document["passed"] is True

    def test_markdown_and_summary(self, tmp_path):
        report = ReportGenerator("split")
        report.add_check("resíduo", "factorization", 1e-12, 1e-8)
        text = report.generate_markdown_report()
        assert "PASSOU" in text
        assert "1/1 verificações passaram" in text
        assert list(report.generate_summary_table().columns) == ["Verificação", "Grupo", "Resíduo", "Tolerância", "Resultado"]
        assert report.write(tmp_path / "r.md").read_text(encoding="utf-8") == text


class TestRunConfig:
    def test_defaults_validate(self):
        config = RunConfig().validate()
        assert config.lambda_values() == [1.0]
        assert config.grid_counts() == (64, 64)

    def test_precedence(self, tmp_path, monkeypatch):
        monkeypatch.delenv("LOOPFRAME_CONFIG", raising=False)
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"grid": "16x16", "seed": 7, "tolerances": {"quadric": 1e-6}}))
        config = load_config(path, {"seed": 9, "grid": None})
        assert config.grid == "16x16"
        assert config.seed == 9
        assert config.tolerances["quadric"] == 1e-6
        assert config.tolerances["birkhoff"] == TOLERANCES["birkhoff"]

    def test_environment_default_file(self, tmp_path, monkeypatch):
        path = tmp_path / "env.json"
        path.write_text(json.dumps({"row": 2}))
        monkeypatch.setenv("LOOPFRAME_CONFIG", str(path))
        config = load_config()
        assert config.row == 2
        assert config.lambda_values() == [2.0]

    @pytest.mark.parametrize(
        "document",
        [{"colour": "red"}, {"tolerances": {"quadric": -1.0}}, {"grid": "64"}, {"imaginary_samples": 4}, {"side": "up"}],
    )
    def test_invalid_documents(self, document):
        with pytest.raises(InputError):
            RunConfig.from_dict(document).validate()

    def test_lambda_outside_row(self):
        with pytest.raises(DomainError):
            RunConfig(row=3, lambdas=["2"]).validate()

    def test_export_format_from_suffix(self):
        assert RunConfig(out="surface.obj").export_format() == "obj"
        assert RunConfig(out="surface").export_format() == "csv"
        assert RunConfig(out="surface.obj", format="vtk").export_format() == "vtk"

    def test_tolerances_restored(self):
        saved = dict(TOLERANCES)
        config = RunConfig.from_dict({"tolerances": {"quadric": 1e-20}})
        with tolerances_applied(config):
            assert TOLERANCES["quadric"] == 1e-20
        assert TOLERANCES == saved

    def test_json_round_trip(self, tmp_path):
        config = RunConfig(seed=3, lambdas=["0.5i"], row=1)
        restored = RunConfig.from_dict(json.loads(config.write(tmp_path / "c.json").read_text()))
        assert restored == config
