"""Tests for the gpdlab command line."""

from pathlib import Path

import pytest

pytest.importorskip("typer")

from typer.testing import CliRunner  # noqa: E402

from gpdlab.cli import app  # noqa: E402
from gpdlab.core.families import constant_family  # noqa: E402
from gpdlab.core.groupoid import cyclic_group, discrete, indiscrete, unit  # noqa: E402
from gpdlab.kleisli import poly_to_span  # noqa: E402
from gpdlab.models import SuiteReport  # noqa: E402
from gpdlab.poly import Polynomial, monomial  # noqa: E402
from gpdlab.serialize import parse_artifact, write_artifact  # noqa: E402
from gpdlab.span import Endpoint, Span, span_id  # noqa: E402

runner = CliRunner()


@pytest.fixture
def files(tmp_path: Path, isolated_config: Path, two_point_span: Span) -> Path:
    """A directory of small artifacts, with config isolated."""
    write_artifact(cyclic_group(2), tmp_path / "bz2.json")
    write_artifact(indiscrete(3), tmp_path / "indiscrete3.json")
    write_artifact(unit(), tmp_path / "unit.json")
    write_artifact(discrete(2), tmp_path / "disc2.json")
    write_artifact(two_point_span, tmp_path / "two_point.json")
    write_artifact(span_id(discrete(2)), tmp_path / "id_disc2.json")
    write_artifact(monomial(2), tmp_path / "square.json")
    write_artifact(poly_to_span(monomial(2)), tmp_path / "square_span.json")
    write_artifact(constant_family(unit(), discrete(3)), tmp_path / "three.json")
    (tmp_path / "broken.json").write_text("{not json")
    return tmp_path


# ---------------------------------------------------------------------------
# Tests: validate / compare
# ---------------------------------------------------------------------------


class TestValidate:
    """Tests for the validate command."""

    def test_valid_artifact(self, files: Path) -> None:
        result = runner.invoke(app, ["validate", str(files / "bz2.json")])
        assert result.exit_code == 0
        assert "VALID" in result.output
        assert "FinGroupoid" in result.output

    def test_broken_artifact(self, files: Path) -> None:
        result = runner.invoke(app, ["validate", str(files / "broken.json")])
        assert result.exit_code == 2

    def test_missing_file(self, files: Path) -> None:
        result = runner.invoke(app, ["validate", str(files / "absent.json")])
        assert result.exit_code == 2


class TestCompare:
    """Tests for the compare command."""

    def test_equivalent(self, files: Path) -> None:
        result = runner.invoke(
            app, ["compare", "--a", str(files / "indiscrete3.json"), "--b", str(files / "unit.json")]
        )
        assert result.exit_code == 0
        assert "EQUIVALENT" in result.output

    def test_not_equivalent(self, files: Path) -> None:
        result = runner.invoke(
            app, ["compare", "--a", str(files / "disc2.json"), "--b", str(files / "unit.json"), "--json"]
        )
        assert result.exit_code == 1
        assert '"equivalent": false' in result.output

    def test_kinds_must_match(self, files: Path) -> None:
        result = runner.invoke(
            app, ["compare", "--a", str(files / "bz2.json"), "--b", str(files / "two_point.json")]
        )
        assert result.exit_code == 2


# ---------------------------------------------------------------------------
# Tests: constructions
# ---------------------------------------------------------------------------


class TestConstructions:
    """Commands that write a new artifact."""

    def test_compose_span(self, files: Path) -> None:
        out = files / "composite.json"
        result = runner.invoke(
            app,
            ["compose-span", "--f", str(files / "two_point.json"), "--g", str(files / "two_point.json"), "--out", str(out)],
        )
        assert result.exit_code == 0
        assert parse_artifact(out).apex.object_count == 4

    def test_compose_span_mismatch(self, files: Path) -> None:
        result = runner.invoke(
            app, ["compose-span", "--f", str(files / "two_point.json"), "--g", str(files / "id_disc2.json")]
        )
        assert result.exit_code == 2

    def test_compose_poly(self, files: Path) -> None:
        out = files / "quartic.json"
        result = runner.invoke(
            app,
            ["compose-poly", "--p", str(files / "square.json"), "--q", str(files / "square.json"), "-o", str(out)],
        )
        assert result.exit_code == 0
        assert parse_artifact(out).E.object_count == 4

    def test_eval_poly(self, files: Path) -> None:
        out = files / "nine.json"
        result = runner.invoke(
            app,
            [
                "eval-poly",
                "--poly", str(files / "square.json"),
                "--family", str(files / "three.json"),
                "--at", "0",
                "--out", str(out),
            ],
        )
        assert result.exit_code == 0
        assert parse_artifact(out).object_count == 9

    def test_bang(self, files: Path) -> None:
        out = files / "lifted.json"
        result = runner.invoke(app, ["bang", str(files / "id_disc2.json"), "-k", "2", "-o", str(out)])
        assert result.exit_code == 0
        lifted = parse_artifact(out)
        assert lifted.left == Endpoint.bang(discrete(2))
        assert lifted.apex.object_count == 7

    def test_poly_span_roundtrip(self, files: Path) -> None:
        span_out, poly_out = files / "span.json", files / "poly.json"
        first = runner.invoke(app, ["poly-to-span", "--poly", str(files / "square.json"), "-o", str(span_out)])
        second = runner.invoke(app, ["span-to-poly", "--span", str(span_out), "-o", str(poly_out)])
        assert (first.exit_code, second.exit_code) == (0, 0)
        assert isinstance(parse_artifact(poly_out), Polynomial)

    def test_span_to_poly_needs_bag_source(self, files: Path) -> None:
        result = runner.invoke(app, ["span-to-poly", "--span", str(files / "two_point.json")])
        assert result.exit_code == 2

    def test_kleisli_compose(self, files: Path) -> None:
        out = files / "kc.json"
        span = str(files / "square_span.json")
        result = runner.invoke(app, ["kleisli-compose", "--f", span, "--g", span, "-o", str(out)])
        assert result.exit_code == 0
        assert parse_artifact(out).left == Endpoint.bang(unit())

    def test_canon(self, files: Path) -> None:
        out = files / "canon.json"
        result = runner.invoke(app, ["canon", str(files / "two_point.json"), "-o", str(out)])
        assert result.exit_code == 0
        assert parse_artifact(out).apex.object_count == 2


# ---------------------------------------------------------------------------
# Tests: check
# ---------------------------------------------------------------------------


class TestCheck:
    """Tests for the law suite command."""

    def test_passing_law(self, files: Path) -> None:
        out = files / "report.json"
        result = runner.invoke(
            app, ["check", "--suite", "gcard-multiplicative", "-n", "1", "--seed", "3", "--out", str(out)]
        )
        assert result.exit_code == 0
        report = parse_artifact(out)
        assert isinstance(report, SuiteReport)
        assert report.seed == 3
        assert report.passed

    def test_seeded_defect_fails(self, files: Path) -> None:
        result = runner.invoke(
            app, ["check", "--suite", "monad-triangles", "-n", "1", "--mutate", "mu-flatten-order"]
        )
        assert result.exit_code == 1

    def test_unknown_mutation(self, files: Path) -> None:
        result = runner.invoke(app, ["check", "--mutate", "nonsense"])
        assert result.exit_code == 2

    def test_unknown_law(self, files: Path) -> None:
        result = runner.invoke(app, ["check", "--suite", "no-such-law"])
        assert result.exit_code == 2


# ---------------------------------------------------------------------------
# Tests: config
# ---------------------------------------------------------------------------


class TestConfigCommands:
    """Tests for config set / list."""

    def test_set_then_list(self, isolated_config: Path) -> None:
        assert runner.invoke(app, ["config", "set", "bang_bound", "3"]).exit_code == 0
        result = runner.invoke(app, ["config", "list"])
        assert result.exit_code == 0
        assert "bang_bound" in result.output
        assert "config file" in result.output

    def test_unknown_key(self, isolated_config: Path) -> None:
        result = runner.invoke(app, ["config", "set", "colour", "blue"])
        assert result.exit_code == 2
