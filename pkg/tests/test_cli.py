# tests/test_cli.py
import csv
import json

import pytest

from hardyhermite.__main__ import build_parser, run
from hardyhermite import suites
from hardyhermite.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, PAIR_COLUMNS


@pytest.fixture
def cli(tmp_path, no_env):
    """Runs the CLI against an empty configuration root."""

    def _run(*argv: str) -> int:
        return run([*argv, "--config-root", str(tmp_path)])

    return _run


def test_pair_csv(cli, tmp_path):
    out = tmp_path / "pair.csv"
    assert cli("pair", "--t", "0.25", "--n-min", "10", "--n-max", "60", "--format", "csv", "--out", str(out)) == EXIT_OK
    with out.open(encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == PAIR_COLUMNS
    assert len(rows) == 1 + 51
    assert [int(r[0]) for r in rows[1:]] == list(range(10, 61))


def test_pair_fails_when_the_rate_misses_its_tolerance(cli, tmp_path, monkeypatch):
    monkeypatch.setattr(suites, "A_SLOPE_TOL", 1e-6)
    out = tmp_path / "pair.json"
    assert cli("pair", "--t", "0.25", "--n-min", "10", "--n-max", "60", "--out", str(out)) == EXIT_CHECK_FAILED
    assert out.exists()


def test_output_does_not_depend_on_jobs(cli, tmp_path):
    one, many = tmp_path / "one.json", tmp_path / "many.json"
    common = ("pair", "--t", "0.25", "--n-min", "1", "--n-max", "30", "--method", "all")
    assert cli(*common, "--jobs", "1", "--out", str(one)) == EXIT_OK
    assert cli(*common, "--jobs", "4", "--out", str(many)) == EXIT_OK
    assert one.read_bytes() == many.read_bytes()


def test_laplace_json(cli, tmp_path):
    out = tmp_path / "laplace.json"
    assert cli("laplace", "--a", "0.46211715726000974", "--n-min", "10", "--n-max", "60", "--out", str(out)) == EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["sqrt_pi"] == pytest.approx(1.7724539, rel=1e-7)
    assert len(report["rows"]) == 51
    assert report["n_min_stationary"] == 8


def test_coeffs_with_every_method(cli, tmp_path):
    out = tmp_path / "coeffs.json"
    assert cli("coeffs", "--t", "0.25", "--n-max", "40", "--method", "all", "--out", str(out)) == EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["methods"] == ["recurrence", "quadrature", "contour"]
    assert len(report["rows"]) == 3 * 40
    assert all(worst <= 1.0 for worst in report["agreement"].values())


def test_envelope_csv(cli, tmp_path):
    out = tmp_path / "envelope.csv"
    args = ("envelope", "--t", "0.25", "--grid", "20x32", "--format", "csv", "--out", str(out))
    assert cli(*args) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("family,a,mu,fitted_C,violations")
    assert len(lines) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("pair", "--t", "0.25", "--a", "0.5"),
        ("pair", "--t", "0.25", "--n-min", "0"),
        ("pair", "--n-max", "20"),
        ("plot", "--t", "0.25"),
        ("pair", "--t", "0.25", "--family", "triangle"),
        ("pair", "--t", "0.25", "--grid", "wide"),
    ],
)
def test_usage_errors(cli, argv):
    assert cli(*argv) == EXIT_USAGE


def test_parser_knows_every_command():
    parser = build_parser()
    assert parser.parse_args(["selftest"]).command == "selftest"
    assert parser.parse_args(["bargmann-check", "--t", "0.5"]).t == 0.5


@pytest.mark.slow
def test_selftest_passes(cli, tmp_path):
    out = tmp_path / "selftest.json"
    assert cli("selftest", "--out", str(out)) == EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["checks"]
    assert all(check["passed"] for check in report["checks"])
