import json

import pytest

from chart_io import (
    CommandReport,
    RenderedSeries,
    build_parser,
    cli,
    parse_form_argument,
    run_command,
)
from chart_io.cli import EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK
from chart_io.config import FAST_SAMPLES, FULL_SAMPLES
from chart_io.verification import CheckResult
from weyl_core import ChartParseError


@pytest.fixture
def chart_path(charts_dir):
    def path(name):
        return str(charts_dir / f"{name}.json")

    return path


def run(capsys, *argv, env=None):
    code = run_command(list(argv), env={} if env is None else env)
    return code, capsys.readouterr().out


def test_star_on_flat_chart(capsys, chart_path):
    code, out = run(capsys, "star", "--chart", chart_path("flat2d"), "x1", "x2")
    assert code == EXIT_OK
    assert out == "f*g: x1 x2 + (1/2) I h\n"


def test_star_json_output(capsys, chart_path):
    code, out = run(
        capsys, "star", "--chart", chart_path("flat2d"), "--format", "json", "x1", "x2"
    )
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["query"] == "star x1 x2"
    assert document["parameters"]["n_work"] == 6
    assert document["result_terms"] == [
        {"label": "f*g", "h_power": 0, "y_degrees": [0, 0], "dx_indices": [], "poly": "x1 x2"},
        {"label": "f*g", "h_power": 1, "y_degrees": [0, 0], "dx_indices": [], "poly": "(1/2) I"},
    ]
    assert document["checks"] == []


def test_hamiltonian_leading_term(capsys, chart_path):
    code, out = run(capsys, "hamiltonian", "--chart", chart_path("g111"), "--expansion")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("H(t): -(1/6) x2 y1^3")
    assert lines[1].startswith("expansion: -(1/6) x2 y1^3")


def test_r_form_is_zero_on_flat_chart(capsys, chart_path):
    code, out = run(capsys, "r-form", "--chart", chart_path("flat2d"))
    assert (code, out) == (EXIT_OK, "r: 0\n")


def test_trivialize_reports_correction(capsys, chart_path):
    code, out = run(capsys, "trivialize", "--chart", chart_path("g111"), "x2^3")
    assert code == EXIT_OK
    assert "central: x2^3 + (1/4) x2 h^2\n" in out
    code, out = run(
        capsys, "trivialize", "--chart", chart_path("g111"), "--direction", "forward", "x2^3"
    )
    assert "central: x2^3 - (1/4) x2 h^2\n" in out


def test_frame_reports_lemma(capsys, chart_path):
    code, out = run(capsys, "frame", "--chart", chart_path("g111"))
    assert code == EXIT_OK
    assert "lambda1: x2\n" in out
    assert "lambda2: -x1\n" in out
    assert "PASS frame-lemma 1,2" in out


def test_exterior_on_flat_chart(capsys, chart_path):
    code, out = run(
        capsys,
        "exterior",
        "--chart",
        chart_path("flat2d"),
        "--form",
        "1:x2",
        "--wedge",
        "2:x1",
    )
    assert code == EXIT_OK
    assert out.splitlines() == [
        "form: x2 theta1",
        "d_star: -theta1 theta2",
        "wedge: x1 x2 theta1 theta2 - (1/2) I h theta1 theta2",
    ]


def test_verify_selected_checks(capsys, chart_path):
    code, out = run(
        capsys,
        "verify",
        "--chart",
        chart_path("g111"),
        "--check",
        "delta-nilpotent",
        "--check",
        "star-unit",
    )
    assert code == EXIT_OK
    assert out == "PASS delta-nilpotent\nPASS star-unit\n"


def test_output_file(capsys, chart_path, tmp_path):
    target = tmp_path / "star.txt"
    code, out = run(
        capsys, "star", "--chart", chart_path("flat2d"), "--out", str(target), "x1", "x2"
    )
    assert code == EXIT_OK
    assert out == ""
    assert target.read_text(encoding="utf-8") == "f*g: x1 x2 + (1/2) I h\n"


def test_output_is_deterministic(capsys, chart_path):
    argv = ("star", "--chart", chart_path("two_term"), "x1^2 + x2", "x1 x2")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


class TestTruncationPrecedence:
    @pytest.fixture
    def bare_chart(self, tmp_path):
        path = tmp_path / "bare.json"
        path.write_text(json.dumps({"dim": 2, "gamma": []}), encoding="utf-8")
        return str(path)

    def parameters(self, capsys, *argv, env=None):
        code, out = run(capsys, *argv, "--format", "json", "x1", "x2", env=env)
        assert code == EXIT_OK
        return json.loads(out)["parameters"]

    def test_environment_fills_missing_chart_values(self, capsys, bare_chart):
        env = {"FEDOSOV_N_WORK": "8", "FEDOSOV_H_ORDER": "3"}
        params = self.parameters(capsys, "star", "--chart", bare_chart, env=env)
        assert (params["n_work"], params["h_order"]) == (8, 3)

    def test_chart_beats_environment(self, capsys, chart_path):
        env = {"FEDOSOV_N_WORK": "8", "FEDOSOV_H_ORDER": "3"}
        params = self.parameters(capsys, "star", "--chart", chart_path("flat2d"), env=env)
        assert (params["n_work"], params["h_order"]) == (6, 2)

    def test_flags_beat_chart(self, capsys, chart_path):
        params = self.parameters(
            capsys, "star", "--chart", chart_path("flat2d"), "--degree", "8", "--h-order", "1"
        )
        assert (params["n_work"], params["h_order"]) == (8, 1)


class TestExitCodes:
    def test_missing_chart(self, capsys, tmp_path):
        code, _ = run(capsys, "r-form", "--chart", str(tmp_path / "none.json"))
        assert code == EXIT_INVALID

    def test_invalid_chart(self, capsys, tmp_path):
        path = tmp_path / "odd.json"
        path.write_text('{"dim": 3, "gamma": []}', encoding="utf-8")
        code, _ = run(capsys, "r-form", "--chart", str(path))
        assert code == EXIT_INVALID

    def test_bad_polynomial(self, capsys, chart_path):
        code, _ = run(capsys, "star", "--chart", chart_path("flat2d"), "1.5 x1", "x2")
        assert code == EXIT_INVALID

    def test_unknown_command(self, capsys):
        code, _ = run(capsys, "integrate", "--chart", "x.json")
        assert code == EXIT_INVALID

    def test_bad_environment(self, capsys, chart_path):
        env = {"FEDOSOV_LOG_LEVEL": "chatty"}
        code, _ = run(capsys, "r-form", "--chart", chart_path("flat2d"), env=env)
        assert code == EXIT_INVALID

    def test_star_order_too_high(self, capsys, chart_path):
        code, _ = run(
            capsys, "star", "--chart", chart_path("flat2d"), "--h-order", "4", "x1", "x2"
        )
        assert code == EXIT_INVALID

    def test_failed_check(self, capsys, chart_path, monkeypatch):
        def failing(chart, args, settings):
            report = CommandReport("verify", {})
            report.checks.append(CheckResult("star-unit", False, "x1"))
            return report

        monkeypatch.setitem(cli.HANDLERS, "verify", failing)
        code, out = run(capsys, "verify", "--chart", chart_path("flat2d"))
        assert code == EXIT_CHECK_FAILED
        assert out == "FAIL star-unit: x1\n"


class TestVerifySampling:
    @pytest.fixture
    def calls(self, monkeypatch):
        seen = []

        def record(chart, **kwargs):
            seen.append(kwargs)
            return []

        monkeypatch.setattr(cli, "run_suite", record)
        return seen

    def test_environment_mode_sets_samples(self, capsys, chart_path, calls):
        env = {"FEDOSOV_CHECK_MODE": "full", "FEDOSOV_SEED": "5"}
        code, _ = run(capsys, "verify", "--chart", chart_path("flat2d"), env=env)
        assert code == EXIT_OK
        assert calls[0]["samples"] == FULL_SAMPLES
        assert calls[0]["full"] is True
        assert calls[0]["seed"] == 5

    def test_flags_beat_environment(self, capsys, chart_path, calls):
        env = {"FEDOSOV_CHECK_MODE": "full"}
        argv = ["verify", "--chart", chart_path("flat2d"), "--check-mode", "fast", "--seed", "7"]
        run(capsys, *argv, env=env)
        assert calls[0]["samples"] == FAST_SAMPLES
        assert calls[0]["full"] is False
        assert calls[0]["seed"] == 7


class TestFormArgument:
    def test_components(self, flat_chart, fn, x1):
        form = parse_form_argument(["2,1:x1", "1,2:1"], flat_chart)
        assert form.rank == 2
        assert form.component((0, 1)) == fn(1) - fn(x1)

    @pytest.mark.parametrize("items", [["x1"], ["a:x1"], ["3:x1"], ["1:x1", "1,2:x2"]])
    def test_rejected(self, flat_chart, items):
        with pytest.raises(ChartParseError):
            parse_form_argument(items, flat_chart)


def test_report_text_layout():
    report = CommandReport("q", {}, [("a", RenderedSeries("function", "x1"))])
    report.checks.append(CheckResult("one", True))
    assert report.to_text() == "a: x1\nPASS one\n"
    assert not report.failed


def test_parser_lists_every_command():
    parser = build_parser()
    args = parser.parse_args(["verify", "--chart", "c.json", "--check-mode", "full"])
    assert (args.command, args.check_mode, args.check) == ("verify", "full", None)
