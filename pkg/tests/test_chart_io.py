import json
import logging

import pytest

from chart_io import (
    ChartSpec,
    GammaEntry,
    build_chart,
    load_chart,
    load_settings,
    parse_chart,
)
from chart_io.config import (
    DEFAULT_H_ORDER,
    DEFAULT_N_WORK,
    DEFAULT_SEED,
    FAST_SAMPLES,
    FULL_SAMPLES,
    Settings,
    configure_logging,
    normalize_log_level,
)
from weyl_core import ChartParseError, ChartValidationError, ConfigurationError, rational


def _document(**overrides):
    document = {"dim": 2, "gamma": [{"indices": [1, 1, 1], "poly": "x2"}]}
    document.update(overrides)
    return json.dumps(document)


class TestParseChart:
    def test_valid_document(self):
        spec = parse_chart(_document(n_work=8))
        assert spec == ChartSpec(2, (GammaEntry((1, 1, 1), "x2"),), n_work=8)

    def test_bytes_input(self):
        assert parse_chart(_document().encode()).dim == 2

    def test_to_dict_reparses(self):
        spec = parse_chart(_document(n_work=6, h_order=1))
        assert parse_chart(json.dumps(spec.to_dict())) == spec

    def test_malformed_json_reports_position(self):
        with pytest.raises(ChartParseError, match="line 1, column"):
            parse_chart('{"dim": 2,')

    def test_invalid_utf8(self):
        with pytest.raises(ChartParseError):
            parse_chart(b"\xff\xfe")

    @pytest.mark.parametrize(
        "text",
        [
            "[]",
            _document(dim=3),
            _document(dim=0),
            _document(gamma={}),
            _document(gamma=[{"indices": [1, 1], "poly": "x1"}]),
            _document(gamma=[{"indices": [1, 1, 3], "poly": "x1"}]),
            _document(gamma=[{"indices": [1, 1, 1], "poly": 3}]),
            _document(gamma=[{"indices": [1, 1, 1], "poly": "t x1"}]),
            _document(n_work="6"),
        ],
    )
    def test_invalid_documents(self, text):
        with pytest.raises(ChartValidationError):
            parse_chart(text)

    def test_conflicting_permutations(self):
        gamma = [
            {"indices": [1, 1, 2], "poly": "x1"},
            {"indices": [2, 1, 1], "poly": "x2"},
        ]
        with pytest.raises(ChartValidationError, match="Conflicting"):
            parse_chart(_document(gamma=gamma))

    def test_agreeing_permutations(self):
        gamma = [
            {"indices": [1, 1, 2], "poly": "x1"},
            {"indices": [2, 1, 1], "poly": "x1"},
        ]
        assert len(parse_chart(_document(gamma=gamma)).gamma_entries) == 2

    def test_bad_polynomial_names_the_entry(self):
        gamma = [
            {"indices": [1, 1, 1], "poly": "x2"},
            {"indices": [1, 2, 2], "poly": "0.5 x1"},
        ]
        with pytest.raises(ChartParseError, match=r"gamma entry 2 \[1, 2, 2\]"):
            parse_chart(_document(gamma=gamma))

    def test_bad_truncation(self):
        with pytest.raises(ConfigurationError):
            parse_chart(_document(n_work=2))


class TestLoadAndBuild:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ChartParseError):
            load_chart(tmp_path / "missing.json")

    def test_sample_charts(self, charts_dir, x1, x2):
        chart = build_chart(load_chart(charts_dir / "g111.json"))
        assert chart.gamma == {(0, 0, 0): x2}
        assert (chart.n_work, chart.h_order) == (6, 2)
        two = build_chart(load_chart(charts_dir / "two_term.json"))
        assert two.gamma_at(1, 0, 1) == x1 * rational(1, 2)
        assert build_chart(load_chart(charts_dir / "flat2d.json")).is_flat

    def test_cross_pairs_sample_matches_fixture(self, charts_dir, cross_chart):
        chart = build_chart(load_chart(charts_dir / "cross_pairs.json"))
        assert chart.gamma == cross_chart.gamma

    def test_defaults_and_overrides(self):
        spec = parse_chart(_document())
        chart = build_chart(spec)
        assert (chart.n_work, chart.h_order) == (DEFAULT_N_WORK, DEFAULT_H_ORDER)
        assert build_chart(spec, n_work=8, h_order=3).n_work == 8

    def test_low_working_degree_warns(self, caplog):
        with caplog.at_level(logging.WARNING, logger="weyl_core.chart"):
            build_chart(parse_chart(_document()), n_work=4, h_order=2)
        assert "below 2K+2" in caplog.text


class TestSettings:
    def test_defaults(self):
        settings = load_settings({})
        assert settings == Settings()
        assert settings.seed == DEFAULT_SEED
        assert settings.samples == FAST_SAMPLES

    def test_environment(self):
        settings = load_settings(
            {
                "FEDOSOV_N_WORK": "8",
                "FEDOSOV_H_ORDER": "3",
                "FEDOSOV_LOG_LEVEL": "debug",
                "FEDOSOV_CHECK_MODE": "FULL",
                "FEDOSOV_SEED": "11",
            }
        )
        assert settings == Settings(8, 3, "DEBUG", "full", 11)
        assert settings.samples == FULL_SAMPLES

    def test_blank_values_are_unset(self):
        assert load_settings({"FEDOSOV_N_WORK": "  "}).n_work is None

    @pytest.mark.parametrize(
        "env",
        [
            {"FEDOSOV_N_WORK": "six"},
            {"FEDOSOV_LOG_LEVEL": "chatty"},
            {"FEDOSOV_CHECK_MODE": "slow"},
        ],
    )
    def test_invalid_environment(self, env):
        with pytest.raises(ConfigurationError):
            load_settings(env)

    def test_truncation_precedence(self):
        settings = Settings(n_work=10, h_order=4)
        resolve = settings.resolve_truncation
        assert resolve(
            flag_n_work=None, flag_h_order=None, chart_n_work=None, chart_h_order=None
        ) == (10, 4)
        assert resolve(
            flag_n_work=None, flag_h_order=None, chart_n_work=6, chart_h_order=2
        ) == (6, 2)
        assert resolve(
            flag_n_work=8, flag_h_order=1, chart_n_work=6, chart_h_order=2
        ) == (8, 1)
        assert Settings().resolve_truncation(
            flag_n_work=None, flag_h_order=None, chart_n_work=None, chart_h_order=None
        ) == (DEFAULT_N_WORK, DEFAULT_H_ORDER)

    def test_log_level_is_case_insensitive(self):
        assert normalize_log_level(" debug ") == "DEBUG"

    def test_configure_logging_rejects_unknown_level(self):
        with pytest.raises(ConfigurationError, match="Unknown log level"):
            configure_logging("loud")

    def test_overrides_follow_flags(self):
        settings = Settings(check_mode="full", seed=11)
        assert settings.with_overrides() == settings
        fast = settings.with_overrides(check_mode="FAST", seed=2)
        assert (fast.check_mode, fast.seed, fast.samples) == ("fast", 2, FAST_SAMPLES)
        with pytest.raises(ConfigurationError):
            settings.with_overrides(check_mode="thorough")
