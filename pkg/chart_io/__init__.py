"""Chart documents, canonical rendering, the verification suite and the CLI."""

from .cli import CommandReport, build_parser, main, parse_form_argument, run_command
from .config import Settings, configure_logging, load_settings
from .render import (
    RenderedSeries,
    RenderedTerm,
    parse_poly,
    parse_star_form,
    parse_star_function,
    parse_weyl_form,
    render,
    render_poly,
)
from .spec import ChartSpec, GammaEntry, build_chart, load_chart, parse_chart
from .verification import CheckResult, check_names, run_suite

__all__ = [
    "ChartSpec",
    "CheckResult",
    "CommandReport",
    "GammaEntry",
    "RenderedSeries",
    "RenderedTerm",
    "Settings",
    "build_chart",
    "build_parser",
    "check_names",
    "configure_logging",
    "load_chart",
    "load_settings",
    "main",
    "parse_chart",
    "parse_form_argument",
    "parse_poly",
    "parse_star_form",
    "parse_star_function",
    "parse_weyl_form",
    "render",
    "render_poly",
    "run_command",
    "run_suite",
]
