"""Command line driver: ``fedosov <command> --chart PATH ...``.

Exit status is 0 on success, 1 when a reported check fails and 2 on
invalid input. Results go to stdout (or ``--out``); logs go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from abelian import StarFunction, build_r, project_center, quantize_Q, star_product
from star_calculus import StarForm, build_frame, d_star, lemma_residual, wedge_star
from trivialization import (
    apply_T,
    apply_T_inv,
    build_homotopy,
    hamiltonian,
    hamiltonian_expansion,
)
from weyl_core.chart import Chart
from weyl_core.validation import ChartParseError, FedosovError

from .config import (
    CHECK_MODES,
    LOG_LEVELS,
    Settings,
    configure_logging,
    load_settings,
)
from .render import RenderedSeries, parse_star_form, parse_star_function, render
from .spec import build_chart, load_chart
from .verification import CheckResult, check_names, run_suite

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2


@dataclass(slots=True)
class CommandReport:
    query: str
    parameters: dict[str, object]
    sections: list[tuple[str, RenderedSeries]] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(not result.passed for result in self.checks)

    def to_text(self) -> str:
        lines = [f"{label}: {series.text}" for label, series in self.sections]
        for result in self.checks:
            if result.passed:
                lines.append(f"PASS {result.name}")
            else:
                lines.append(f"FAIL {result.name}: {result.residual}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        terms = [
            {"label": label, **term}
            for label, series in self.sections
            for term in series.to_dict()
        ]
        document = {
            "query": self.query,
            "parameters": self.parameters,
            "result_terms": terms,
            "checks": [result.to_dict() for result in self.checks],
        }
        return json.dumps(document, indent=2) + "\n"


Handler = Callable[[Chart, argparse.Namespace, Settings], CommandReport]


def _parameters(chart: Chart, args: argparse.Namespace) -> dict[str, object]:
    return {
        "chart": str(args.chart),
        "dim": chart.dim,
        "n_work": chart.n_work,
        "h_order": chart.h_order,
    }


def _query(args: argparse.Namespace, *operands: str) -> str:
    return " ".join([args.command, *operands])


# ---------- subcommands ----------
def cmd_r_form(chart: Chart, args: argparse.Namespace, settings: Settings) -> CommandReport:
    conn = build_r(chart)
    report = CommandReport(_query(args), _parameters(chart, args))
    report.sections.append(("r", render(conn.r)))
    return report


def cmd_star(chart: Chart, args: argparse.Namespace, settings: Settings) -> CommandReport:
    f = parse_star_function(args.f, chart.ring)
    g = parse_star_function(args.g, chart.ring)
    product = star_product(build_r(chart), f, g)
    report = CommandReport(_query(args, args.f, args.g), _parameters(chart, args))
    report.sections.append(("f*g", render(product)))
    return report


def cmd_hamiltonian(
    chart: Chart, args: argparse.Namespace, settings: Settings
) -> CommandReport:
    homotopy = build_homotopy(build_r(chart), power=args.power)
    tmap = hamiltonian(homotopy)
    parameters = {**_parameters(chart, args), "power": args.power}
    report = CommandReport(_query(args), parameters)
    report.sections.append(("H(t)", render(tmap.H_t)))
    if args.expansion:
        report.sections.append(("expansion", render(hamiltonian_expansion(homotopy))))
    return report


def cmd_trivialize(
    chart: Chart, args: argparse.Namespace, settings: Settings
) -> CommandReport:
    f = parse_star_function(args.f, chart.ring)
    conn = build_r(chart)
    tmap = hamiltonian(build_homotopy(conn, power=args.power))
    if args.direction == "inverse":
        image = apply_T_inv(tmap, quantize_Q(build_r(chart.flat()), f))
    else:
        image = apply_T(tmap, quantize_Q(conn, f))
    parameters = {
        **_parameters(chart, args),
        "direction": args.direction,
        "power": args.power,
    }
    report = CommandReport(_query(args, args.f), parameters)
    report.sections.append(("section", render(image)))
    central = project_center(image).truncate(chart.h_order)
    report.sections.append(("central", render(central)))
    return report


def cmd_frame(chart: Chart, args: argparse.Namespace, settings: Settings) -> CommandReport:
    conn = build_r(chart)
    frame = build_frame(conn, hamiltonian(build_homotopy(conn)), check=False)
    report = CommandReport(_query(args), _parameters(chart, args))
    for i, lam in enumerate(frame.lambdas):
        report.sections.append((f"lambda{i + 1}", render(lam)))
    for i in range(chart.dim):
        for j in range(i + 1, chart.dim):
            residual = lemma_residual(frame, i, j)
            report.checks.append(
                CheckResult(
                    f"frame-lemma {i + 1},{j + 1}",
                    residual.is_zero(),
                    render(residual).text,
                )
            )
    return report


def parse_form_argument(items: Sequence[str], chart: Chart) -> StarForm:
    """``I:POLY`` pairs with I a comma separated 1-based index list."""
    components: dict[tuple[int, ...], StarFunction] = {}
    ranks = set()
    for item in items:
        indices_text, separator, poly_text = item.partition(":")
        if not separator:
            raise ChartParseError(f"Form component must look like I:POLY, got {item!r}")
        try:
            indices = tuple(
                int(part) - 1 for part in indices_text.split(",") if part.strip()
            )
        except ValueError as exc:
            raise ChartParseError(f"Bad index list in {item!r}") from exc
        if any(not 0 <= i < chart.dim for i in indices):
            raise ChartParseError(f"Index out of range 1..{chart.dim} in {item!r}")
        ranks.add(len(indices))
        value = parse_star_function(poly_text, chart.ring)
        components[indices] = components.get(indices, StarFunction.zero(chart.ring)) + value
    if len(ranks) > 1:
        raise ChartParseError("All components of a form must have the same degree")
    return StarForm(chart.ring, ranks.pop() if ranks else 0, components)


def cmd_exterior(
    chart: Chart, args: argparse.Namespace, settings: Settings
) -> CommandReport:
    conn = build_r(chart)
    frame = build_frame(conn, hamiltonian(build_homotopy(conn)))
    eta = parse_form_argument(args.form, chart)
    report = CommandReport(_query(args, *args.form), _parameters(chart, args))
    report.sections.append(("form", render(eta)))
    report.sections.append(("d_star", render(d_star(frame, eta))))
    if args.wedge:
        xi = parse_form_argument(args.wedge, chart)
        report.sections.append(("wedge", render(wedge_star(frame, eta, xi))))
    return report


def cmd_verify(chart: Chart, args: argparse.Namespace, settings: Settings) -> CommandReport:
    run = settings.with_overrides(check_mode=args.check_mode, seed=args.seed)
    parameters = {**_parameters(chart, args), "check_mode": run.check_mode, "seed": run.seed}
    report = CommandReport(_query(args), parameters)
    report.checks.extend(
        run_suite(
            chart,
            samples=run.samples,
            seed=run.seed,
            full=run.check_mode == "full",
            only=args.check,
        )
    )
    return report


HANDLERS: Mapping[str, Handler] = {
    "r-form": cmd_r_form,
    "star": cmd_star,
    "hamiltonian": cmd_hamiltonian,
    "trivialize": cmd_trivialize,
    "frame": cmd_frame,
    "exterior": cmd_exterior,
    "verify": cmd_verify,
}


# ---------- argument parsing ----------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--chart", type=Path, required=True, help="Chart JSON document")
    common.add_argument(
        "--degree", type=int, default=None, help="Working Fedosov degree N_work"
    )
    common.add_argument(
        "--h-order", type=int, default=None, help="Highest h-power K of reported series"
    )
    common.add_argument("--out", type=Path, default=None, help="Write output to a file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=None,
        help="Overrides FEDOSOV_LOG_LEVEL",
    )
    common.add_argument("--seed", type=int, default=None, help="Sampling seed for verify")
    common.add_argument(
        "--check-mode",
        choices=CHECK_MODES,
        default=None,
        help="fast: few samples; full: more samples plus refinement checks",
    )

    parser = argparse.ArgumentParser(
        prog="fedosov", description="Exact Fedosov star products and deformed calculus"
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("r-form", parents=[common], help="Print the Abelian connection form r")

    star = commands.add_parser("star", parents=[common], help="Print f * g through h^K")
    star.add_argument("f")
    star.add_argument("g")

    hamilton = commands.add_parser(
        "hamiltonian", parents=[common], help="Print the trivializing Hamiltonian H(t)"
    )
    hamilton.add_argument("--power", type=int, default=1, help="Homotopy profile t^power")
    hamilton.add_argument(
        "--expansion", action="store_true", help="Also print the closed-form expansion"
    )

    trivialize = commands.add_parser(
        "trivialize", parents=[common], help="Apply T or its inverse to a lifted function"
    )
    trivialize.add_argument("f")
    trivialize.add_argument(
        "--direction", choices=("inverse", "forward"), default="inverse"
    )
    trivialize.add_argument("--power", type=int, default=1, help="Homotopy profile t^power")

    commands.add_parser(
        "frame", parents=[common], help="Print the frame elements and check their relations"
    )

    exterior = commands.add_parser(
        "exterior", parents=[common], help="Apply d_* and wedge products to frame forms"
    )
    exterior.add_argument(
        "--form", action="append", required=True, metavar="I:POLY", help="Form component"
    )
    exterior.add_argument(
        "--wedge", action="append", default=None, metavar="I:POLY", help="Right factor"
    )

    verify = commands.add_parser("verify", parents=[common], help="Run the invariant suite")
    verify.add_argument(
        "--check",
        action="append",
        choices=check_names(),
        default=None,
        help="Run only the named check (repeatable)",
    )
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ChartParseError(f"Cannot write {out}: {exc.strerror}") from exc


def run_command(argv: Sequence[str] | None = None, env: Mapping[str, str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        settings = load_settings(env)
        configure_logging(args.log_level or settings.log_level)
        spec = load_chart(args.chart)
        n_work, h_order = settings.resolve_truncation(
            flag_n_work=args.degree,
            flag_h_order=args.h_order,
            chart_n_work=spec.n_work,
            chart_h_order=spec.h_order,
        )
        chart = build_chart(spec, n_work=n_work, h_order=h_order)
        report = HANDLERS[args.command](chart, args, settings)
        text = report.to_json() if args.format == "json" else report.to_text()
        _emit(text, args.out)
    except (FedosovError, IndexError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    if report.failed:
        log.error("%s failed", ", ".join(r.name for r in report.checks if not r.passed))
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())


__all__ = [
    "EXIT_CHECK_FAILED",
    "EXIT_INVALID",
    "EXIT_OK",
    "HANDLERS",
    "CommandReport",
    "build_parser",
    "main",
    "parse_form_argument",
    "run_command",
]
