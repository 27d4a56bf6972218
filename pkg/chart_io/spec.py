"""Chart documents: JSON holding the dimension, Γ entries and truncations.

    {"dim": 2, "gamma": [{"indices": [1, 1, 1], "poly": "x2"}],
     "n_work": 6, "h_order": 2}

Indices are 1-based. An entry stands for every permutation of its indices;
ω is always the standard Darboux form and is never read.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from weyl_core.chart import Chart
from weyl_core.polynomials import coefficient_ring, depends_on_t
from weyl_core.validation import (
    ChartParseError,
    ChartValidationError,
    require_even_dimension,
    require_truncation,
)

from .config import DEFAULT_H_ORDER, DEFAULT_N_WORK
from .render import parse_poly, render_poly

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class GammaEntry:
    indices: tuple[int, int, int]
    poly: str

    def to_dict(self) -> dict[str, object]:
        return {"indices": list(self.indices), "poly": self.poly}


@dataclass(frozen=True, slots=True)
class ChartSpec:
    dim: int
    gamma_entries: tuple[GammaEntry, ...]
    n_work: int | None = None
    h_order: int | None = None

    def to_dict(self) -> dict[str, object]:
        data: dict[str, object] = {
            "dim": self.dim,
            "gamma": [entry.to_dict() for entry in self.gamma_entries],
        }
        if self.n_work is not None:
            data["n_work"] = self.n_work
        if self.h_order is not None:
            data["h_order"] = self.h_order
        return data


def _optional_int(document: dict, name: str) -> int | None:
    value = document.get(name)
    if value is None:
        return None
    if not isinstance(value, int) or isinstance(value, bool):
        raise ChartValidationError(f"{name} must be an integer, got {value!r}")
    return value


def _parse_entry(raw: object, position: int, dim: int) -> GammaEntry:
    if not isinstance(raw, dict):
        raise ChartValidationError(f"gamma entry {position} must be an object")
    indices = raw.get("indices")
    poly = raw.get("poly")
    if (
        not isinstance(indices, list)
        or len(indices) != 3
        or any(not isinstance(i, int) or isinstance(i, bool) for i in indices)
    ):
        raise ChartValidationError(f"gamma entry {position} needs three integer indices")
    if any(not 1 <= i <= dim for i in indices):
        raise ChartValidationError(
            f"gamma entry {position} has indices {indices} outside 1..{dim}"
        )
    if not isinstance(poly, str):
        raise ChartValidationError(f"gamma entry {position} needs a polynomial string")
    return GammaEntry(indices=(indices[0], indices[1], indices[2]), poly=poly)


def parse_chart(text: bytes | str) -> ChartSpec:
    """Parse and validate a chart document.

    Entries naming permutations of the same triple must agree as polynomials.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ChartParseError(f"Chart document is not UTF-8: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChartParseError(
            f"Malformed chart document at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(document, dict):
        raise ChartValidationError("Chart document must be a JSON object")

    dim = require_even_dimension(document.get("dim"))
    raw_entries = document.get("gamma", [])
    if not isinstance(raw_entries, list):
        raise ChartValidationError("gamma must be a list of entries")
    entries = tuple(_parse_entry(raw, n + 1, dim) for n, raw in enumerate(raw_entries))

    ring = coefficient_ring(dim)
    seen: dict[tuple[int, ...], tuple[GammaEntry, object]] = {}
    for position, entry in enumerate(entries, start=1):
        try:
            poly = parse_poly(entry.poly, ring)
        except ChartParseError as exc:
            raise ChartParseError(
                f"gamma entry {position} {list(entry.indices)}: {exc}"
            ) from exc
        if depends_on_t(poly):
            raise ChartValidationError(
                f"gamma entry {position} {list(entry.indices)} uses reserved t"
            )
        key = tuple(sorted(entry.indices))
        if key in seen and seen[key][1] != poly:
            raise ChartValidationError(
                f"Conflicting gamma entries {list(seen[key][0].indices)}"
                f" ({render_poly(seen[key][1])}) and {list(entry.indices)}"
                f" ({render_poly(poly)})"
            )
        seen[key] = (entry, poly)

    n_work = _optional_int(document, "n_work")
    h_order = _optional_int(document, "h_order")
    require_truncation(
        DEFAULT_N_WORK if n_work is None else n_work,
        DEFAULT_H_ORDER if h_order is None else h_order,
    )
    log.debug("Parsed chart: dim=%s, %s gamma entries", dim, len(entries))
    return ChartSpec(dim=dim, gamma_entries=entries, n_work=n_work, h_order=h_order)


def load_chart(path: Path | str) -> ChartSpec:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ChartParseError(f"Cannot read chart file {path}: {exc.strerror}") from exc
    return parse_chart(data)


def build_chart(
    spec: ChartSpec, *, n_work: int | None = None, h_order: int | None = None
) -> Chart:
    """The engine chart; explicit truncations beat the ones in the document."""
    ring = coefficient_ring(spec.dim)
    entries = [
        (tuple(i - 1 for i in entry.indices), parse_poly(entry.poly, ring))
        for entry in spec.gamma_entries
    ]
    chart = Chart.from_entries(
        spec.dim,
        entries,
        n_work=_pick(n_work, spec.n_work, DEFAULT_N_WORK),
        h_order=_pick(h_order, spec.h_order, DEFAULT_H_ORDER),
    )
    chart.warn_if_inaccurate()
    return chart


def _pick(*values: int | None) -> int:
    return next(value for value in values if value is not None)


__all__ = ["ChartSpec", "GammaEntry", "build_chart", "load_chart", "parse_chart"]
