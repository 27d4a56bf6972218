"""Run settings for the command line, read from the environment.

Precedence is flag > chart file > environment > the defaults below.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass, replace
from typing import Final, Literal

from weyl_core.validation import ConfigurationError

CheckMode = Literal["fast", "full"]

# ---------- Defaults ----------
DEFAULT_N_WORK: Final[int] = 6
DEFAULT_H_ORDER: Final[int] = 2
DEFAULT_SEED: Final[int] = 20240601
DEFAULT_CHECK_MODE: Final[CheckMode] = "fast"
DEFAULT_LOG_LEVEL: Final[str] = "WARNING"

FAST_SAMPLES: Final[int] = 3
FULL_SAMPLES: Final[int] = 20

LOG_FORMAT: Final[str] = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"

CHECK_MODES: Final[tuple[str, ...]] = ("fast", "full")
LOG_LEVELS: Final[tuple[str, ...]] = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True, slots=True)
class Settings:
    # None means "not set in the environment"; chart files may still supply a value
    n_work: int | None = None
    h_order: int | None = None
    log_level: str = DEFAULT_LOG_LEVEL
    check_mode: CheckMode = DEFAULT_CHECK_MODE
    seed: int = DEFAULT_SEED

    @property
    def samples(self) -> int:
        return FULL_SAMPLES if self.check_mode == "full" else FAST_SAMPLES

    def with_overrides(
        self, *, check_mode: str | None = None, seed: int | None = None
    ) -> Settings:
        """Apply command-line values that were given; None keeps the current one."""
        return replace(
            self,
            check_mode=self.check_mode if check_mode is None else normalize_check_mode(check_mode),
            seed=self.seed if seed is None else seed,
        )

    def resolve_truncation(
        self,
        *,
        flag_n_work: int | None,
        flag_h_order: int | None,
        chart_n_work: int | None,
        chart_h_order: int | None,
    ) -> tuple[int, int]:
        n_work = _first(flag_n_work, chart_n_work, self.n_work, DEFAULT_N_WORK)
        h_order = _first(flag_h_order, chart_h_order, self.h_order, DEFAULT_H_ORDER)
        return n_work, h_order


def _first(*values: int | None) -> int:
    return next(value for value in values if value is not None)


def _env_int(env: Mapping[str, str], name: str) -> int | None:
    raw = env.get(name)
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from exc


def normalize_log_level(raw: str) -> str:
    level = raw.strip().upper()
    if level not in LOG_LEVELS:
        raise ConfigurationError(f"Unknown log level: {raw!r}")
    return level


def normalize_check_mode(raw: str) -> CheckMode:
    mode = raw.strip().lower()
    if mode not in CHECK_MODES:
        raise ConfigurationError(f"Check mode must be one of {CHECK_MODES}, got {raw!r}")
    return mode  # type: ignore[return-value]


def load_settings(env: Mapping[str, str] | None = None) -> Settings:
    """Read FEDOSOV_* variables; ``env`` defaults to ``os.environ``."""
    source = os.environ if env is None else env
    n_work = _env_int(source, "FEDOSOV_N_WORK")
    h_order = _env_int(source, "FEDOSOV_H_ORDER")
    seed = _env_int(source, "FEDOSOV_SEED")
    return Settings(
        n_work=n_work,
        h_order=h_order,
        log_level=normalize_log_level(source.get("FEDOSOV_LOG_LEVEL", DEFAULT_LOG_LEVEL)),
        check_mode=normalize_check_mode(
            source.get("FEDOSOV_CHECK_MODE", DEFAULT_CHECK_MODE)
        ),
        seed=DEFAULT_SEED if seed is None else seed,
    )


def configure_logging(level: str = DEFAULT_LOG_LEVEL) -> None:
    """Send log records to stderr so stdout stays deterministic."""
    logging.basicConfig(
        level=getattr(logging, normalize_log_level(level)),
        format=LOG_FORMAT,
    )


__all__ = [
    "CHECK_MODES",
    "CheckMode",
    "DEFAULT_CHECK_MODE",
    "DEFAULT_H_ORDER",
    "DEFAULT_LOG_LEVEL",
    "DEFAULT_N_WORK",
    "DEFAULT_SEED",
    "FAST_SAMPLES",
    "FULL_SAMPLES",
    "LOG_FORMAT",
    "Settings",
    "configure_logging",
    "load_settings",
    "normalize_check_mode",
    "normalize_log_level",
]
