from __future__ import annotations


class FedosovError(Exception):
    """Base exception for every failure raised by the engine."""


class ConfigurationError(FedosovError, ValueError):
    """Raised when charts, rings or truncation parameters do not fit together."""


class ChartValidationError(ConfigurationError):
    """Raised when chart data violates the Darboux chart invariants."""


class ChartParseError(ChartValidationError):
    """Raised when a chart document or polynomial text cannot be parsed."""


class DomainError(FedosovError, ValueError):
    """Raised when an input lies outside the domain of an operation."""


class SolvabilityError(DomainError):
    """Raised when Da = b has no solution because Db does not vanish."""


class ConsistencyError(FedosovError, RuntimeError):
    """Raised when an identity that must hold by construction fails."""


def require_even_dimension(dim: int) -> int:
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ChartValidationError(f"Chart dimension must be an integer, got {dim!r}")
    if dim < 2 or dim % 2:
        raise ChartValidationError(
            f"Chart dimension must be a positive even integer, got {dim}"
        )
    return dim


def require_truncation(n_work: int, h_order: int) -> tuple[int, int]:
    if not isinstance(n_work, int) or n_work < 3:
        raise ConfigurationError(f"Working degree must be an integer >= 3, got {n_work!r}")
    if not isinstance(h_order, int) or h_order < 0:
        raise ConfigurationError(f"h-order must be a non-negative integer, got {h_order!r}")
    return n_work, h_order


def require_index(index: int, dim: int, *, what: str = "index") -> int:
    if not 0 <= index < dim:
        raise IndexError(f"{what} {index} out of range for dimension {dim}")
    return index


__all__ = [
    "ChartParseError",
    "ChartValidationError",
    "ConfigurationError",
    "ConsistencyError",
    "DomainError",
    "FedosovError",
    "SolvabilityError",
    "require_even_dimension",
    "require_index",
    "require_truncation",
]
