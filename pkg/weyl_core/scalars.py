"""Exact Gaussian-rational scalars.

Every coefficient in the engine lives in ``QQ_I``: rationals with an adjoined
imaginary unit. Elements are sympy ``GaussianRational`` values; they compare
equal only to other domain elements, so zero tests go through ``bool``.
"""

from __future__ import annotations

import math
from typing import Final

from sympy.polys.domains import QQ, QQ_I

Scalar = QQ_I.dtype

ZERO: Final = QQ_I.zero
ONE: Final = QQ_I.one
IMAG: Final = QQ_I(0, 1)
HALF: Final = QQ_I(QQ(1, 2), 0)


def rational(numerator: int, denominator: int = 1) -> Scalar:
    if denominator == 0:
        raise ZeroDivisionError("rational scalar with zero denominator")
    return QQ_I(QQ(numerator, denominator), QQ.zero)


def gaussian(re: tuple[int, int] | int, im: tuple[int, int] | int = 0) -> Scalar:
    """Build ``re + im*i`` from integers or ``(numerator, denominator)`` pairs."""
    return QQ_I(_as_qq(re), _as_qq(im))


def inverse_factorial(k: int) -> Scalar:
    return rational(1, math.factorial(k))


def real_part(value: Scalar):
    return value.x


def imag_part(value: Scalar):
    return value.y


def format_rational(value) -> str:
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def _as_qq(value):
    if isinstance(value, tuple):
        return QQ(*value)
    return QQ(value)


__all__ = [
    "HALF",
    "IMAG",
    "ONE",
    "Scalar",
    "ZERO",
    "format_rational",
    "gaussian",
    "imag_part",
    "inverse_factorial",
    "rational",
    "real_part",
]
