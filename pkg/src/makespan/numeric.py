"""Scalar abstraction: every quantity runs either as a 64-bit float or an exact rational.

A run picks one mode and sticks with it; instances never mix modes. Rational
mode is backed by :class:`fractions.Fraction` (arbitrary-precision integers,
always in lowest terms), so sequences of +, -, *, / reproduce exact real
arithmetic. Float mode is plain IEEE-754 round-to-nearest.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Union

from .errors import UsageError

Scalar = Union[float, Fraction]


class Mode(enum.Enum):
    F64 = "f64"
    RATIONAL = "rational"

    @classmethod
    def from_name(cls, name: str) -> "Mode":
        for mode in cls:
            if mode.value == name:
                return mode
        raise UsageError(f"unknown numeric mode {name!r} (expected 'f64' or 'rational')")


def mode_of(x: Scalar) -> Mode:
    if isinstance(x, Fraction):
        return Mode.RATIONAL
    if isinstance(x, float):
        return Mode.F64
    raise UsageError(f"not a Scalar: {x!r} ({type(x).__name__})")


def _check_same_mode(a: Scalar, b: Scalar) -> None:
    if mode_of(a) is not mode_of(b):
        raise UsageError(
            f"mixed-mode arithmetic: {type(a).__name__} with {type(b).__name__}"
        )


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    """Exact sum in rational mode, IEEE round-to-nearest in float mode."""
    _check_same_mode(a, b)
    return a + b


def scalar_sub(a: Scalar, b: Scalar) -> Scalar:
    _check_same_mode(a, b)
    return a - b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    _check_same_mode(a, b)
    return a * b


def scalar_div(a: Scalar, b: Scalar) -> Scalar:
    """Exact quotient in rational mode. b must be nonzero."""
    _check_same_mode(a, b)
    if b == 0:
        raise ZeroDivisionError("scalar division by zero")
    return a / b


def parse_scalar(text: str, mode: Mode) -> Scalar:
    """Parse a decimal string (or 'p/q') into a Scalar of the given mode.

    Rational mode converts decimals exactly: "2.5" becomes 5/2 with no
    intermediate binary rounding. Float mode is the usual nearest float.
    """
    text = text.strip()
    if not text:
        raise UsageError("empty number")
    try:
        if mode is Mode.RATIONAL:
            return Fraction(text)
        if "/" in text:
            num, den = text.split("/", 1)
            return float(num) / float(den)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad number {text!r}: {exc}") from exc


def scalar_to_str(x: Scalar) -> str:
    """Lossless text form: 'p/q' (or 'p') for rationals, shortest repr for floats."""
    if isinstance(x, Fraction):
        return str(x)
    return repr(x)


def as_float(x: Scalar) -> float:
    return float(x)
