"""Scalar arithmetic kinds and the comparison policy.

Every matrix carries one of two scalar kinds: exact rationals backed by
``fractions.Fraction`` (the default, used for all equality contracts) and
IEEE float64.  Float mode compares equalities at relative tolerance 1e-9
and checks inequalities with a 1e-12 relative slack to absorb rounding;
rational mode compares exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

RATIONAL = "rational"
FLOAT64 = "float64"
KINDS = (RATIONAL, FLOAT64)

REL_EQ = 1e-9
ABS_EQ = 1e-12
INEQ_SLACK = 1e-12


def coerce(value, kind: str) -> Scalar:
    """Coerce a number (or rational literal string) into the given kind.

    Rational mode accepts int, Fraction, and strings like "3", "-7/2" or
    "0.25" (decimals are parsed exactly).  Floats are rejected in rational
    mode: silently expanding a binary float into a fraction invites
    surprises in exactness contracts.
    """
    if kind == RATIONAL:
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot use {type(value).__name__} as an exact rational")
    if kind == FLOAT64:
        if isinstance(value, str):
            return float(Fraction(value))
        return float(value)
    raise ValueError(f"unknown scalar kind: {kind!r}")


def zero(kind: str) -> Scalar:
    return Fraction(0) if kind == RATIONAL else 0.0


def one(kind: str) -> Scalar:
    return Fraction(1) if kind == RATIONAL else 1.0


def parse_scalar(text: str, kind: str) -> Scalar:
    """Parse a decimal or "p/q" literal; exact in rational mode."""
    return coerce(text.strip(), kind)


def format_scalar(x: Scalar, kind: str) -> str:
    """Serialize a scalar as a decimal or "p/q" string (lossless)."""
    if kind == RATIONAL:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def eq_scalar(x: Scalar, y: Scalar, kind: str) -> bool:
    """Equality under the kind's policy: exact, or rel. tol. 1e-9."""
    if kind == RATIONAL:
        return x == y
    return math.isclose(x, y, rel_tol=REL_EQ, abs_tol=ABS_EQ)


def leq_scalar(x: Scalar, y: Scalar, kind: str) -> bool:
    """x <= y, with a 1e-12-scaled slack in float mode."""
    if kind == RATIONAL:
        return x <= y
    return x <= y + INEQ_SLACK * max(1.0, abs(x), abs(y))
