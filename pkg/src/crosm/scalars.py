"""Scalar handling for exact (Fraction) and float computations.

A computation is *exact* when its tolerance is ``None``; every value is then a
``fractions.Fraction`` and equality is decided with zero tolerance.  In float
mode values are Python floats and every equality test carries a tolerance.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

DEFAULT_TOL = 1e-9
PIVOT_TOL = 1e-12
MODES = ("exact", "float")


class Irrational(ArithmeticError):
    """Raised when an exact square root does not exist."""


def default_mode() -> str:
    mode = os.environ.get("CROSM_MODE", "exact").strip().lower()
    if mode not in MODES:
        raise ValueError(f"CROSM_MODE must be one of {MODES}, got {mode!r}")
    return mode


def tol_for(mode: str, tol: float | None = None) -> float | None:
    """Tolerance used for a mode: None in exact mode."""
    if mode == "exact":
        return None
    if mode != "float":
        raise ValueError(f"unknown mode {mode!r}")
    t = DEFAULT_TOL if tol is None else float(tol)
    if t <= 0:
        raise ValueError("tolerance must be positive")
    return t


def parse_scalar(text, mode: str = "exact") -> Scalar:
    """Parse ``'3/5'``, ``'0.25'``, ints, Fractions or floats into the mode's type."""
    if isinstance(text, bool):
        raise ValueError(f"not a number: {text!r}")
    if mode == "float":
        if isinstance(text, str) and "/" in text:
            return float(Fraction(text.strip()))
        return float(text)
    if isinstance(text, float):
        # decimal literal semantics: 0.1 -> 1/10
        return Fraction(repr(text))
    if isinstance(text, str):
        return Fraction(text.strip())
    return Fraction(text)


def convert(x, exact: bool) -> Scalar:
    if exact:
        return x if isinstance(x, Fraction) else Fraction(x)
    return float(x)


def is_zero(x, tol: float | None) -> bool:
    if tol is None:
        return x == 0
    return abs(x) <= tol


def is_exact_value(x) -> bool:
    return isinstance(x, (int, Fraction))


def exact_sqrt(x: Fraction) -> Fraction | None:
    """Square root of a non-negative rational, or None when irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def sqrt(x) -> Scalar:
    """Exact root for rationals that are perfect squares; raise Irrational otherwise.

    Floats go through ``math.sqrt``.
    """
    if isinstance(x, float):
        if x < 0:
            raise ValueError("square root of a negative number")
        return math.sqrt(x)
    r = exact_sqrt(x)
    if r is None:
        if x < 0:
            raise ValueError("square root of a negative number")
        raise Irrational(f"sqrt({x}) is irrational")
    return r


def sign(x) -> int:
    return (x > 0) - (x < 0)


def fmt(x) -> str:
    """Canonical text form: ``num/den`` for rationals, ``repr`` for floats."""
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_json(x):
    """JSON form of a scalar: ``{num, den}`` for rationals, a number for floats."""
    if isinstance(x, float):
        return x
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def max_abs(values, exact: bool = True) -> Scalar:
    m = Fraction(0) if exact else 0.0
    for v in values:
        a = abs(v)
        if a > m:
            m = a
    return m
