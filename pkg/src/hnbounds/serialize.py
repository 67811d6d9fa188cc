"""Exact JSON encoding: rationals travel as "p/q" strings, never floats."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import ValidationError


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text, location: str = "value") -> Fraction:
    """Read an int or a "p/q" / "p" string. Floats and decimal strings are refused."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValidationError(f"{location}: expected an exact rational, got {text!r}", location)
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValidationError(f"{location}: expected a rational string, got {type(text).__name__}", location)
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ValidationError(f"{location}: {text!r} is not of the form p or p/q", location)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{location}: cannot read {text!r} as p/q", location)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(obj)]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def rational_vector(xs) -> list[str]:
    return [frac_str(x) for x in xs]


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, no insignificant whitespace."""
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
