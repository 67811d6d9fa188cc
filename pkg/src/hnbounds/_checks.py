from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def require_prime(p, name: str = "p") -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise ValidationError(f"{name} must be a prime, got {p!r}", name)
    return p


def as_fraction(x, name: str = "value") -> Fraction:
    if isinstance(x, float):
        raise ValidationError(f"{name}: floats are not accepted, pass an exact rational", name)
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError(f"{name}: cannot read {x!r} as a rational", name)
