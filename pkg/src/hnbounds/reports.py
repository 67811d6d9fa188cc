"""Named bound values that carry their inputs.

A report's value is always computed from its inputs through the formula
registered under its name, so ``report.check()`` re-derives it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .errors import ValidationError


def _lmax_formula(r, p, mu_max, L_max_omega):
    if L_max_omega <= 0:
        return mu_max
    return mu_max + Fraction(r - 1) * L_max_omega / p


def _lmin_formula(r, p, mu_min, L_max_omega):
    if L_max_omega <= 0:
        return mu_min
    return mu_min - Fraction(r - 1) * L_max_omega / p


FORMULAS: dict[str, Callable[..., Fraction]] = {
    "deg_hn_infinity_bound": lambda weight_sum, L_max_omega, p: weight_sum * L_max_omega / p,
    "adjoint_deg_hn_bound": lambda dim_g, weight_sum, L_max_omega, p: Fraction(2 * dim_g, p) * weight_sum * L_max_omega,
    "b_of_G": lambda dim_g, max_weight_sum: 2 * dim_g * max_weight_sum,
    "semistability_threshold": lambda b_of_G, L_max_omega: b_of_G * L_max_omega,
    "lmax_bound": _lmax_formula,
    "lmin_bound": _lmin_formula,
    "rep_bound": lambda dim_v, jh, L_max_omega, p: Fraction((dim_v - 1) * jh) * L_max_omega / p,
}


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: Fraction
    inputs: tuple  # ((name, rational), ...) in formula argument order
    detail: Mapping = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def build(cls, name: str, detail: Mapping | None = None, **inputs) -> "BoundReport":
        if name not in FORMULAS:
            raise ValidationError(f"unknown bound {name!r}", "name")
        value = Fraction(FORMULAS[name](**inputs))
        return cls(name, value, tuple((k, Fraction(v)) for k, v in inputs.items()), dict(detail or {}))

    def recompute(self) -> Fraction:
        return Fraction(FORMULAS[self.name](**dict(self.inputs)))

    def check(self) -> bool:
        return self.recompute() == self.value
