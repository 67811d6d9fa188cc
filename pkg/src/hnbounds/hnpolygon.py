"""Vector-bundle numerics: HN polygons, Frobenius towers, Hilbert coefficients.

An HN filtration is recorded by the ranks and degrees of its successive
quotients. Everything is exact; degrees may be rational.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from . import _linalg as la
from ._checks import as_fraction, require_prime
from .errors import ConsistencyError, ValidationError


@dataclass(frozen=True)
class HNData:
    quotients: tuple  # ((rank, degree), ...)

    @property
    def ranks(self) -> tuple:
        return tuple(r for r, _ in self.quotients)

    @property
    def slopes(self) -> tuple:
        return tuple(d / r for r, d in self.quotients)

    @property
    def rank(self) -> int:
        return sum(self.ranks)

    @property
    def degree(self) -> Fraction:
        return sum((d for _, d in self.quotients), Fraction(0))

    @property
    def mu_max(self) -> Fraction:
        return self.slopes[0]

    @property
    def mu_min(self) -> Fraction:
        return self.slopes[-1]

    def points(self) -> list[tuple[int, Fraction]]:
        """Vertices p(E_0), ..., p(E_m) of the polygon, starting at the origin."""
        pts = [(0, Fraction(0))]
        for r, d in self.quotients:
            pts.append((pts[-1][0] + r, pts[-1][1] + d))
        return pts

    def scaled(self, factor) -> "HNData":
        """Same ranks, degrees multiplied by ``factor`` (what a Frobenius pull-back does to a strongly semistable tower)."""
        f = Fraction(factor)
        return make_hn([(r, d * f) for r, d in self.quotients])


def make_hn(pairs: Iterable[Sequence]) -> HNData:
    """Validate (rank, degree) pairs as the quotients of an HN filtration."""
    qs = []
    for k, pair in enumerate(pairs):
        if len(pair) != 2:
            raise ValidationError(f"quotient {k} must be a (rank, degree) pair", f"quotients[{k}]")
        r, d = pair
        if isinstance(r, bool) or not isinstance(r, int):
            try:
                r_frac = Fraction(r)
            except (TypeError, ValueError):
                raise ValidationError(f"rank of quotient {k} is not an integer", f"quotients[{k}]")
            if r_frac.denominator != 1:
                raise ValidationError(f"rank of quotient {k} is not an integer", f"quotients[{k}]")
            r = int(r_frac)
        if r < 1:
            raise ValidationError(f"rank of quotient {k} must be positive", f"quotients[{k}]")
        qs.append((r, as_fraction(d, f"quotients[{k}]")))
    if not qs:
        raise ValidationError("an HN datum needs at least one quotient", "quotients")
    for k in range(1, len(qs)):
        if qs[k][1] / qs[k][0] >= qs[k - 1][1] / qs[k - 1][0]:
            raise ValidationError(
                f"slopes must strictly decrease, but quotient {k} has slope "
                f"{qs[k][1] / qs[k][0]} >= {qs[k - 1][1] / qs[k - 1][0]}",
                f"quotients[{k}]",
            )
    return HNData(tuple(qs))


def shoelace_twice_area(points: Sequence[tuple]) -> Fraction:
    """Twice the area of the closed polygon through ``points`` (clockwise positive)."""
    total = Fraction(0)
    n = len(points)
    for k in range(n):
        x0, y0 = points[k]
        x1, y1 = points[(k + 1) % n]
        total += Fraction(x1) * y0 - Fraction(x0) * y1
    return total


def deg_hn(h: HNData) -> Fraction:
    """sum_{i<j} r_i r_j (mu_i - mu_j), checked against twice the polygon area.

    The pair sum is regrouped by quotient: d_i is weighted by the rank after
    it minus the rank before it, which is linear in the number of quotients.
    """
    total_rank = h.rank
    before = 0
    value = Fraction(0)
    for r, d in h.quotients:
        after = total_rank - before - r
        value += d * (after - before)
        before += r
    area2 = shoelace_twice_area(h.points())
    if area2 != value:
        raise ConsistencyError(f"deg_HN formula gives {value} but twice the polygon area is {area2}")
    return value


def hn_bounds_check(h: HNData, value: Fraction | None = None) -> bool:
    """(r-1)(mu_max - mu_min) <= deg_HN <= r^2/4 (mu_max - mu_min)."""
    spread = h.mu_max - h.mu_min
    r = h.rank
    value = deg_hn(h) if value is None else value
    return (r - 1) * spread <= value <= Fraction(r * r, 4) * spread


def frobenius_sequence(hs: Sequence[HNData], p: int) -> tuple[list[Fraction], bool]:
    """Normalized degrees deg_HN((F^l)^* E) / p^l and whether they are non-decreasing.

    A decreasing step means the tower cannot come from successive
    Frobenius pull-backs of one bundle.
    """
    require_prime(p)
    if not hs:
        raise ValidationError("a Frobenius tower needs at least one level", "levels")
    values = [deg_hn(h) / Fraction(p) ** l for l, h in enumerate(hs)]
    monotone = all(a <= b for a, b in zip(values, values[1:]))
    return values, monotone


def lmax_bound_13(r: int, p: int, mu_max_E, L_max_omega) -> Fraction:
    """Upper bound on L_max(E) for a rank r bundle.

    Equal to mu_max(E) when L_max(Omega_X) <= 0, otherwise
    mu_max(E) + (r-1)/p * L_max(Omega_X).
    """
    _check_rank(r)
    require_prime(p)
    mu = as_fraction(mu_max_E, "mu_max_E")
    L = as_fraction(L_max_omega, "L_max_omega")
    if L <= 0:
        return mu
    return mu + Fraction(r - 1, p) * L


def lmin_bound_13(r: int, p: int, mu_min_E, L_max_omega) -> Fraction:
    """Lower bound on L_min(E); the dual of :func:`lmax_bound_13`."""
    return -lmax_bound_13(r, p, -as_fraction(mu_min_E, "mu_min_E"), L_max_omega)


def lmax_tensor(l1: Sequence, l2: Sequence) -> tuple[Fraction, Fraction]:
    """(L_max, L_min) of E1 (x) E2 from those of E1 and E2; both are additive."""
    a = tuple(as_fraction(x, "l1") for x in l1)
    b = tuple(as_fraction(x, "l2") for x in l2)
    for name, pair in (("l1", a), ("l2", b)):
        if len(pair) != 2 or pair[0] < pair[1]:
            raise ValidationError(f"{name} must be a pair (L_max, L_min) with L_max >= L_min", name)
    return a[0] + b[0], a[1] + b[1]


def limit_degree_bound(rank_adjoint: int, L_max_adjoint) -> Fraction:
    """deg_{HN,infinity} E <= rk E(g) * L_max(E(g)), with L_max(E(g)) supplied by the caller."""
    _check_rank(rank_adjoint)
    return rank_adjoint * as_fraction(L_max_adjoint, "L_max_adjoint")


@dataclass(frozen=True)
class SheafNumerics:
    d: int
    a: tuple  # a_0 .. a_d
    r: int | None = None
    c1H: Fraction | None = None
    c2H: Fraction | None = None
    discriminant: Fraction | None = None

    def chi(self, m: int) -> Fraction:
        return evaluate_hilbert(self.a, m)

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in self.a)


def binomial_poly(x: int, k: int) -> Fraction:
    """binom(x, k) as the degree-k polynomial in x, so negative x is allowed."""
    num = 1
    for j in range(k):
        num *= x - j
    return Fraction(num, factorial(k))


def evaluate_hilbert(a: Sequence, m: int) -> Fraction:
    d = len(a) - 1
    return sum((Fraction(a[i]) * binomial_poly(m + d - i, d - i) for i in range(d + 1)), Fraction(0))


def hilbert_coeffs(chi_values: Sequence[tuple], d: int) -> SheafNumerics:
    """Recover a_0..a_d from d+1 samples (m, chi(X, E(mH))).

    Non-integral coefficients (impossible for a genuine sheaf) trigger a
    warning, not an error.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise ValidationError("d must be a non-negative integer", "d")
    pts = [(int(m), as_fraction(c, "chi")) for m, c in chi_values]
    if len(pts) != d + 1:
        raise ValidationError(f"need exactly {d + 1} samples for d = {d}, got {len(pts)}", "chi_values")
    ms = [m for m, _ in pts]
    if len(set(ms)) != len(ms):
        raise ValidationError("sample points m must be distinct", "chi_values")
    mat = tuple(tuple(binomial_poly(m + d - i, d - i) for i in range(d + 1)) for m in ms)
    try:
        a = la.solve(mat, [c for _, c in pts])
    except ZeroDivisionError:
        raise ValidationError("singular interpolation system", "chi_values")
    result = SheafNumerics(d, tuple(a))
    if not result.integral:
        warnings.warn(f"Hilbert coefficients {[str(x) for x in a]} are not all integers", stacklevel=2)
    return result


def discriminant(r: int, c1sq, c2) -> Fraction:
    """Delta = 2 r c_2 - (r - 1) c_1^2 (intersection numbers with H^{d-2} supplied)."""
    _check_rank(r)
    return 2 * r * as_fraction(c2, "c2") - (r - 1) * as_fraction(c1sq, "c1sq")


def _check_rank(r) -> None:
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise ValidationError(f"rank must be an integer >= 1, got {r!r}", "r")
