"""SL(V) weight degrees and the bounds on associated bundles built from them.

Also the rational extension of an integer-valued functional from a
finite-index sublattice, which is how the degree of a G-bundle on X^*(G)
extends to X^*(R(G)) and then to X^*(T).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from ._checks import as_fraction, require_prime
from .errors import HypothesisError, ValidationError


@dataclass(frozen=True)
class DominantWeightSL:
    """sum_i m_i omega'_i for SL(V), dim V = n."""

    n: int
    m: tuple

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise ValidationError("dim V must be an integer >= 2", "n")
        m = tuple(self.m)
        if len(m) != self.n - 1:
            raise ValidationError(f"need {self.n - 1} coefficients for SL_{self.n}, got {len(m)}", "m")
        if any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in m):
            raise ValidationError("weight coefficients must be non-negative integers", "m")
        object.__setattr__(self, "m", m)

    def __add__(self, other: "DominantWeightSL") -> "DominantWeightSL":
        if other.n != self.n:
            raise ValidationError("weights of different SL(V)", "n")
        return DominantWeightSL(self.n, tuple(a + b for a, b in zip(self.m, other.m)))


def weight_degree(lam: DominantWeightSL) -> int:
    """|lambda| = sum_i i m_i; L(lambda) sits inside V^{(x)|lambda|}."""
    return sum(i * m for i, m in enumerate(lam.m, start=1))


def jh_degree(factors: Sequence[DominantWeightSL]) -> int:
    """Largest weight degree among the composition factors' highest weights."""
    factors = list(factors)
    if not factors:
        raise ValidationError("JH-degree needs at least one composition factor", "factors")
    return max(weight_degree(f) for f in factors)


def module_bound_82(jh: int, LmaxV, LminV) -> tuple[Fraction, Fraction]:
    """(jh L_min(E(V)), jh L_max(E(V))): the interval containing L_min(E(W)) and L_max(E(W))."""
    if isinstance(jh, bool) or not isinstance(jh, int) or jh < 0:
        raise ValidationError("JH-degree must be a non-negative integer", "jh")
    hi = as_fraction(LmaxV, "LmaxV")
    lo = as_fraction(LminV, "LminV")
    if hi < lo:
        raise ValidationError("need L_max(E(V)) >= L_min(E(V))", "LmaxV")
    return jh * lo, jh * hi


def rep_bound_83(dimV: int, jh_rho_prime: int, L_max_omega, p: int) -> Fraction:
    """(dim V - 1) JH(rho') L_max(Omega_X) / p, bounding L_max(E(gl W)) for semistable E."""
    if isinstance(dimV, bool) or not isinstance(dimV, int) or dimV < 2:
        raise ValidationError("dim V must be an integer >= 2", "dimV")
    if isinstance(jh_rho_prime, bool) or not isinstance(jh_rho_prime, int) or jh_rho_prime < 0:
        raise ValidationError("JH-degree must be a non-negative integer", "jh")
    require_prime(p)
    L = as_fraction(L_max_omega, "L_max_omega")
    if L <= 0:
        raise HypothesisError(
            "needs L_max(Omega_X) > 0; otherwise the extension is strongly semistable", "L_max_omega"
        )
    return Fraction((dimV - 1) * jh_rho_prime) * L / p


@dataclass(frozen=True)
class LatticeFunctional:
    ambient_rank: int
    sublattice_basis: tuple  # square integer matrix, columns generate the sublattice
    values: tuple
    extension: tuple

    @property
    def index(self) -> int:
        return abs(int(la.det(la.frac_matrix(self.sublattice_basis))))

    def __call__(self, x: Sequence) -> Fraction:
        return la.dot(self.extension, x)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.sublattice_basis)


def extend_functional(ambient_rank: int, sublattice_basis: Sequence[Sequence[int]], values: Sequence) -> LatticeFunctional:
    """Unique Q-linear extension of a functional given on a finite-index sublattice.

    With ``d'`` the extension of a bundle's degree map, d'(lambda) is the
    slope of the bundle associated to the simple module L(lambda).
    """
    basis = tuple(tuple(row) for row in sublattice_basis)
    if len(basis) != ambient_rank or any(len(row) != ambient_rank for row in basis):
        raise ValidationError(f"sublattice basis must be a {ambient_rank}x{ambient_rank} matrix", "sublattice_basis")
    for row in basis:
        for x in row:
            if isinstance(x, bool) or Fraction(x).denominator != 1:
                raise ValidationError("sublattice basis entries must be integers", "sublattice_basis")
    basis = tuple(tuple(int(x) for x in row) for row in basis)
    vals = tuple(as_fraction(v, "values") for v in values)
    if any(v.denominator != 1 for v in vals):
        raise ValidationError("values on the sublattice basis must be integers", "values")
    if len(vals) != ambient_rank:
        raise ValidationError(f"need {ambient_rank} values, got {len(vals)}", "values")
    bmat = la.frac_matrix(basis)
    if la.det(bmat) == 0:
        raise ValidationError("sublattice basis is singular, so the index is not finite", "sublattice_basis")
    # ext . column_j = values_j  <=>  B^T ext = values
    ext = la.solve(la.transpose(bmat), vals)
    return LatticeFunctional(ambient_rank, basis, vals, ext)
