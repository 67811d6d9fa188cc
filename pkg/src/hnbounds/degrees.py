"""Degree calculus on parabolic facets.

A bundle's degree data enters only through a :class:`DegreeVector`, the
linear functional d on the root lattice with d(alpha_i) given for each
simple root. From it we read numerical invariants, shape slopes, the
degree of each parabolic, the canonical (maximal degree) facet and the
explicit instability bounds built from the b_{mu,P} coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from ._checks import as_fraction, require_prime
from .errors import AmbiguityError, ConsistencyError, DomainError, HypothesisError, ValidationError
from .parabolic import (
    Facet,
    all_standard_facets,
    elementary_set,
    psi_size,
    root_sum,
    u_set,
)
from .reports import BoundReport
from .rootsystem import RootSystem, WeylElement, as_root, bilinear, pair_coroot


@dataclass(frozen=True)
class DegreeVector:
    rs: RootSystem
    values: tuple  # d(alpha_i) for i = 1..rank

    def __post_init__(self):
        vals = tuple(as_fraction(v, "d") for v in self.values)
        if len(vals) != self.rs.rank:
            raise ValidationError(f"degree vector has {len(vals)} entries, rank is {self.rs.rank}", "d")
        object.__setattr__(self, "values", vals)

    def __call__(self, x: Sequence) -> Fraction:
        """Pair with a vector given in simple-root coordinates."""
        return sum((c * v for c, v in zip(x, self.values) if c), Fraction(0))

    def transported(self, w: WeylElement) -> "DegreeVector":
        """The functional w.d, i.e. x -> d(w^{-1} x)."""
        winv = w.inverse()
        return DegreeVector(self.rs, tuple(self(winv.apply(self.rs.simple_root(i))) for i in range(1, self.rs.rank + 1)))


def degree_vector(rs: RootSystem, values: Sequence) -> DegreeVector:
    return DegreeVector(rs, tuple(values))


@dataclass(frozen=True)
class InvariantProfile:
    facet: Facet
    n: Mapping  # vertex index -> n(P; lambda_i)
    psi_sizes: Mapping  # vertex index -> |Psi(P, lambda_i)|

    def __post_init__(self):
        n = {int(k): as_fraction(v, "n") for k, v in self.n.items()}
        psi = {int(k): int(v) for k, v in self.psi_sizes.items()}
        if set(n) != set(self.facet.I):
            raise ValidationError(
                f"invariants given for {sorted(n)}, facet vertices are {list(self.facet.indices)}", "n"
            )
        if set(psi) != set(self.facet.I) or any(v <= 0 for v in psi.values()):
            raise ValidationError("psi_sizes must be positive and indexed by the facet's vertices", "psi_sizes")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "psi_sizes", psi)

    def __hash__(self):
        return hash((self.facet, tuple(sorted(self.n.items()))))

    def slope(self, i: int) -> Fraction:
        """mu(E_P(V_{lambda_i})) = n(P; lambda_i) / |Psi(P, lambda_i)|."""
        return self.n[i] / self.psi_sizes[i]


def profile_from_invariants(f: Facet, n: Mapping) -> InvariantProfile:
    """Attach the facet's Psi sizes to user-supplied invariants."""
    return InvariantProfile(f, dict(n), {i: psi_size(f, i) for i in f.I})


def numerical_invariants(f: Facet, d: DegreeVector) -> InvariantProfile:
    """n(P; lambda_i) = sum of d over Psi(P, lambda_i), for each vertex i."""
    _same_system(f, d)
    n = {}
    for i in f.I:
        psi = elementary_set(f, {i: 1})
        n[i] = sum((d(a) for a in psi), Fraction(0))
    return InvariantProfile(f, n, {i: psi_size(f, i) for i in f.I})


def y_vector(profile: InvariantProfile) -> tuple:
    """y(P) = sum_i n(P; lambda_i)/|Psi(P, lambda_i)| * lambda_i^vee."""
    f = profile.facet
    y = [Fraction(0)] * f.rs.rank
    for i in f.indices:
        c = profile.slope(i)
        if c:
            y = [a + c * b for a, b in zip(y, f.vertex_coweight(i))]
    return tuple(y)


def shape_slope(profile: InvariantProfile, alpha: Sequence) -> Fraction:
    """Slope of E_P(V_S(alpha)) as the shape-weighted sum of vertex slopes."""
    f = profile.facet
    alpha = as_root(f.rs, alpha)
    if alpha not in set(u_set(f)):
        raise DomainError(f"{alpha} is not in U(P) for {f}", "alpha")
    coeffs = f.level_vector(alpha)
    return sum((c * profile.slope(i) for c, i in zip(coeffs, f.indices) if c), Fraction(0))


def parabolic_degree(f: Facet, d: DegreeVector) -> Fraction:
    """deg of the parabolic: sum of d over U(P); Levi roots cancel in +- pairs."""
    _same_system(f, d)
    return sum((d(a) for a in u_set(f)), Fraction(0))


@dataclass(frozen=True)
class CanonicalReduction:
    facet: Facet
    degree: Fraction
    profile: InvariantProfile

    @property
    def semistable(self) -> bool:
        return not self.facet.I


def canonical_facet(rs: RootSystem, d: DegreeVector) -> CanonicalReduction:
    """Standard facet of maximal degree; ties go to the largest parabolic.

    Ties whose minimal members (under inclusion of I) are not unique raise
    :class:`AmbiguityError` listing them.
    """
    if d.rs != rs:
        raise ValidationError("degree vector belongs to a different root system", "d")
    scored = [(f, parabolic_degree(f, d)) for f in all_standard_facets(rs)]
    best = max(deg for _, deg in scored)
    tied = [f for f, deg in scored if deg == best]
    minimal = [f for f in tied if not any(g.I < f.I for g in tied)]
    if len(minimal) > 1:
        raise AmbiguityError(
            f"{len(minimal)} incomparable facets tie at degree {best}: "
            + ", ".join(str(list(f.indices)) for f in minimal),
            candidates=[list(f.indices) for f in minimal],
        )
    f = minimal[0]
    return CanonicalReduction(f, best, numerical_invariants(f, d))


def slope_transfer(
    fP: Facet, profile: InvariantProfile, mu_vertex: int, d: DegreeVector | None = None
) -> Fraction:
    """Slope of the elementary module of the maximal facet Q = {mu} containing P.

    mu(E_Q(V_mu)) = sum over vertices lambda of P of
    <mu, lambda^vee>/<mu, mu^vee> * mu(E_P(V_lambda)).
    With ``d`` given, the result is checked against the invariants of Q
    computed directly from d.
    """
    if profile.facet != fP:
        raise ValidationError("profile does not belong to the given facet", "profile")
    if mu_vertex not in fP.I:
        raise DomainError(f"{mu_vertex} is not a vertex of {fP}", "mu_vertex")
    mu = fP.vertex(mu_vertex)
    norm = bilinear(fP.rs, mu, fP.vertex_coweight(mu_vertex))
    total = Fraction(0)
    for i in fP.indices:
        coeff = bilinear(fP.rs, mu, fP.vertex_coweight(i)) / norm
        total += coeff * profile.slope(i)
    if d is not None:
        fQ = Facet(fP.rs, frozenset({mu_vertex}), fP.chamber)
        direct = numerical_invariants(fQ, d).slope(mu_vertex)
        if direct != total:
            raise ConsistencyError(f"slope transfer gives {total}, direct invariant slope at Q is {direct}")
    return total


def b_coefficients(f: Facet) -> dict:
    """b_{mu,P} with sum over U(P) of alpha = sum over vertices of b_{mu,P} mu."""
    if not f.I:
        raise DomainError("b coefficients need a proper parabolic (nonempty I)", "I")
    return dict(_b_coefficients(f))


@lru_cache(maxsize=None)
def _b_coefficients(f: Facet) -> tuple:
    rs = f.rs
    s = root_sum(u_set(f))
    if f.chamber is not None:
        s = f.chamber.inverse().apply(s)
    coords = {i: pair_coroot(rs, s, i) for i in range(1, rs.rank + 1)}
    stray = [i for i, c in coords.items() if c and i not in f.I]
    if stray:
        raise ConsistencyError(f"sum of U(P) has weight coordinates outside I at {stray}")
    b = tuple((i, coords[i]) for i in f.indices)
    if any(v <= 0 for _, v in b):
        raise ConsistencyError(f"non-positive b coefficient for {f}: {dict(b)}")
    return b


def weight_sum(f: Facet) -> Fraction:
    """sum over vertices mu of b_{mu,P} <mu, mu^vee>."""
    b = b_coefficients(f)
    return sum((b[i] * bilinear(f.rs, f.vertex(i), f.vertex_coweight(i)) for i in f.indices), Fraction(0))


def instability_bound_66(f: Facet, L_max_omega, p: int) -> tuple[BoundReport, BoundReport]:
    """Bounds on deg_{HN,infinity} E and on deg_HN of the adjoint bundle.

    Only valid when mu_max(Omega_X) > 0, i.e. ``L_max_omega`` > 0.
    """
    L = as_fraction(L_max_omega, "L_max_omega")
    require_prime(p)
    if L <= 0:
        raise HypothesisError(
            "the bound needs L_max(Omega_X) > 0; otherwise semistable bundles are strongly semistable",
            "L_max_omega",
        )
    ws = weight_sum(f)
    detail = {"facet": list(f.indices)}
    return (
        BoundReport.build("deg_hn_infinity_bound", detail, weight_sum=ws, L_max_omega=L, p=p),
        BoundReport.build("adjoint_deg_hn_bound", detail, dim_g=f.rs.dim_g, weight_sum=ws, L_max_omega=L, p=p),
    )


def b_of_G(rs: RootSystem) -> BoundReport:
    """b(G) = 2 dim g * max over proper standard parabolics of the weight sum."""
    best_f, best = None, None
    for f in all_standard_facets(rs, include_empty=False):
        ws = weight_sum(f)
        if best is None or ws > best:
            best_f, best = f, ws
    return BoundReport.build(
        "b_of_G", {"argmax_facet": list(best_f.indices)}, dim_g=rs.dim_g, max_weight_sum=best
    )


def semistability_threshold(rs: RootSystem, L_max_omega, p: int) -> tuple[bool, BoundReport]:
    """Whether p > b(G) L_max(Omega_X), which makes E semistable iff E(g) is."""
    L = as_fraction(L_max_omega, "L_max_omega")
    require_prime(p)
    if L <= 0:
        raise HypothesisError("the threshold criterion assumes L_max(Omega_X) > 0", "L_max_omega")
    report = BoundReport.build("semistability_threshold", b_of_G=b_of_G(rs).value, L_max_omega=L)
    return p > report.value, report


def adjoint_sandwich_check(degHN_E, degHN_adj, dim_g: int, dim_l: int) -> bool:
    """(dim g + dim l) deg_HN E <= deg_HN E(g) <= 2 dim g deg_HN E."""
    if dim_g <= 0 or dim_l <= 0 or dim_l > dim_g:
        raise ValidationError("need 0 < dim_l <= dim_g", "dim")
    e = as_fraction(degHN_E, "degHN_E")
    a = as_fraction(degHN_adj, "degHN_adj")
    return (dim_g + dim_l) * e <= a <= 2 * dim_g * e


def _same_system(f: Facet, d: DegreeVector) -> None:
    if f.rs != d.rs:
        raise ValidationError("facet and degree vector live in different root systems", "d")


__all__ = [
    "DegreeVector",
    "InvariantProfile",
    "CanonicalReduction",
    "degree_vector",
    "profile_from_invariants",
    "numerical_invariants",
    "y_vector",
    "shape_slope",
    "parabolic_degree",
    "canonical_facet",
    "slope_transfer",
    "b_coefficients",
    "weight_sum",
    "instability_bound_66",
    "b_of_G",
    "semistability_threshold",
    "adjoint_sandwich_check",
]
