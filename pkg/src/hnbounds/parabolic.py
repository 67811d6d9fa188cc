"""Standard parabolic types: levels, shapes, elementary root sets and U(P).

A facet is a subset ``I`` of the simple-root indices (1-based) together
with an optional Weyl chamber ``w``. The Levi factor of the standard
parabolic P_I is generated by the torus and the root groups of the simple
roots *outside* I, so I = all indices is the Borel and I = {} is G itself.
The facet's vertices are the weights w(lambda_i), i in I.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import ConsistencyError, DomainError, ValidationError
from .rootsystem import RootSystem, WeylElement, as_root, bilinear, identity_element


@dataclass(frozen=True)
class Facet:
    rs: RootSystem
    I: frozenset
    chamber: WeylElement | None = None

    def __post_init__(self):
        I = frozenset(int(i) for i in self.I)
        bad = sorted(i for i in I if not 1 <= i <= self.rs.rank)
        if bad:
            raise ValidationError(f"facet indices {bad} outside 1..{self.rs.rank}", "I")
        object.__setattr__(self, "I", I)
        if self.chamber is not None and self.chamber.is_identity:
            object.__setattr__(self, "chamber", None)

    @property
    def indices(self) -> tuple:
        return tuple(sorted(self.I))

    @property
    def w(self) -> WeylElement:
        return self.chamber if self.chamber is not None else identity_element(self.rs)

    @property
    def is_standard(self) -> bool:
        return self.chamber is None

    def vertex(self, i: int) -> tuple:
        """The vertex w(lambda_i)."""
        return _vertex_data(self)[0][i]

    def vertex_coweight(self, i: int) -> tuple:
        """w(lambda_i^vee), as a vector under the form identification."""
        return _vertex_data(self)[1][i]

    @property
    def vertices(self) -> dict:
        return dict(_vertex_data(self)[0])

    def level_vector(self, alpha: Sequence) -> tuple:
        """(<alpha, w lambda_i^vee>)_{i in I}, in increasing order of i."""
        cow = _vertex_data(self)[1]
        return tuple(bilinear(self.rs, alpha, cow[i]) for i in self.indices)

    def __repr__(self):
        ch = "" if self.chamber is None else f", chamber={list(self.chamber.word)}"
        return f"Facet({self.rs.label}, I={list(self.indices)}{ch})"


@lru_cache(maxsize=None)
def _vertex_data(f: Facet) -> tuple:
    w = f.w
    verts = {i: w.apply(f.rs.fundamental_weights[i - 1]) for i in f.I}
    cows = {i: w.apply(f.rs.fundamental_coweights[i - 1]) for i in f.I}
    return verts, cows


def make_facet(rs: RootSystem, I: Iterable[int], chamber: WeylElement | None = None) -> Facet:
    return Facet(rs, frozenset(I), chamber)


def all_standard_facets(rs: RootSystem, include_empty: bool = True) -> list[Facet]:
    """Every standard facet, ordered by |I| then lexicographically."""
    out = []
    for k in range(0 if include_empty else 1, rs.rank + 1):
        for I in combinations(range(1, rs.rank + 1), k):
            out.append(Facet(rs, frozenset(I)))
    return out


def level_and_shape(f: Facet, alpha: Sequence) -> tuple[int, tuple]:
    """Level l(alpha) and shape S(alpha) of a positive root relative to ``f``.

    The shape is returned as a full vector in the simple-root basis
    (sum over i in I of n_i alpha_i). For a chambered facet the root is
    first carried back to the standard chamber.
    """
    alpha = as_root(f.rs, alpha)
    base = alpha
    if f.chamber is not None:
        base = tuple(int(x) for x in f.chamber.inverse().apply(alpha))
    if base not in f.rs.positive_roots:
        raise DomainError(f"{alpha} is not a positive root for this facet", "alpha")
    shape_std = tuple(c if (j + 1) in f.I else 0 for j, c in enumerate(base))
    level = sum(shape_std)
    if f.chamber is not None:
        shape = tuple(int(x) for x in f.chamber.apply(shape_std))
    else:
        shape = shape_std
    return level, shape


def shape_key(f: Facet, alpha: Sequence) -> tuple:
    """Shape of ``alpha`` as the coefficient tuple (n_i)_{i in I}; hashable."""
    return tuple(int(x) for x in f.level_vector(alpha))


def elementary_set(f: Facet, target: Mapping[int, int]) -> list[tuple]:
    """Psi(P, sum n_i lambda_i): roots alpha with <alpha, lambda_i^vee> = n_i for all i in I.

    Indices of I absent from ``target`` are taken to be 0.
    """
    extra = sorted(set(int(i) for i in target) - f.I)
    if extra:
        raise ValidationError(f"indices {extra} are not in the facet's I={list(f.indices)}", "target")
    want = tuple(int(target.get(i, 0)) for i in f.indices)
    if any(n < 0 for n in want) or not any(want):
        raise ValidationError("target coefficients must be non-negative and not all zero", "target")
    return list(_psi_buckets(f).get(want, ()))


@lru_cache(maxsize=None)
def _psi_buckets(f: Facet) -> dict:
    buckets: dict[tuple, list] = defaultdict(list)
    for alpha in f.rs.roots:
        key = shape_key(f, alpha)
        if any(key) and all(n >= 0 for n in key):
            buckets[key].append(alpha)
    return {k: tuple(v) for k, v in buckets.items()}


def psi_size(f: Facet, i: int) -> int:
    """|Psi(P, lambda_i)|, the rank of the elementary module at vertex i."""
    if i not in f.I:
        raise DomainError(f"{i} is not a vertex index of {f}", "vertex")
    key = tuple(int(j == i) for j in f.indices)
    return len(_psi_buckets(f).get(key, ()))


def levi_positive_roots(f: Facet) -> list[tuple]:
    """Phi_I: the (transported) positive roots supported on the simple roots outside I."""
    w = f.w
    out = []
    for alpha in f.rs.positive_roots:
        if all(alpha[i - 1] == 0 for i in f.I):
            out.append(alpha if f.chamber is None else tuple(int(x) for x in w.apply(alpha)))
    return out


def u_set(f: Facet) -> list[tuple]:
    """U(P) = roots with positive pairing against some vertex coweight.

    Computed from the pairing definition and checked against the
    complement description Phi^+ - Phi_I (transported by the chamber).
    """
    return list(_u_set(f))


@lru_cache(maxsize=None)
def _u_set(f: Facet) -> tuple:
    by_pairing = [a for a in f.rs.roots if any(x > 0 for x in f.level_vector(a))]
    levi = set(levi_positive_roots(f))
    w = f.w
    positives = f.rs.positive_roots if f.chamber is None else [tuple(int(x) for x in w.apply(a)) for a in f.rs.positive_roots]
    by_complement = [a for a in positives if a not in levi]
    if set(by_pairing) != set(by_complement):
        raise ConsistencyError(f"U(P) characterizations disagree for {f}")
    return tuple(by_pairing)


@dataclass(frozen=True)
class ShapeEntry:
    shape: tuple  # (n_i)_{i in I}
    roots: tuple

    @property
    def rank(self) -> int:
        return len(self.roots)

    @property
    def level(self) -> int:
        return sum(self.shape)


@dataclass(frozen=True)
class ShapeDecomposition:
    facet: Facet
    by_level: dict = field(hash=False)
    dim_g: int = 0
    dim_p: int = 0
    dim_l: int = 0
    dim_u: int = 0

    def entries(self) -> list[ShapeEntry]:
        return [e for lvl in sorted(self.by_level) for e in self.by_level[lvl]]


def shape_decomposition(f: Facet) -> ShapeDecomposition:
    """Bucket U(P) by shape and group the shapes by level.

    The level-l bucket lists the summands V_S of U_{l-1}/U_l; ranks are
    root counts. Also returns dim g, p, l and the unipotent radical.
    """
    buckets = _psi_buckets(f)
    u = _u_set(f)
    by_level: dict[int, list[ShapeEntry]] = defaultdict(list)
    counted = 0
    for key in sorted(buckets, key=lambda k: (sum(k), k)):
        entry = ShapeEntry(key, buckets[key])
        by_level[entry.level].append(entry)
        counted += entry.rank
    if counted != len(u):
        raise ConsistencyError(f"shape buckets cover {counted} roots, |U(P)| = {len(u)}")
    rs = f.rs
    dim_u = len(u)
    dim_l = rs.rank + 2 * len(levi_positive_roots(f))
    return ShapeDecomposition(
        facet=f,
        by_level=dict(by_level),
        dim_g=rs.dim_g,
        dim_p=dim_l + dim_u,
        dim_l=dim_l,
        dim_u=dim_u,
    )


def root_sum(roots: Iterable[Sequence]) -> tuple:
    total = None
    for r in roots:
        total = tuple(r) if total is None else tuple(a + b for a, b in zip(total, r))
    return total


def level_pairing_total(f: Facet, alpha: Sequence) -> Fraction:
    """<alpha, sum_{i in I} w lambda_i^vee>, which equals the level for positive roots."""
    return sum(f.level_vector(alpha), Fraction(0))
