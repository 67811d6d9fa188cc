"""Checkable pieces of the argument that some Frobenius pull-back has a strong
canonical reduction.

* :func:`s0_estimate` computes the largest cosine between two cones of the
  Weyl fan (in coweight space) that meet only at the origin.
* :func:`match_facets` finds the Weyl element carrying one facet to another.
* :func:`contradiction_certificate` replays the norm comparison of y(P)
  and y(Q) and decides whether 1 <= s0 (1 + eps) can fail.
* :func:`detect_stabilization` finds an eps-window in a finite sequence of
  Frobenius-normalized numerical invariants.

Cosines between fan rays are often irrational (45 degrees in B2), so s0 is
represented exactly as a signed square root ``sign * sqrt(square)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

import numpy as np

from . import _linalg as la
from ._checks import as_fraction, require_prime
from .degrees import InvariantProfile, y_vector
from .errors import ConsistencyError, PreconditionError, ResourceError, ValidationError
from .parabolic import Facet, all_standard_facets
from .rootsystem import RootSystem, WeylElement, bilinear, reduced_word, weyl_cap, weyl_group

DEFAULT_S0_RANK_CAP = 4


@dataclass(frozen=True)
class S0Value:
    """The number sign * sqrt(square); ``exact`` is False for a certified upper bound."""

    sign: int
    square: Fraction
    exact: bool = True
    witness: tuple = field(default=(), compare=False)

    @classmethod
    def from_rational(cls, x) -> "S0Value":
        x = as_fraction(x, "s0")
        return cls((x > 0) - (x < 0), x * x, True)

    @property
    def key(self) -> Fraction:
        """sign * square; monotone in the represented value."""
        return self.sign * self.square

    @property
    def value(self) -> Fraction | None:
        """The value as a rational, or None when sqrt(square) is irrational."""
        root = _rational_sqrt(self.square)
        return None if root is None else self.sign * root

    def __float__(self) -> float:
        return self.sign * float(self.square) ** 0.5

    def times_at_least_one(self, factor: Fraction) -> bool:
        """Exact test of value * factor >= 1 for factor > 0."""
        if self.sign <= 0:
            return False
        return self.square * factor * factor >= 1

    def __str__(self):
        v = self.value
        body = str(v) if v is not None else f"{'-' if self.sign < 0 else ''}sqrt({self.square})"
        return body if self.exact else f"<= {body}"


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


# ---------------------------------------------------------------- the Weyl fan


@dataclass(frozen=True)
class FanFacet:
    I: frozenset
    chamber: WeylElement
    generators: tuple  # w(lambda_i^vee) for i in sorted(I)

    @property
    def rays(self) -> frozenset:
        return frozenset(self.generators)


def weyl_fan(rs: RootSystem, cap: int | None = None) -> list[FanFacet]:
    """All nonzero cones of the Weyl fan, one per distinct vertex set."""
    return list(_weyl_fan(rs, weyl_cap() if cap is None else cap))


@lru_cache(maxsize=16)
def _weyl_fan(rs: RootSystem, cap: int) -> tuple:
    group = weyl_group(rs, cap)
    out = []
    for f in all_standard_facets(rs, include_empty=False):
        seen = set()
        for w in group:
            gens = tuple(w.apply(rs.fundamental_coweights[i - 1]) for i in f.indices)
            key = frozenset(gens)
            if key not in seen:
                seen.add(key)
                out.append(FanFacet(f.I, w, gens))
    return tuple(out)


def _gram(rs, xs, ys):
    return tuple(tuple(bilinear(rs, x, y) for y in ys) for x in xs)


def _upper_rational(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10**12) + Fraction(1, 10**9)


def _lower_rational(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10**12) - Fraction(1, 10**9)


def _sqrt_bounds(q: Fraction, digits: int = 30) -> tuple[Fraction, Fraction]:
    scale = 10**digits
    prod = q.numerator * q.denominator
    lo = isqrt(prod * scale * scale)
    return Fraction(lo, scale * q.denominator), Fraction(lo + 1, scale * q.denominator)


def _pair_candidates(rs: RootSystem, A: tuple, B: tuple) -> list[S0Value]:
    """Cosines attained at relative-interior critical pairs of cone(A) x cone(B)."""
    if len(A) > len(B):
        A, B = B, A
    ga, gb, gab = _gram(rs, A, A), _gram(rs, B, B), _gram(rs, A, B)
    ga_inv, gb_inv = la.inverse(ga), la.inverse(gb)
    gba = la.transpose(gab)
    proj = la.matmul(gb_inv, gba)  # coordinates in B of the projection of A-vectors onto span B
    K = la.matmul(la.matmul(ga_inv, gab), proj)
    n = len(A)

    poly = la.charpoly(K)
    ones = 0
    while len(poly) > 1:
        q, rem = la.poly_divide_linear(poly, Fraction(1))
        if rem != 0:
            break
        poly, ones = q, ones + 1

    rational_eigs: list[Fraction] = []
    if ones == 1:
        rational_eigs.append(Fraction(1))
    # ones > 1: the eigenvalue-1 space is span A n span B and only yields cos = -1 pairs
    out: list[S0Value] = []
    m = len(poly) - 1
    if m == 1:
        rational_eigs.append(-poly[1] / poly[0])
    elif m == 2:
        a, b, c = poly
        disc = b * b - 4 * a * c
        root = _rational_sqrt(disc)
        if root is not None:
            rational_eigs.extend({(-b + root) / (2 * a), (-b - root) / (2 * a)})
        else:
            lo, hi = _sqrt_bounds(disc)
            for s in (1, -1):
                e_hi = (-b + s * (hi if s * a > 0 else lo)) / (2 * a)
                e_lo = (-b + s * (lo if s * a > 0 else hi)) / (2 * a)
                out.extend(_numeric_candidate(K, proj, (e_lo + e_hi) / 2, e_lo, e_hi))
    elif m >= 3:
        for e in np.roots([float(c) for c in poly]):
            if abs(e.imag) > 1e-9:
                continue
            e = float(e.real)
            out.extend(_numeric_candidate(K, proj, Fraction(e), _lower_rational(e), _upper_rational(e)))

    for e in rational_eigs:
        shifted = tuple(tuple(K[i][j] - (e if i == j else 0) for j in range(n)) for i in range(n))
        space = la.nullspace(shifted, n)
        if len(space) != 1:
            if space and e > 0:
                out.append(S0Value(1, e, exact=False))
            continue
        x = space[0]
        if all(v < 0 for v in x):
            x = tuple(-v for v in x)
        if not all(v > 0 for v in x):
            continue
        if e == 0:
            out.append(S0Value(0, Fraction(0)))
            continue
        y = la.matvec(proj, x)
        if all(v > 0 for v in y):
            out.append(S0Value(1, e))
        elif all(v < 0 for v in y):
            out.append(S0Value(-1, e))
    return out


def _numeric_candidate(K, proj, e_mid: Fraction, e_lo: Fraction, e_hi: Fraction) -> list[S0Value]:
    """Irrational eigenvalue: decide feasibility in floating point, report a rational bound."""
    Kf = np.array([[float(v) for v in row] for row in K])
    vals, vecs = np.linalg.eig(Kf)
    idx = int(np.argmin(np.abs(vals - float(e_mid))))
    x = np.real(vecs[:, idx])
    if np.all(x < 0):
        x = -x
    tol = 1e-9
    if np.any(x < -tol):
        return []
    y = np.array([[float(v) for v in row] for row in proj]) @ x
    if np.all(y > -tol):
        return [S0Value(1, max(e_hi, Fraction(0)), exact=False)]
    if np.all(y < tol):
        return [S0Value(-1, max(e_lo, Fraction(0)), exact=False)]
    return []


def s0_estimate(rs: RootSystem, rank_cap: int = DEFAULT_S0_RANK_CAP) -> S0Value:
    """Largest cosine of the angle between two cones of the Weyl fan meeting only at 0.

    Pairs of cones sharing a ray realize angle 0 and are skipped. For the
    rest the smallest angle between the closed cones is used; it is found
    at an interior critical pair of some pair of faces, and faces of fan
    cones are fan cones, so scanning interior critical pairs of all
    admissible pairs is exhaustive. Up to rank 4 every candidate is exact;
    otherwise an upper bound may be returned with ``exact=False``.
    """
    if rs.rank > rank_cap:
        raise ResourceError(f"s0 enumeration is capped at rank {rank_cap}, got rank {rs.rank}", partial_size=0)
    fan = weyl_fan(rs)
    best: S0Value | None = None
    exact_best: S0Value | None = None
    for rep in all_standard_facets(rs, include_empty=False):
        gens = tuple(rs.fundamental_coweights[i - 1] for i in rep.indices)
        rays = frozenset(gens)
        for other in fan:
            if rays & other.rays:
                continue
            for cand in _pair_candidates(rs, gens, other.generators):
                cand = S0Value(cand.sign, cand.square, cand.exact, (rep.indices, tuple(sorted(other.I)), other.chamber.word))
                if best is None or cand.key > best.key or (cand.key == best.key and not cand.exact):
                    best = cand
                if cand.exact and (exact_best is None or cand.key > exact_best.key):
                    exact_best = cand
    if best is None:
        raise ConsistencyError(f"no pair of fan cones meets only at the origin in {rs.label}")
    if not best.exact and exact_best is not None and exact_best.key >= best.key:
        best = exact_best
    if best.key >= 1:
        raise ConsistencyError(f"s0 = {best} is not < 1")
    return best


# ------------------------------------------------------------ facet matching


def match_facets(fP: Facet, fQ: Facet) -> WeylElement | None:
    """Weyl element sigma with sigma(P) = Q, or None.

    Facets of different type (different I) are never Weyl-conjugate, since
    each orbit of weights has a unique dominant member. When the types
    agree, sigma is the chamber transport w_Q w_P^{-1}, returned with its
    lexicographically least reduced word.
    """
    if fP.rs != fQ.rs:
        raise ValidationError("facets live in different root systems", "facet")
    if fP.I != fQ.I:
        return None
    sigma = fQ.w * fP.w.inverse()
    for i in fP.I:
        if sigma.apply(fP.vertex(i)) != fQ.vertex(i):
            raise ConsistencyError("chamber transport does not carry vertices to vertices")
    rs = fP.rs
    if rs.weyl_order <= weyl_cap():
        return WeylElement(reduced_word(rs, sigma), sigma.matrix)
    return sigma


def maps_facet(sigma: WeylElement, fP: Facet, fQ: Facet) -> bool:
    """Whether sigma carries the vertex set of P onto that of Q."""
    src = {sigma.apply(v) for v in fP.vertices.values()}
    return src == set(fQ.vertices.values())


# ---------------------------------------------------------- norm expansion


def y_norm_expand(profile: InvariantProfile) -> Fraction:
    """||y(P)||^2 expanded over pairs of vertices; checked against (y, y)."""
    f = profile.facet
    rs = f.rs
    total = Fraction(0)
    for i in f.indices:
        for j in f.indices:
            c = profile.slope(i) * profile.slope(j)
            if c:
                total += c * bilinear(rs, f.vertex_coweight(i), f.vertex_coweight(j))
    y = y_vector(profile)
    direct = bilinear(rs, y, y)
    if direct != total:
        raise ConsistencyError(f"norm expansion {total} differs from (y, y) = {direct}")
    return total


@dataclass(frozen=True)
class Certificate:
    facetP: Facet
    facetQ: Facet
    sigma: WeylElement
    epsilon: Fraction
    s0: S0Value
    verdict: str  # "accept" or "reject"
    reason: str
    same_facet: bool
    norm_P: Fraction  # ||y(P)||^2
    norm_Q: Fraction  # ||y(Q)||^2
    star2_holds: bool  # (y(Q), y(Q)) <= (y(Q), y(P)), a hypothesis on genuine data
    warnings: tuple = ()

    def recheck(self) -> str:
        """Re-derive the verdict from the stored fields alone."""
        if self.norm_P > (1 + self.epsilon) ** 2 * self.norm_Q:
            raise ConsistencyError("stored norms violate the (1+eps)^2 comparison")
        if self.same_facet:
            return "accept"
        return "accept" if self.s0.times_at_least_one(1 + self.epsilon) else "reject"


def contradiction_certificate(
    profileP: InvariantProfile,
    profileQ: InvariantProfile,
    sigma: WeylElement,
    epsilon,
    s0,
) -> Certificate:
    """Replay the norm argument for two canonical facets related by sigma.

    Checks n(P; lambda) <= (1+eps) n(Q; sigma lambda) for every vertex,
    derives ||y(P)||^2 <= (1+eps)^2 ||y(Q)||^2 through the isometry sigma,
    and, for distinct facets, rejects when 1 <= s0 (1+eps) fails: the two
    facets cannot then both be canonical at this eps.
    """
    eps = as_fraction(epsilon, "epsilon")
    if eps <= 0:
        raise ValidationError("epsilon must be positive", "epsilon")
    s0v = s0 if isinstance(s0, S0Value) else S0Value.from_rational(s0)
    fP, fQ = profileP.facet, profileQ.facet
    rs = fP.rs
    if fQ.rs != rs:
        raise PreconditionError("profiles live in different root systems", "profileQ")
    if fP.I != fQ.I or not all(sigma.apply(fP.vertex(i)) == fQ.vertex(i) for i in fP.I):
        raise PreconditionError("sigma does not map facet P onto facet Q vertex by vertex", "sigma")
    for name, prof in (("P", profileP), ("Q", profileQ)):
        for i in prof.facet.indices:
            if prof.n[i] < 0:
                raise PreconditionError(f"numerical invariant of {name} at vertex {i} is negative", f"{name}.n[{i}]")
    for i in fP.indices:
        if profileP.psi_sizes[i] != profileQ.psi_sizes[i]:
            raise PreconditionError(f"|Psi| differs at vertex {i}", f"psi_sizes[{i}]")
        if profileP.n[i] > (1 + eps) * profileQ.n[i]:
            raise ValidationError(
                f"n(P; lambda_{i}) = {profileP.n[i]} exceeds (1+eps) n(Q; sigma lambda_{i}) = {(1 + eps) * profileQ.n[i]}",
                f"vertex {i}",
            )

    norm_P = y_norm_expand(profileP)
    # expansion of ||y(Q)||^2 through sigma: (sigma lambda^vee, sigma mu^vee) = (lambda^vee, mu^vee)
    norm_Q_via_sigma = Fraction(0)
    for i in fP.indices:
        for j in fP.indices:
            c = profileQ.slope(i) * profileQ.slope(j)
            if c:
                norm_Q_via_sigma += c * bilinear(rs, sigma.apply(fP.vertex_coweight(i)), sigma.apply(fP.vertex_coweight(j)))
    norm_Q = y_norm_expand(profileQ)
    if norm_Q_via_sigma != norm_Q:
        raise ConsistencyError("sigma is not an isometry on the facet's coweights")
    if norm_P > (1 + eps) ** 2 * norm_Q:
        raise ConsistencyError("||y(P)||^2 <= (1+eps)^2 ||y(Q)||^2 failed despite the vertex inequalities")

    yP, yQ = y_vector(profileP), y_vector(profileQ)
    star2 = bilinear(rs, yQ, yQ) <= bilinear(rs, yQ, yP)
    same = set(fP.vertices.values()) == set(fQ.vertices.values())
    warnings: list[str] = []
    if not star2:
        warnings.append("(y(Q), y(Q)) <= (y(Q), y(P)) fails: the data cannot come from a genuine complementary polyhedron")
    if same:
        verdict, reason = "accept", "P and Q are the same facet"
    elif s0v.times_at_least_one(1 + eps):
        verdict, reason = "accept", "1 <= s0 (1+eps) holds"
        warnings.append("epsilon is too large to force a contradiction (eps >= 1/s0 - 1)")
        if not s0v.exact:
            warnings.append("s0 is only an upper bound, so acceptance may be spurious")
    else:
        verdict, reason = "reject", "1 <= s0 (1+eps) fails: P and Q cannot both be canonical at this epsilon"
    return Certificate(
        facetP=fP,
        facetQ=fQ,
        sigma=sigma,
        epsilon=eps,
        s0=s0v,
        verdict=verdict,
        reason=reason,
        same_facet=same,
        norm_P=norm_P,
        norm_Q=norm_Q,
        star2_holds=star2,
        warnings=tuple(warnings),
    )


# ------------------------------------------------------------- stabilization


@dataclass(frozen=True)
class SequenceEntry:
    k: int
    I: frozenset
    n: tuple  # invariants at the vertices of I, in increasing index order
    chamber: tuple = ()  # reduced word of the facet's chamber; () is the standard one

    @property
    def facet_key(self) -> tuple:
        return self.I, self.chamber


@dataclass(frozen=True)
class InvariantSequence:
    p: int
    entries: tuple

    def __post_init__(self):
        require_prime(self.p)
        ks = [e.k for e in self.entries]
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise ValidationError("levels k must be strictly increasing", "entries")
        for e in self.entries:
            if len(e.n) != len(e.I):
                raise ValidationError(f"entry k={e.k} has {len(e.n)} invariants for {len(e.I)} vertices", f"entries[k={e.k}]")

    def normalized(self, entry: SequenceEntry) -> tuple:
        scale = Fraction(self.p) ** entry.k
        return tuple(Fraction(x) / scale for x in entry.n)


def make_sequence(p: int, entries: Sequence) -> InvariantSequence:
    """Entries are (k, I, n) triples or mappings with keys k, I, n and optional chamber."""
    out = []
    for pos, e in enumerate(entries):
        try:
            if isinstance(e, dict):
                k, I, n, ch = e["k"], e["I"], e["n"], e.get("chamber", ())
            else:
                (k, I, n), ch = e, ()
        except (KeyError, TypeError, ValueError):
            raise ValidationError(f"entry {pos} must provide k, I and n", f"entries[{pos}]")
        if isinstance(k, bool) or not isinstance(k, int):
            raise ValidationError(f"entry {pos}: level k must be an integer", f"entries[{pos}].k")
        I = frozenset(int(i) for i in I)
        if len(I) == 0:
            raise ValidationError(f"entry {pos}: facet must have at least one vertex", f"entries[{pos}].I")
        out.append(SequenceEntry(k, I, tuple(as_fraction(x, "n") for x in n), tuple(int(c) for c in ch)))
    return InvariantSequence(p, tuple(out))


def detect_stabilization(seq: InvariantSequence, epsilon) -> tuple[int, int] | None:
    """First pair of levels (k, k') in the most frequent constant-facet subsequence
    with n~_{i,k'} <= (1+eps) n~_{i,k} for every vertex i; None if there is none.
    """
    eps = as_fraction(epsilon, "epsilon")
    if eps <= 0:
        raise ValidationError("epsilon must be positive", "epsilon")
    if not seq.entries:
        raise ValidationError("empty invariant sequence", "entries")
    counts = Counter(e.facet_key for e in seq.entries)
    first_seen = {}
    for pos, e in enumerate(seq.entries):
        first_seen.setdefault(e.facet_key, pos)
    facet = max(counts, key=lambda key: (counts[key], -first_seen[key]))
    sub = [e for e in seq.entries if e.facet_key == facet]
    normed = [seq.normalized(e) for e in sub]
    for a in range(len(sub)):
        for b in range(a + 1, len(sub)):
            if all(x1 <= (1 + eps) * x0 for x0, x1 in zip(normed[a], normed[b])):
                return sub[a].k, sub[b].k
    return None
