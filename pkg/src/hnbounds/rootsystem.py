"""Root systems of all finite Cartan types with exact rational data.

Vectors live in the real span of the roots and are written in the
simple-root basis. Covectors (coroots, fundamental coweights, degree
functionals) are identified with vectors through the Weyl-invariant form,
so ``alpha^vee`` is stored as ``2 alpha / (alpha, alpha)`` and pairing a
vector with a covector is just :func:`bilinear`.

Labelling follows Bourbaki: in B_n the last simple root is short, in C_n
it is long, in G_2 the first simple root is short. Long roots have squared
length 2.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from . import _linalg as la
from .errors import DomainError, ResourceError, ValidationError

DEFAULT_WEYL_CAP = 10**6
WEYL_CAP_ENV = "HNBOUNDS_WEYL_CAP"

Vector = tuple  # tuple of Fraction (or int) in the simple-root basis


def weyl_cap() -> int:
    raw = os.environ.get(WEYL_CAP_ENV)
    if raw is None:
        return DEFAULT_WEYL_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationError(f"{WEYL_CAP_ENV} must be a positive integer, got {raw!r}", WEYL_CAP_ENV)
    if cap < 1:
        raise ValidationError(f"{WEYL_CAP_ENV} must be positive", WEYL_CAP_ENV)
    return cap


_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def _check_datum(cartan_type: str, rank: int) -> None:
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise ValidationError(f"rank must be an integer, got {rank!r}", "rank")
    if cartan_type in _MIN_RANK:
        if rank < _MIN_RANK[cartan_type]:
            raise ValidationError(
                f"{cartan_type}_{rank} is not a valid Cartan datum "
                f"(need rank >= {_MIN_RANK[cartan_type]})",
                "rank",
            )
    elif cartan_type in _EXCEPTIONAL:
        if rank not in _EXCEPTIONAL[cartan_type]:
            raise ValidationError(f"{cartan_type}_{rank} is not a valid Cartan datum", "rank")
    else:
        raise ValidationError(f"unknown Cartan type {cartan_type!r}", "type")


def _simple_gram(cartan_type: str, n: int) -> list[list[Fraction]]:
    """Gram matrix (alpha_i, alpha_j) of the simple roots."""
    half = Fraction(1, 2)
    sq = [Fraction(2)] * n
    edges: dict[tuple[int, int], Fraction] = {}
    if cartan_type == "A":
        edges = {(i, i + 1): Fraction(-1) for i in range(n - 1)}
    elif cartan_type == "B":
        sq[-1] = Fraction(1)
        edges = {(i, i + 1): Fraction(-1) for i in range(n - 1)}
    elif cartan_type == "C":
        sq = [Fraction(1)] * (n - 1) + [Fraction(2)]
        edges = {(i, i + 1): -half for i in range(n - 2)}
        edges[(n - 2, n - 1)] = Fraction(-1)
    elif cartan_type == "D":
        edges = {(i, i + 1): Fraction(-1) for i in range(n - 2)}
        edges[(n - 3, n - 1)] = Fraction(-1)
    elif cartan_type == "E":
        pairs = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
        edges = {(a - 1, b - 1): Fraction(-1) for a, b in pairs if b <= n}
    elif cartan_type == "F":
        sq = [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
        edges = {(0, 1): Fraction(-1), (1, 2): Fraction(-1), (2, 3): -half}
    elif cartan_type == "G":
        sq = [Fraction(2, 3), Fraction(2)]
        edges = {(0, 1): Fraction(-1)}
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = sq[i]
    for (i, j), v in edges.items():
        g[i][j] = g[j][i] = v
    return g


def _weyl_order_simple(cartan_type: str, n: int) -> int:
    if cartan_type == "A":
        return factorial(n + 1)
    if cartan_type in "BC":
        return 2**n * factorial(n)
    if cartan_type == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[
        (cartan_type, n)
    ]


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: str
    rank: int
    cartan_matrix: tuple  # entry [i][j] = <alpha_j, alpha_i^vee>
    positive_roots: tuple  # integer tuples, sorted by height
    fundamental_weights: tuple
    fundamental_coweights: tuple  # images in V under the form identification
    gram: tuple
    factors: tuple = ()  # ((type, rank), ...) simple factors, in block order
    gram_inverse: tuple = field(default=(), repr=False)
    roots: tuple = field(default=(), repr=False)

    @property
    def label(self) -> str:
        return "x".join(f"{t}{r}" for t, r in self.factors)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def dim_g(self) -> int:
        return self.rank + len(self.roots)

    @property
    def weyl_order(self) -> int:
        order = 1
        for t, r in self.factors:
            order *= _weyl_order_simple(t, r)
        return order

    def simple_root(self, i: int) -> Vector:
        """The simple root alpha_i, 1-based."""
        return tuple(int(j == i - 1) for j in range(self.rank))

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self._root_set

    @property
    def _root_set(self) -> frozenset:
        return _root_set(self)

    def check_vector(self, v: Sequence, name: str = "vector") -> Vector:
        if len(v) != self.rank:
            raise ValidationError(f"{name} has length {len(v)}, expected rank {self.rank}", name)
        return tuple(Fraction(x) for x in v)

    def __repr__(self):
        return f"RootSystem({self.label})"


@lru_cache(maxsize=None)
def _root_set(rs: RootSystem) -> frozenset:
    return frozenset(rs.roots)


def _reflect_int(cartan: Sequence[Sequence[int]], beta: tuple, i: int) -> tuple:
    c = sum(cartan[i][j] * beta[j] for j in range(len(beta)))
    if c == 0:
        return beta
    return tuple(b - c if j == i else b for j, b in enumerate(beta))


def _assemble(factors: tuple, gram_rows: list[list[Fraction]]) -> RootSystem:
    n = len(gram_rows)
    gram = la.frac_matrix(gram_rows)
    cartan = tuple(tuple(int(2 * gram[i][j] / gram[i][i]) for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            if 2 * gram[i][j] / gram[i][i] != cartan[i][j]:
                raise ValidationError("non-integral Cartan entry", "cartan_matrix")

    # reflection closure from the simple roots
    simple = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                gamma = _reflect_int(cartan, beta, i)
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    positive = sorted((r for r in seen if all(c >= 0 for c in r)), key=lambda r: (sum(r), tuple(-c for c in r)))
    roots = tuple(positive) + tuple(tuple(-c for c in r) for r in positive)

    cinv = la.inverse(la.frac_matrix(cartan))
    weights = tuple(tuple(cinv[j][i] for j in range(n)) for i in range(n))
    ginv = la.inverse(gram)
    coweights = tuple(tuple(ginv[j][i] for j in range(n)) for i in range(n))
    label = "x".join(f"{t}{r}" for t, r in factors)
    return RootSystem(
        cartan_type=factors[0][0] if len(factors) == 1 else label,
        rank=n,
        cartan_matrix=cartan,
        positive_roots=tuple(positive),
        fundamental_weights=weights,
        fundamental_coweights=coweights,
        gram=gram,
        factors=factors,
        gram_inverse=ginv,
        roots=roots,
    )


@lru_cache(maxsize=None)
def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    """Root system of the simple Cartan type ``cartan_type``_``rank``.

    >>> len(build_root_system("G", 2).positive_roots)
    6
    """
    if isinstance(cartan_type, str):
        cartan_type = cartan_type.strip().upper()
    _check_datum(cartan_type, rank)
    return _assemble(((cartan_type, rank),), _simple_gram(cartan_type, rank))


def product_root_system(factors: Iterable[tuple[str, int]]) -> RootSystem:
    """Orthogonal direct sum of simple root systems (simple roots concatenated in order)."""
    factors = tuple((str(t).upper(), int(r)) for t, r in factors)
    if not factors:
        raise ValidationError("a product needs at least one factor", "factors")
    n = sum(r for _, r in factors)
    g = [[Fraction(0)] * n for _ in range(n)]
    offset = 0
    for t, r in factors:
        _check_datum(t, r)
        block = _simple_gram(t, r)
        for i in range(r):
            for j in range(r):
                g[offset + i][offset + j] = block[i][j]
        offset += r
    return _assemble(factors, g)


def parse_cartan_label(label: str) -> RootSystem:
    """Parse labels such as ``"B3"`` or ``"A1xG2"``."""
    parts = [p.strip() for p in label.replace("×", "x").split("x") if p.strip()]
    factors = []
    for p in parts:
        if len(p) < 2 or not p[1:].isdigit():
            raise ValidationError(f"cannot parse Cartan label {label!r}", "type")
        factors.append((p[0].upper(), int(p[1:])))
    if len(factors) == 1:
        return build_root_system(*factors[0])
    return product_root_system(factors)


def bilinear(rs: RootSystem, x: Sequence, y: Sequence) -> Fraction:
    """The invariant form (x, y), both given in the simple-root basis."""
    if len(x) != rs.rank or len(y) != rs.rank:
        raise ValidationError(
            f"dimension mismatch: got {len(x)} and {len(y)} for rank {rs.rank}", "vector"
        )
    g = rs.gram
    return sum((x[i] * g[i][j] * y[j] for i in range(rs.rank) for j in range(rs.rank) if x[i] and y[j]), Fraction(0))


def as_root(rs: RootSystem, alpha: Sequence) -> tuple:
    """Normalize ``alpha`` to an integer tuple, raising DomainError if it is not a root."""
    alpha = tuple(alpha)
    try:
        key = tuple(int(a) for a in alpha if Fraction(a).denominator == 1)
    except (TypeError, ValueError):
        key = ()
    if len(key) != rs.rank or len(key) != len(alpha) or not rs.is_root(key):
        raise DomainError(f"{alpha} is not a root of {rs.label}", "alpha")
    return key


def coroot(rs: RootSystem, alpha: Sequence) -> Vector:
    """alpha^vee = 2 alpha / (alpha, alpha), as a vector in the simple-root basis."""
    alpha = as_root(rs, alpha)
    scale = Fraction(2) / bilinear(rs, alpha, alpha)
    return tuple(scale * a for a in alpha)


def pair_coroot(rs: RootSystem, x: Sequence, i: int) -> Fraction:
    """<x, alpha_i^vee> for the simple coroot with 1-based index ``i``."""
    row = rs.cartan_matrix[i - 1]
    return sum((row[j] * x[j] for j in range(rs.rank) if x[j]), Fraction(0))


def simple_reflection_matrix(rs: RootSystem, i: int) -> tuple:
    """Integer matrix of s_i acting on simple-root coordinates (1-based ``i``)."""
    n = rs.rank
    row = rs.cartan_matrix[i - 1]
    return tuple(
        tuple(int(r == c) - (row[c] if r == i - 1 else 0) for c in range(n)) for r in range(n)
    )


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element; ``word`` (i1, ..., ik) means s_i1 s_i2 ... s_ik."""

    word: tuple
    matrix: tuple

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def apply(self, v: Sequence) -> Vector:
        return tuple(sum((m * x for m, x in zip(row, v) if m), Fraction(0)) for row in self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        m = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*other.matrix)) for row in self.matrix
        )
        return WeylElement(self.word + other.word, m)

    def inverse(self) -> "WeylElement":
        inv = la.inverse(la.frac_matrix(self.matrix))
        return WeylElement(tuple(reversed(self.word)), tuple(tuple(int(x) for x in row) for row in inv))

    @property
    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (i == j) for i in range(len(self.matrix)) for j in range(len(self.matrix)))


def identity_element(rs: RootSystem) -> WeylElement:
    return WeylElement((), tuple(tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)))


def weyl_element(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Element s_i1 ... s_ik for a (not necessarily reduced) word of 1-based indices."""
    w = identity_element(rs)
    for i in word:
        if not 1 <= int(i) <= rs.rank:
            raise ValidationError(f"reflection index {i} outside 1..{rs.rank}", "word")
        w = w * WeylElement((int(i),), simple_reflection_matrix(rs, int(i)))
    return w


def weyl_orbit(rs: RootSystem, seed: Sequence, cap: int | None = None) -> list[Vector]:
    """Orbit of ``seed`` under W, in breadth-first order starting from the seed."""
    cap = weyl_cap() if cap is None else cap
    seed = rs.check_vector(seed, "seed")
    seen = {seed}
    order = [seed]
    frontier = [seed]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(1, rs.rank + 1):
                c = pair_coroot(rs, v, i)
                if c == 0:
                    continue
                u = tuple(x - c if j == i - 1 else x for j, x in enumerate(v))
                if u not in seen:
                    seen.add(u)
                    order.append(u)
                    nxt.append(u)
                    if len(order) > cap:
                        raise ResourceError(
                            f"orbit exceeds cap {cap} (partial size {len(order)})", partial_size=len(order)
                        )
        frontier = nxt
    return order


def weyl_group(rs: RootSystem, cap: int | None = None) -> list[WeylElement]:
    """All of W; each element carries its lexicographically least reduced word.

    Breadth-first search extending words on the right with generators in
    increasing order visits each length layer in lexicographic order, so
    the first word reaching an element is the lex-least reduced one.
    """
    cap = weyl_cap() if cap is None else cap
    if rs.weyl_order > cap:
        raise ResourceError(
            f"|W({rs.label})| = {rs.weyl_order} exceeds cap {cap}", partial_size=0
        )
    return list(_weyl_group(rs))


@lru_cache(maxsize=32)
def _weyl_group(rs: RootSystem) -> tuple:
    gens = [WeylElement((i,), simple_reflection_matrix(rs, i)) for i in range(1, rs.rank + 1)]
    e = identity_element(rs)
    seen = {e.matrix: e}
    layer = [e]
    out = [e]
    while layer:
        nxt = []
        for w in layer:
            for g in gens:
                u = w * g
                if u.matrix not in seen:
                    seen[u.matrix] = u
                    nxt.append(u)
                    out.append(u)
        layer = nxt
    return tuple(out)


def reduced_word(rs: RootSystem, w: WeylElement) -> tuple:
    """Lexicographically least reduced word of ``w``."""
    weyl_group(rs)  # enforces the cap
    word = _word_index(rs).get(w.matrix)
    if word is None:
        raise DomainError("matrix is not an element of the Weyl group", "sigma")
    return word


@lru_cache(maxsize=32)
def _word_index(rs: RootSystem) -> dict:
    return {u.matrix: u.word for u in _weyl_group(rs)}


def weight_basis_coordinates(rs: RootSystem, v: Sequence) -> Vector:
    """Coordinates of ``v`` in the fundamental-weight basis: (<v, alpha_i^vee>)_i."""
    return tuple(pair_coroot(rs, v, i) for i in range(1, rs.rank + 1))
