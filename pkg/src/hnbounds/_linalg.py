"""Small exact linear algebra over ``Fraction``.

Matrices are tuples of row tuples. Everything here is O(n^3) Gaussian
elimination; the matrices involved never exceed rank 8.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vec = tuple
Mat = tuple


def frac_matrix(rows: Sequence[Sequence]) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def matvec(a: Mat, v: Sequence) -> Vec:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum((Fraction(x) * y for x, y in zip(u, v)), Fraction(0))


def _row_reduce(a: list[list[Fraction]], ncols: int) -> tuple[list[int], int]:
    """Reduce ``a`` in place to reduced row echelon form on the first ``ncols`` columns.

    Returns the pivot columns and the sign of the row permutation.
    """
    pivots: list[int] = []
    sign = 1
    r = 0
    nrows = len(a)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots, sign


def rank(a: Mat) -> int:
    if not a:
        return 0
    work = [list(map(Fraction, row)) for row in a]
    pivots, _ = _row_reduce(work, len(work[0]))
    return len(pivots)


def det(a: Mat) -> Fraction:
    n = len(a)
    work = [list(map(Fraction, row)) for row in a]
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            result = -result
        result *= work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] / work[c][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return result


def inverse(a: Mat) -> Mat:
    n = len(a)
    work = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    pivots, _ = _row_reduce(work, n)
    if len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in work)


def solve(a: Mat, b: Sequence) -> Vec:
    """Solve ``a x = b`` for square nonsingular ``a``."""
    n = len(a)
    work = [list(map(Fraction, row)) + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots, _ = _row_reduce(work, n)
    if len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(row[n] for row in work)


def nullspace(a: Mat, ncols: int | None = None) -> list[Vec]:
    """Basis of the right null space of ``a``."""
    if ncols is None:
        ncols = len(a[0])
    work = [list(map(Fraction, row)) for row in a]
    pivots, _ = _row_reduce(work, ncols) if work else ([], 1)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][f]
        basis.append(tuple(v))
    return basis


def charpoly(a: Mat) -> list[Fraction]:
    """Characteristic polynomial det(xI - a), coefficients from x^n down to x^0.

    Faddeev-LeVerrier recursion, exact over the rationals.
    """
    n = len(a)
    coeffs = [Fraction(1)]
    m = identity(n)
    for k in range(1, n + 1):
        am = matmul(a, m)
        c = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
        coeffs.append(c)
        m = tuple(tuple(am[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n))
    return coeffs


def poly_divide_linear(coeffs: list[Fraction], root: Fraction) -> tuple[list[Fraction], Fraction]:
    """Synthetic division by (x - root); returns quotient and remainder."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + out[-1] * root)
    return out[:-1], out[-1]
