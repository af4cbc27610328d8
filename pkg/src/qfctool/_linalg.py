"""Exact linear algebra over the rationals.

Row-vector convention throughout: a matrix is a list of rows, and
``solve_left(B, v)`` looks for ``x`` with ``x @ B == v``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def rref(rows, ncols=None):
    """Reduced row echelon form of ``rows``.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    A = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(rows) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return len(rref(rows)[1])


def independent_subset(rows):
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    chosen = []
    basis = []
    for i, r in enumerate(rows):
        if rank(basis + [r]) > len(basis):
            basis.append(list(r))
            chosen.append(i)
    return chosen


def nullspace(rows, n):
    """Basis of ``{x : <row, x> = 0 for every row}`` as Fraction vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(rows, n)
    basis = []
    for f in range(n):
        if f in piv:
            continue
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, pc in enumerate(piv):
            x[pc] = -R[i][f]
        basis.append(x)
    return basis


def solve_left(B, v):
    """Return some ``x`` with ``x @ B == v`` or ``None`` if no solution exists."""
    k = len(B)
    n = len(v)
    if k == 0:
        return [] if all(c == 0 for c in v) else None
    # transpose system: columns of the augmented matrix are the rows of B
    aug = [[Fraction(B[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    R, piv = rref(aug, k + 1)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for i, pc in enumerate(piv):
        x[pc] = R[i][k]
    return x


def det(M) -> Fraction:
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def inverse(M):
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    R, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def primitive(v):
    """Scale a rational vector to coprime integers (same direction)."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def project_onto_rowspace(c, basis):
    """Orthogonal projection of ``c`` onto the row space of ``basis``."""
    if not basis:
        return [Fraction(0)] * len(c)
    G = [[Fraction(dot(a, b)) for b in basis] for a in basis]
    rhs = [Fraction(dot(c, b)) for b in basis]
    # G is symmetric positive definite, so solve_left doubles as G^{-1}
    coeffs = solve_left(G, rhs)
    n = len(c)
    return [sum(coeffs[i] * basis[i][j] for i in range(len(basis))) for j in range(n)]
