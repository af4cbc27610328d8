"""Exact integer linear algebra on subgroups of Z^n.

Vectors are tuples of Python ints and matrices are tuples of row vectors, so
every value here is hashable and immutable.  All transformations use the
row convention: ``hnf`` returns ``U`` with ``U @ M == H`` and ``snf`` returns
``U @ M @ V == D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg

Vector = tuple
Matrix = tuple


class NotSaturated(ValueError):
    """Raised when a subgroup is not a direct summand of Z^n."""


def as_matrix(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(A, B) -> Matrix:
    if not A:
        return ()
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def vecmat(v, A) -> Vector:
    """Row vector times matrix, i.e. the exponent map ``b -> b A``."""
    n = len(A[0]) if A else 0
    return tuple(sum(v[i] * A[i][j] for i in range(len(v))) for j in range(n))


def det(M) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_unimodular(M) -> bool:
    return bool(M) and all(len(r) == len(M) for r in M) and abs(det(M)) == 1


def integer_inverse(M) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    inv = _linalg.inverse(M)
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in r) for r in inv)


def hnf(M):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U @ M == H``, ``|det U| == 1``, pivots positive,
    entries above each pivot reduced into ``[0, pivot)`` and zero rows last.
    """
    A = [list(r) for r in M]
    if not A:
        raise ValueError("hnf of an empty matrix")
    m, n = len(A), len(A[0])
    U = [list(r) for r in identity(m)]
    row = 0
    for col in range(n):
        if row == m:
            break
        while True:
            nz = [i for i in range(row, m) if A[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            A[row], A[p] = A[p], A[row]
            U[row], U[p] = U[p], U[row]
            done = True
            for i in range(row + 1, m):
                if A[i][col]:
                    q = A[i][col] // A[row][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[row])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if row < m and A[row][col] != 0:
            if A[row][col] < 0:
                A[row] = [-a for a in A[row]]
                U[row] = [-a for a in U[row]]
            piv = A[row][col]
            for i in range(row):
                q = A[i][col] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[row])]
            row += 1
    return as_matrix(A), as_matrix(U)


@dataclass(frozen=True)
class SmithDecomposition:
    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]))))

    @property
    def elementary_divisors(self) -> tuple:
        """Nonzero diagonal entries, in divisibility order."""
        return tuple(d for d in self.diagonal if d != 0)


def snf(M) -> SmithDecomposition:
    """Smith normal form by alternating row/column gcd elimination."""
    A = [list(r) for r in M]
    if not A:
        raise ValueError("snf of an empty matrix")
    m, n = len(A), len(A[0])
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_cols(j, k):
        for R in A:
            R[j], R[k] = R[k], R[j]
        for R in V:
            R[j], R[k] = R[k], R[j]

    def add_col(dst, src, q):
        # column dst -= q * column src
        for R in A:
            R[dst] -= q * R[src]
        for R in V:
            R[dst] -= q * R[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                return SmithDecomposition(as_matrix(A), as_matrix(U), as_matrix(V))
            _, pi, pj = min(nz)
            A[t], A[pi] = A[pi], A[t]
            U[t], U[pi] = U[pi], U[t]
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // A[t][t])
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            piv = A[t][t]
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return SmithDecomposition(as_matrix(A), as_matrix(U), as_matrix(V))


@dataclass(frozen=True)
class LatticeSubgroup:
    """A subgroup of Z^n held by its canonical row-HNF basis."""

    basis: Matrix
    n: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v):
        """Integer ``y`` with ``y @ basis == v``, or ``None`` if ``v`` is outside."""
        if len(v) != self.n:
            raise ValueError(f"vector of length {len(v)} in Z^{self.n}")
        rem = list(v)
        coords = []
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            if rem[p] % row[p]:
                return None
            q = rem[p] // row[p]
            coords.append(q)
            if q:
                rem = [a - q * b for a, b in zip(rem, row)]
        if any(rem):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def is_full(self) -> bool:
        return self.basis == identity(self.n)


def group_of(generators, n: int | None = None) -> LatticeSubgroup:
    """Canonical basis of the subgroup generated by ``generators``."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if n is None:
        if not gens:
            raise ValueError("ambient rank needed for an empty generator list")
        n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ValueError("generators of mixed length")
    if not gens:
        return LatticeSubgroup((), n)
    H, _ = hnf(gens)
    return LatticeSubgroup(tuple(r for r in H if any(r)), n)


def is_direct_summand(H: LatticeSubgroup) -> bool:
    if H.rank == 0:
        return True
    return all(d == 1 for d in snf(H.basis).elementary_divisors)


def _inverse_V(H: LatticeSubgroup):
    dec = snf(H.basis)
    return dec, integer_inverse(dec.V)


def saturation(H: LatticeSubgroup) -> LatticeSubgroup:
    """R(H) ∩ Z^n: replace every elementary divisor by 1."""
    if H.rank == 0:
        return H
    _, Vinv = _inverse_V(H)
    return group_of(Vinv[:H.rank], H.n)


def extend_to_basis(H: LatticeSubgroup):
    """Unimodular ``C`` whose first ``r`` rows are a basis of ``H``.

    Returns ``(C, r)``.  ``H`` must be a direct summand of Z^n.
    """
    if H.rank == 0:
        return identity(H.n), 0
    dec, Vinv = _inverse_V(H)
    if any(d != 1 for d in dec.elementary_divisors):
        raise NotSaturated(f"elementary divisors {dec.elementary_divisors}")
    return Vinv, H.rank


def complete_basis(rows) -> Matrix:
    """Unimodular matrix whose leading rows are exactly ``rows``.

    ``rows`` must be linearly independent and span a direct summand.
    """
    K = as_matrix(rows)
    k = len(K)
    if k == 0:
        raise ValueError("nothing to complete")
    n = len(K[0])
    dec = snf(K)
    if dec.elementary_divisors != (1,) * k:
        raise NotSaturated(f"rows span a subgroup with divisors {dec.elementary_divisors}")
    Vinv = integer_inverse(dec.V)
    Uinv = integer_inverse(dec.U)
    head = matmul(Uinv, Vinv[:k])
    C = head + Vinv[k:]
    assert C[:k] == K and abs(det(C)) == 1
    return C


def torsion_element(H: LatticeSubgroup):
    """A torsion class of Z^n/H: ``(t, m)`` with ``m*t`` in H, ``t`` not in H.

    ``m`` is the least such multiplier.  Returns ``None`` when H is saturated.
    """
    if H.rank == 0:
        return None
    dec, Vinv = _inverse_V(H)
    for k, d in enumerate(dec.elementary_divisors):
        if d > 1:
            t = Vinv[k]
            lead = next(x for x in t if x)
            if lead < 0:
                t = tuple(-x for x in t)
            return t, d
    return None


def rational_coordinates(v, rows):
    """Rational ``x`` with ``x @ rows == v`` (rows independent), or ``None``."""
    x = _linalg.solve_left(rows, v)
    return None if x is None else tuple(Fraction(c) for c in x)
