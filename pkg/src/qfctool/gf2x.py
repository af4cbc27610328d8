"""Univariate polynomials over F_2 packed into Python ints (bit i = coefficient of x^i)."""

from __future__ import annotations

from functools import lru_cache

X = 0b10
X_PLUS_1 = 0b11


def degree(f: int) -> int:
    return f.bit_length() - 1


def mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def divmod_(a: int, b: int):
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    q = 0
    db = degree(b)
    while a and degree(a) >= db:
        s = degree(a) - db
        q |= 1 << s
        a ^= b << s
    return q, a


def power(a: int, k: int) -> int:
    out = 1
    while k:
        if k & 1:
            out = mul(out, a)
        a = mul(a, a)
        k >>= 1
    return out


def evaluate(f: int, point: int) -> int:
    """Value at 0 or 1."""
    if point == 0:
        return f & 1
    return bin(f).count("1") & 1


@lru_cache(maxsize=None)
def irreducibles(max_degree: int) -> tuple:
    """Irreducible polynomials of degree 1..max_degree, by degree then value."""
    if max_degree > 16:
        raise ValueError("irreducible table limited to degree 16")
    found = []
    for d in range(1, max_degree + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if all(divmod_(f, g)[1] for g in found if 2 * degree(g) <= d):
                found.append(f)
    return tuple(found)


def factor(f: int):
    """``[(g, e), ...]`` with ``f == prod(g**e)``, each g irreducible, ascending."""
    if f == 0:
        raise ValueError("factoring the zero polynomial")
    if degree(f) > 32:
        raise ValueError("degree above 32 is beyond the trial-division table")
    out = []
    table = irreducibles(max(1, degree(f) // 2))
    for g in table:
        if 2 * degree(g) > degree(f):
            break
        e = 0
        while True:
            q, r = divmod_(f, g)
            if r:
                break
            f, e = q, e + 1
        if e:
            out.append((g, e))
    if f != 1:
        # no factor of degree <= half remains, so the cofactor is irreducible
        out.append((f, 1))
        out.sort()
    return out


def to_str(f: int) -> str:
    if f == 0:
        return "0"
    terms = []
    for i in range(degree(f) + 1):
        if f >> i & 1:
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
    return " + ".join(reversed(terms))
