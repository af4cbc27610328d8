"""Rational polyhedral cones spanned by integer generators.

Facets come from Fourier-Motzkin elimination of the coefficient variables
in ``x = sum(lambda_j g_j), lambda >= 0``.  Everything is exact; normals are
returned inside the real span of the generators, as primitive integer
vectors.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .lattice import group_of, saturation

MAX_DIMENSION = 6
DEFAULT_BOX_BUDGET = int(os.environ.get("QFC_ENUM_BUDGET", 1_000_000))


class ZeroSpan(ValueError):
    pass


class BoxTooLarge(ValueError):
    pass


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ConeHRep:
    """Cone = {u in span : <u, v> >= 0 for every normal v}."""

    normals: tuple
    span_basis: tuple   # integer basis of R(D) ∩ Z^n
    orthogonal: tuple   # integer basis of the orthogonal complement of R(D)
    n: int

    @property
    def dim(self) -> int:
        return len(self.span_basis)

    def in_span(self, p) -> bool:
        return all(_linalg.dot(p, z) == 0 for z in self.orthogonal)

    def lineality_basis(self):
        """Rational basis of the largest linear subspace inside the cone."""
        if not self.span_basis:
            return []
        if not self.normals:
            return [list(map(Fraction, b)) for b in self.span_basis]
        # coordinates y over span_basis with <y @ span_basis, v> = 0 for all v
        rows = [[_linalg.dot(b, v) for b in self.span_basis] for v in self.normals]
        out = []
        for y in _linalg.nullspace(rows, len(self.span_basis)):
            out.append([sum(y[i] * self.span_basis[i][j] for i in range(len(y)))
                        for j in range(self.n)])
        return out

    def is_pointed(self) -> bool:
        return not self.lineality_basis()


def _check_dim(n):
    if n > MAX_DIMENSION:
        raise DimensionTooLarge(f"cone computations limited to n <= {MAX_DIMENSION}, got {n}")


def _normalize(row):
    return _linalg.primitive(row)


def _fourier_motzkin(gens, n):
    """Inequalities ``<x, c> >= 0`` (over x only) implied by x in Cone(gens)."""
    k = len(gens)
    # constraint rows over (x_0..x_{n-1}, l_0..l_{k-1})
    eqs = []
    for i in range(n):
        row = [Fraction(0)] * (n + k)
        row[i] = Fraction(1)
        for j, g in enumerate(gens):
            row[n + j] = Fraction(-g[i])
        eqs.append(row)
    ineqs = set()
    for j in range(k):
        row = [0] * (n + k)
        row[n + j] = 1
        ineqs.add(tuple(row))

    for j in range(k):
        var = n + j
        piv = next((e for e in eqs if e[var] != 0), None)
        if piv is not None:
            eqs.remove(piv)
            new_eqs = []
            for e in eqs:
                if e[var] != 0:
                    f = e[var] / piv[var]
                    e = [a - f * b for a, b in zip(e, piv)]
                if any(e):
                    new_eqs.append(e)
            eqs = new_eqs
            new_ineqs = set()
            for c in ineqs:
                if c[var] != 0:
                    f = Fraction(c[var]) / piv[var]
                    c = [a - f * b for a, b in zip(c, piv)]
                if any(c):
                    new_ineqs.add(_normalize(c))
            ineqs = new_ineqs
            continue
        pos = [c for c in ineqs if c[var] > 0]
        neg = [c for c in ineqs if c[var] < 0]
        new_ineqs = {c for c in ineqs if c[var] == 0}
        for a, b in itertools.product(pos, neg):
            comb = [x * (-b[var]) + y * a[var] for x, y in zip(a, b)]
            if any(comb):
                new_ineqs.add(_normalize(comb))
        ineqs = new_ineqs
    return [c[:n] for c in ineqs]


def facet_normals(generators) -> ConeHRep:
    """Irredundant half-space description of Cone(generators) inside its span."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ValueError("at least one generator is required")
    n = len(gens[0])
    _check_dim(n)
    gens = [g for g in gens if any(g)]
    if not gens:
        return ConeHRep((), (), tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    span = saturation(group_of(gens, n)).basis
    r = len(span)
    orth = tuple(_linalg.primitive(z) for z in _linalg.nullspace([list(b) for b in span], n))

    normals = set()
    for c in _fourier_motzkin(gens, n):
        v = _linalg.project_onto_rowspace(c, span)
        if not any(v):
            continue
        v = _linalg.primitive(v)
        on_face = [g for g in gens if _linalg.dot(g, v) == 0]
        # facet test: the face spanned by generators on the hyperplane has dimension r-1
        if _linalg.rank(on_face) == r - 1:
            normals.add(v)
    return ConeHRep(tuple(sorted(normals)), span, orth, n)


def interior_vector(generators):
    """Sum of a real basis of R(D) picked greedily from the generators."""
    gens = [tuple(int(x) for x in g) for g in generators]
    idx = _linalg.independent_subset([g for g in gens])
    idx = [i for i in idx if any(gens[i])]
    if not idx:
        raise ZeroSpan("all generators are zero")
    n = len(gens[0])
    return tuple(sum(gens[i][j] for i in idx) for j in range(n))


def cone_contains(hrep: ConeHRep, p) -> bool:
    if len(p) != hrep.n:
        raise ValueError(f"point of length {len(p)} in Z^{hrep.n}")
    return hrep.in_span(p) and all(_linalg.dot(p, v) >= 0 for v in hrep.normals)


def in_interior(hrep: ConeHRep, p) -> bool:
    """Strictly positive on every facet (relative interior)."""
    return hrep.in_span(p) and all(_linalg.dot(p, v) > 0 for v in hrep.normals)


def box_volume(lower, upper) -> int:
    return math.prod(max(0, hi - lo + 1) for lo, hi in zip(lower, upper))


def box_points(lower, upper, budget: int | None = None):
    if len(lower) != len(upper):
        raise ValueError("box bounds of different length")
    if any(lo > hi for lo, hi in zip(lower, upper)):
        raise ValueError("box lower bound exceeds upper bound")
    budget = DEFAULT_BOX_BUDGET if budget is None else budget
    vol = box_volume(lower, upper)
    if vol > budget:
        raise BoxTooLarge(f"box holds {vol} points, budget is {budget}")
    return itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper)))


def lattice_points_in_box(hrep: ConeHRep, box, budget: int | None = None):
    """Integer points of the box lying in the cone, in lexicographic order."""
    lower, upper = box
    return [p for p in box_points(lower, upper, budget) if cone_contains(hrep, p)]
