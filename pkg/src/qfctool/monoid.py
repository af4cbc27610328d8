"""Finitely generated submonoids of Z^n.

Membership splits the generators into units (those on the lineality space
of the cone) and the rest.  A point is written as a bounded nonnegative
combination of the non-units plus an element of the unit group; the bound
comes from pairing with the sum of the facet normals, which is positive on
every non-unit generator and zero on the units.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce

from . import _linalg
from .cone import (ConeHRep, box_points, cone_contains, facet_normals, in_interior)
from .lattice import (LatticeSubgroup, group_of, hnf, integer_inverse, is_direct_summand,
                      snf, vecmat)
from .numsgp import NumericalSemigroup
from .verdict import NormalityCover, NotNormalPoint, no, unknown, yes

DEFAULT_NODE_BUDGET = 500_000
DEFAULT_NORMALITY_BUDGET = 200_000
EVIDENCE_SAMPLES = 16


class Undecided(RuntimeError):
    """Membership search ran out of budget."""


def nonnegative_solution(vectors, b):
    """Rational ``lam >= 0`` with ``sum(lam_i * vectors[i]) == b``, or ``None``.

    Tries every linearly independent subset of full rank (basic solutions).
    """
    vectors = [tuple(v) for v in vectors]
    if not any(b):
        return [Fraction(0)] * len(vectors)
    r = _linalg.rank(vectors) if vectors else 0
    if r == 0:
        return None
    for idx in itertools.combinations(range(len(vectors)), r):
        B = [vectors[i] for i in idx]
        if _linalg.rank(B) < r:
            continue
        x = _linalg.solve_left(B, b)
        if x is None:
            return None     # b is outside the span
        if all(c >= 0 for c in x):
            lam = [Fraction(0)] * len(vectors)
            for i, c in zip(idx, x):
                lam[i] = c
            return lam
    return None


@dataclass(frozen=True)
class ZClass:
    """Sign pattern and gcd of a submonoid of Z: Zero, dN, dNegN or dZ."""

    kind: str
    d: int = 0

    def __str__(self):
        return self.kind if self.kind == "Zero" else f"{self.kind}({self.d})"


@dataclass(frozen=True)
class GapEvidence:
    base: tuple
    direction: tuple
    samples: int

    def to_dict(self):
        return {"base": list(self.base), "direction": list(self.direction),
                "samples": self.samples}


class GapStatus:
    EMPTY = "Empty"
    FINITE_EXACT = "FiniteExact"
    FINITE_WITHIN_BOX = "FiniteWithinBox"
    INFINITE_EVIDENCE = "InfiniteEvidence"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class GapReport:
    status: str
    elements: tuple
    box: tuple
    evidence: GapEvidence | None = None

    def __post_init__(self):
        if self.status == GapStatus.EMPTY and self.elements:
            raise ValueError("an Empty gap report cannot list elements")

    def to_dict(self):
        return {
            "status": self.status,
            "elements": [list(e) for e in self.elements],
            "count": len(self.elements),
            "box": [list(self.box[0]), list(self.box[1])],
            "evidence": None if self.evidence is None else self.evidence.to_dict(),
        }


class FgMonoid:
    """The submonoid of Z^n generated by a finite list of vectors."""

    def __init__(self, generators, n: int | None = None, node_budget: int = DEFAULT_NODE_BUDGET):
        gens = [tuple(int(x) for x in g) for g in generators]
        if n is None:
            if not gens:
                raise ValueError("ambient rank needed for an empty generator list")
            n = len(gens[0])
        if n < 1:
            raise ValueError("ambient rank must be at least 1")
        if any(len(g) != n for g in gens):
            raise ValueError("generators of mixed length")
        seen = []
        for g in gens:
            if any(g) and g not in seen:
                seen.append(g)
        self.generators = tuple(seen)
        self.n = n
        self.node_budget = node_budget

    @classmethod
    def integers(cls, values):
        """Submonoid of Z from plain integers."""
        return cls([(int(v),) for v in values], 1)

    def __repr__(self):
        return f"FgMonoid({[list(g) for g in self.generators]}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, FgMonoid) and (self.n, set(self.generators)) == \
            (other.n, set(other.generators))

    def __hash__(self):
        return hash((self.n, frozenset(self.generators)))

    # cached structure

    @cached_property
    def group(self) -> LatticeSubgroup:
        return group_of(self.generators, self.n)

    @cached_property
    def cone(self) -> ConeHRep:
        return facet_normals(self.generators or [(0,) * self.n])

    @cached_property
    def _split(self):
        units = [i for i, g in enumerate(self.generators)
                 if all(_linalg.dot(g, v) == 0 for v in self.cone.normals)]
        rest = [i for i in range(len(self.generators)) if i not in units]
        return units, rest

    @cached_property
    def unit_group(self) -> LatticeSubgroup:
        units, _ = self._split
        return group_of([self.generators[i] for i in units], self.n)

    @cached_property
    def _unit_tools(self):
        """HNF transform for the unit generators and a positive relation among them."""
        units, _ = self._split
        if not units:
            return None
        L = [self.generators[i] for i in units]
        H, U = hnf(L)
        k = sum(1 for r in H if any(r))
        # the units positively span a linear space, so -sum(L) is a nonnegative combination
        mu = nonnegative_solution(L, tuple(-x for x in map(sum, zip(*L))))
        lam = [1 + c for c in mu]
        den = reduce(math.lcm, (c.denominator for c in lam), 1)
        relation = [int(c * den) for c in lam]
        return units, U[:k], relation

    def is_group(self) -> bool:
        return not self._split[1]

    def is_pointed(self) -> bool:
        return self.unit_group.rank == 0

    # membership

    def _unit_coefficients(self, v):
        """Nonnegative coefficients over the unit generators summing to ``v``."""
        y = self.unit_group.coordinates(v)
        if y is None:
            return None
        units, Urows, relation = self._unit_tools
        z = [sum(y[i] * Urows[i][j] for i in range(len(y))) for j in range(len(units))]
        t = max([0] + [-(z[j] // relation[j]) for j in range(len(z))])
        return [z[j] + t * relation[j] for j in range(len(z))]

    def contains(self, a):
        """Nonnegative coefficients ``c`` with ``sum(c_i g_i) == a``, or ``None``."""
        a = tuple(int(x) for x in a)
        if len(a) != self.n:
            raise ValueError(f"point of length {len(a)} in Z^{self.n}")
        if not any(a):
            return (0,) * len(self.generators)
        if not self.generators or a not in self.group or not cone_contains(self.cone, a):
            return None
        units, rest = self._split
        coeffs = [0] * len(self.generators)
        if not rest:
            for i, c in zip(units, self._unit_coefficients(a)):
                coeffs[i] = c
            return tuple(coeffs)

        s = [sum(col) for col in zip(*self.cone.normals)]
        weights = [_linalg.dot(self.generators[i], s) for i in rest]
        hrep = self.cone
        dead = set()
        nodes = 0
        chosen = [0] * len(rest)

        def search(k, rem):
            nonlocal nodes
            nodes += 1
            if nodes > self.node_budget:
                raise Undecided(f"membership of {a} exceeded {self.node_budget} nodes")
            if k == len(rest):
                if not any(rem):
                    return [0] * len(units)
                return self._unit_coefficients(rem) if units else None
            if (k, rem) in dead:
                return None
            g = self.generators[rest[k]]
            cap = _linalg.dot(rem, s) // weights[k]
            for c in range(cap, -1, -1):
                r = tuple(x - c * y for x, y in zip(rem, g))
                if not cone_contains(hrep, r):
                    continue
                chosen[k] = c
                found = search(k + 1, r)
                if found is not None:
                    return found
            dead.add((k, rem))
            return None

        tail = search(0, a)
        if tail is None:
            return None
        for i, c in zip(rest, chosen):
            coeffs[i] = c
        for i, c in zip(units, tail):
            coeffs[i] = c
        assert self.evaluate(coeffs) == a
        return tuple(coeffs)

    def __contains__(self, a) -> bool:
        return self.contains(a) is not None

    def evaluate(self, coeffs):
        return tuple(sum(c * g[j] for c, g in zip(coeffs, self.generators)) for j in range(self.n))

    # normality

    def _parallelepiped_points(self, budget):
        """Points of <M> in the half-open parallelepipeds over generator bases.

        Yields ``(point, basis, denominators)`` lazily; raises ``Undecided``
        once more than ``budget`` points have been produced.
        """
        G = self.group.basis
        r = len(G)
        if r == 0:
            return
        produced = 0
        for idx in itertools.combinations(range(len(self.generators)), r):
            B = [self.generators[i] for i in idx]
            if _linalg.rank(B) < r:
                continue
            K = [_linalg.solve_left(G, b) for b in B]
            K = [[int(x) for x in row] for row in K]
            dec = snf(K)
            Vinv = integer_inverse(dec.V)
            ranges = [range(d) for d in dec.diagonal]
            for z in itertools.product(*ranges):
                produced += 1
                if produced > budget:
                    raise Undecided(f"normality check exceeded {budget} points")
                x = vecmat(z, Vinv)
                p = vecmat(x, G)
                q = _linalg.solve_left(B, p)
                frac = [c - math.floor(c) for c in q]
                point = tuple(int(sum(frac[i] * B[i][j] for i in range(r))) for j in range(self.n))
                yield point, B, frac

    def is_normal(self, budget: int = DEFAULT_NORMALITY_BUDGET):
        """Decide whether every point of Cone(M) ∩ <M> lies in M."""
        if not self.generators:
            return yes("normal", NormalityCover((), 0))
        try:
            cover = {}
            bad = {}
            bases = 0
            last = None
            for point, B, frac in self._parallelepiped_points(budget):
                if B is not last:
                    bases += 1
                    last = B
                if point in cover or point in bad:
                    continue
                c = self.contains(point)
                if c is None:
                    den = reduce(math.lcm, (f.denominator for f in frac), 1)
                    bad[point] = den
                else:
                    cover[point] = c
        except Undecided as exc:
            return unknown("normal", str(exc))
        if bad:
            a = min(bad, key=lambda p: (sum(map(abs, p)), p))
            m = 2
            while self.contains(tuple(m * x for x in a)) is None:
                m += 1
            return no("normal", NotNormalPoint(a, m, self.contains(tuple(m * x for x in a))))
        points = tuple(sorted(cover.items()))
        return yes("normal", NormalityCover(points, bases))

    # gaps

    def gap_set(self, box, budget: int | None = None) -> GapReport:
        lower, upper = (tuple(int(x) for x in b) for b in box)
        if len(lower) != self.n or len(upper) != self.n:
            raise ValueError(f"box bounds must have length {self.n}")
        pts = box_points(lower, upper, budget)
        box = (lower, upper)

        if self._gap_free():
            return GapReport(GapStatus.EMPTY, (), box)

        if self.n == 1:
            cls = classify_Z_submonoid(self)
            if cls.d == 1:
                sign = 1 if cls.kind == "dN" else -1
                S = NumericalSemigroup([sign * g[0] for g in self.generators])
                return GapReport(GapStatus.FINITE_EXACT, tuple((sign * x,) for x in S.gaps), box)

        elements = tuple(p for p in pts if self.is_gap(p))
        if not elements:
            if self.is_pointed():
                return GapReport(GapStatus.FINITE_WITHIN_BOX, (), box)
            return GapReport(GapStatus.UNKNOWN, (), box)

        ev = self._infinite_evidence(elements)
        if ev is not None:
            return GapReport(GapStatus.INFINITE_EVIDENCE, elements, box, ev)

        def on_shell(p):
            return any((p[i] == upper[i] and upper[i] > 0) or (p[i] == lower[i] and lower[i] < 0)
                       for i in range(self.n))

        if self.is_pointed() and not any(on_shell(p) for p in elements):
            return GapReport(GapStatus.FINITE_WITHIN_BOX, elements, box)
        return GapReport(GapStatus.UNKNOWN, elements, box)

    def is_gap(self, p) -> bool:
        """``p`` lies in the cone of M but not in M."""
        p = tuple(p)
        return cone_contains(self.cone, p) and self.contains(p) is None

    def image(self, A) -> "FgMonoid":
        """The monoid ``{g A : g in M}`` for an integer matrix ``A``."""
        return FgMonoid([vecmat(g, A) for g in self.generators], self.n, self.node_budget)

    def _gap_free(self) -> bool:
        """Gap is provably empty: M normal and <M> a direct summand."""
        if not is_direct_summand(self.group):
            return False
        return self.is_normal().is_yes

    def _directions(self):
        dirs = set()
        for g in self.generators:
            dirs.add(g)
            dirs.add(_linalg.primitive(g))
        for i in range(self.n):
            e = tuple(int(i == j) for j in range(self.n))
            dirs.add(e)
            dirs.add(tuple(-x for x in e))
        return sorted(dirs, key=lambda d: (sum(map(abs, d)), tuple(-x for x in d)))

    def _infinite_evidence(self, elements):
        def norm_key(p):
            return (sum(map(abs, p)), p)

        inner = sorted((p for p in elements if in_interior(self.cone, p)), key=norm_key)
        outer = sorted((p for p in elements if not in_interior(self.cone, p)), key=norm_key)
        dirs = self._directions()
        for g in inner + outer:
            for d in dirs:
                ok = True
                for k in range(EVIDENCE_SAMPLES):
                    q = tuple(x + k * y for x, y in zip(g, d))
                    if not self.is_gap(q):
                        ok = False
                        break
                if ok:
                    return GapEvidence(g, d, EVIDENCE_SAMPLES)
        return None


def classify_Z_submonoid(M: FgMonoid) -> ZClass:
    if M.n != 1:
        raise ValueError("classification needs a submonoid of Z")
    vals = [g[0] for g in M.generators]
    if not vals:
        return ZClass("Zero", 0)
    d = reduce(math.gcd, vals)
    if all(v > 0 for v in vals):
        return ZClass("dN", d)
    if all(v < 0 for v in vals):
        return ZClass("dNegN", d)
    return ZClass("dZ", d)


def contains(M: FgMonoid, a):
    return M.contains(a)


def unit_group(M: FgMonoid) -> LatticeSubgroup:
    return M.unit_group


def is_normal(M: FgMonoid):
    return M.is_normal()


def gap_set(M: FgMonoid, box, budget: int | None = None) -> GapReport:
    return M.gap_set(box, budget)
