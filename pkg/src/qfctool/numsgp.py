"""Numerical semigroups: submonoids of N with finite complement."""

from __future__ import annotations

from functools import reduce
from math import gcd


class NotNumerical(ValueError):
    """The generators have gcd ``d > 1``, so the complement in N is infinite."""

    def __init__(self, d):
        super().__init__(f"generators have gcd {d}")
        self.d = d


class NotMember(ValueError):
    pass


class NumericalSemigroup:
    """Membership table up to ``max(gens) * min(gens)``, which exceeds the Frobenius number."""

    def __init__(self, generators):
        gens = sorted(set(int(g) for g in generators))
        if not gens:
            raise ValueError("at least one generator is required")
        if gens[0] <= 0:
            raise ValueError("generators must be positive")
        d = reduce(gcd, gens)
        if d != 1:
            raise NotNumerical(d)
        self.generators = tuple(gens)
        self._bound = gens[0] * gens[-1]
        table = [False] * (self._bound + 1)
        table[0] = True
        for a in range(1, self._bound + 1):
            table[a] = any(a >= g and table[a - g] for g in gens)
        self.gaps = tuple(a for a, ok in enumerate(table) if not ok)
        self.frobenius = self.gaps[-1] if self.gaps else -1
        self._table = table
        self._apery = {}

    @classmethod
    def from_generators(cls, gens):
        return cls(gens)

    def __repr__(self):
        return f"NumericalSemigroup({list(self.generators)})"

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    def __contains__(self, a) -> bool:
        return self.membership(a)

    def membership(self, a: int) -> bool:
        if a < 0:
            return False
        if a > self.frobenius:
            return True
        return self._table[a]

    def apery_set(self, m: int):
        """Least element of S in each residue class mod ``m``, indexed by residue."""
        if m <= 0 or not self.membership(m):
            raise NotMember(f"{m} is not a positive element of {self!r}")
        if m not in self._apery:
            out = [None] * m
            found = 0
            a = 0
            while found < m:
                if out[a % m] is None and self.membership(a):
                    out[a % m] = a
                    found += 1
                a += 1
            self._apery[m] = tuple(out)
        return list(self._apery[m])


def from_generators(gens) -> NumericalSemigroup:
    return NumericalSemigroup(gens)


def frobenius(gens) -> int:
    return NumericalSemigroup(gens).frobenius


def gaps(gens):
    return list(NumericalSemigroup(gens).gaps)


def genus(gens) -> int:
    return NumericalSemigroup(gens).genus


def apery_set(S: NumericalSemigroup, m: int):
    return S.apery_set(m)


def membership(S: NumericalSemigroup, a: int) -> bool:
    return S.membership(a)
