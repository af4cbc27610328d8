"""Brute-force factorization checks over prime fields.

For a monoid algebra R[M], membership of f is the support test
Supp(f) ⊆ M, and units of the Laurent ring are c*x^s.  Scaling by c never
changes a support, so the fuzzer enumerates polynomials with first
coefficient 1 and searches shifts s only.

In one variable the shift question has an exact answer:

* qfc: some s with Supp(f)+s ⊆ M exists iff M = {0} and f is a monomial,
  or M != {0} and all exponents of f agree modulo d = gcd(M).
* pfc: the shift is confined to a finite window (see ``_window``), so a
  direct search there is complete.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

from . import gf2x
from .laurent import GF, LaurentPoly, render
from .monoid import FgMonoid, classify_Z_submonoid

EXACT = "ExactNoShift"
WITHIN_RADIUS = "NoShiftWithinRadius"
DEFAULT_POLY_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    pass


class NegativeExponent(ValueError):
    pass


@dataclass(frozen=True)
class FuzzConfig:
    box: tuple                      # (lower, upper) exponent bounds
    prop: str = "qfc"
    p: int = 2
    radius: int | None = None       # shift radius for n >= 2
    pair_budget: int = 10 ** 8
    poly_budget: int = DEFAULT_POLY_BUDGET
    max_counterexamples: int = 10

    def __post_init__(self):
        if self.prop not in ("fc", "pfc", "qfc"):
            raise ValueError(f"unknown property {self.prop!r}")
        GF(self.p)      # validates primality
        lower, upper = (tuple(int(x) for x in b) for b in self.box)
        if len(lower) != len(upper) or any(a > b for a, b in zip(lower, upper)):
            raise ValueError("malformed box")
        object.__setattr__(self, "box", (lower, upper))

    @property
    def shift_radius(self) -> int:
        if self.radius is not None:
            return self.radius
        return 2 * max(b - a for a, b in zip(*self.box))


@dataclass(frozen=True)
class Counterexample:
    f: LaurentPoly
    g: LaurentPoly
    product: LaurentPoly
    obstruction: str
    detail: str

    def to_dict(self):
        return {"f": render(self.f), "g": render(self.g), "product": render(self.product),
                "obstruction": self.obstruction, "detail": self.detail}


@dataclass
class OracleReport:
    prop: str
    pairs_checked: int = 0
    pairs_multiplied: int = 0
    counterexamples: list = field(default_factory=list)
    budget_exceeded: bool = False
    exact: bool = True

    def to_dict(self):
        return {"property": self.prop, "pairs_checked": self.pairs_checked,
                "pairs_multiplied": self.pairs_multiplied,
                "counterexamples": [c.to_dict() for c in self.counterexamples],
                "budget_exceeded": self.budget_exceeded, "exact": self.exact}


# polynomial enumeration


def enumerate_polynomials(box, p: int, budget: int = DEFAULT_POLY_BUDGET):
    """Nonzero polynomials over F_p with support in the box and first coefficient 1.

    Order: support size, then support (lexicographic), then coefficients.
    Yields ``(support, coefficients)`` pairs.
    """
    lower, upper = box
    points = list(itertools.product(*(range(a, b + 1) for a, b in zip(lower, upper))))
    total = sum(math.comb(len(points), k) * (p - 1) ** (k - 1) for k in range(1, len(points) + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} polynomials in the box, budget is {budget}")
    for k in range(1, len(points) + 1):
        for supp in itertools.combinations(points, k):
            for rest in itertools.product(range(1, p), repeat=k - 1):
                yield supp, (1,) + rest


def _to_poly(supp, coeffs, p, n):
    return LaurentPoly(dict(zip(supp, coeffs)), n, GF(p))


# shift sets


def _window(M: FgMonoid, box) -> int:
    lo, hi = box
    span = max(abs(x) for x in lo + hi)
    gmax = max((abs(g[0]) for g in M.generators), default=1)
    return 2 * span + gmax


def qfc_shiftable_1d(supp, M: FgMonoid) -> bool:
    """Exact: is there s with supp + s ⊆ M (n = 1)?"""
    cls = classify_Z_submonoid(M)
    exps = [e[0] for e in supp]
    if cls.kind == "Zero":
        return len(exps) == 1
    return len({e % cls.d for e in exps}) == 1


def shift_set(supp, M: FgMonoid, shifts, cache):
    """Shifts s from ``shifts`` with supp + s ⊆ M, as a frozenset."""
    out = []
    for s in shifts:
        if all(_member(M, tuple(a + b for a, b in zip(e, s)), cache) for e in supp):
            out.append(s)
    return frozenset(out)


def _member(M, point, cache):
    r = cache.get(point)
    if r is None:
        r = cache[point] = M.contains(point) is not None
    return r


def _shift_grid(n, R):
    return list(itertools.product(range(-R, R + 1), repeat=n))


# fuzzing


def fuzz_monoid_algebra(M: FgMonoid, cfg: FuzzConfig) -> OracleReport:
    n = M.n
    if len(cfg.box[0]) != n:
        raise ValueError("box dimension does not match the monoid")
    exact = n == 1 or cfg.prop == "fc"
    report = OracleReport(cfg.prop, exact=exact)
    polys = list(enumerate_polynomials(cfg.box, cfg.p, cfg.poly_budget))
    cache = {}

    if n == 1:
        R = _window(M, cfg.box)
        shifts = [(s,) for s in range(-R, R + 1)]
    else:
        shifts = _shift_grid(n, cfg.shift_radius)

    supports = sorted({s for s, _ in polys})
    sset = {}
    if cfg.prop == "pfc" or (cfg.prop == "qfc" and n > 1):
        for s in supports:
            sset[s] = shift_set(s, M, shifts, cache)

    def shiftable(fs, gs):
        if cfg.prop == "fc":
            return all(_member(M, e, cache) for e in fs + gs)
        if cfg.prop == "qfc":
            if n == 1:
                return qfc_shiftable_1d(fs, M) and qfc_shiftable_1d(gs, M)
            return bool(sset[fs]) and bool(sset[gs])
        neg = {tuple(-x for x in s) for s in sset[gs]}
        return not sset[fs].isdisjoint(neg)

    if cfg.prop == "qfc":
        # a pair can fail only through an unshiftable factor
        if n == 1:
            bad = {s for s in supports if not qfc_shiftable_1d(s, M)}
        else:
            bad = {s for s in supports if not sset[s]}
        cand_f = [i for i, (s, _) in enumerate(polys) if s in bad]
    else:
        cand_f = None

    lo_key = {s: (min(s), max(s)) for s in supports}
    use_bits = n == 1 and cfg.p == 2
    base = cfg.box[0][0] if n == 1 else 0
    masks = [sum(1 << (e[0] - base) for e in s) for s, _ in polys] if use_bits else None

    def product_in_M(i, j):
        if use_bits:
            prod = gf2x.mul(masks[i], masks[j])
            k = 0
            while prod:
                if prod & 1 and not _member(M, (k + 2 * base,), cache):
                    return None
                prod >>= 1
                k += 1
            return True
        f = _to_poly(*polys[i], cfg.p, n)
        g = _to_poly(*polys[j], cfg.p, n)
        fg = f * g
        return True if all(_member(M, e, cache) for e in fg.terms) else None

    def endpoints_ok(fs, gs):
        (a, b), (c, d) = lo_key[fs], lo_key[gs]
        lo = tuple(x + y for x, y in zip(a, c))
        hi = tuple(x + y for x, y in zip(b, d))
        return _member(M, lo, cache) and _member(M, hi, cache)

    total = len(polys)
    report.pairs_checked = 0
    pairs = _pairs(total, cand_f)
    if cand_f is not None:
        # covered pairs (both factors shiftable) are counted without a product
        good = total - len(cand_f)
        report.pairs_checked = good * (good + 1) // 2
    for i, j in pairs:
        if report.pairs_checked >= cfg.pair_budget:
            report.budget_exceeded = True
            break
        report.pairs_checked += 1
        fs, gs = polys[i][0], polys[j][0]
        if shiftable(fs, gs):
            continue
        if not endpoints_ok(fs, gs):
            continue
        report.pairs_multiplied += 1
        if product_in_M(i, j) is None:
            continue
        f = _to_poly(*polys[i], cfg.p, n)
        g = _to_poly(*polys[j], cfg.p, n)
        kind = EXACT if exact else WITHIN_RADIUS
        report.counterexamples.append(
            Counterexample(f, g, f * g, kind, _describe(cfg.prop, fs, gs, M, exact)))
        if len(report.counterexamples) >= cfg.max_counterexamples:
            break
    return report


def _pairs(total, cand):
    """Unordered index pairs ``i <= j``; with ``cand`` only pairs touching a candidate."""
    if cand is None:
        for j in range(total):
            for i in range(j + 1):
                yield i, j
        return
    cset = set(cand)
    for j in range(total):
        if j in cset:
            for i in range(j + 1):
                yield i, j
        else:
            for i in cand[:bisect.bisect_right(cand, j)]:
                yield i, j


def _describe(prop, fs, gs, M, exact):
    if prop == "fc":
        return "a factor has support outside M"
    if prop == "qfc":
        if exact:
            cls = classify_Z_submonoid(M)
            who = "f" if not qfc_shiftable_1d(fs, M) else "g"
            if cls.kind == "Zero":
                return f"{who} is not a monomial and M = 0"
            return f"exponents of {who} are not congruent mod {cls.d}"
        return "no shift within radius places a factor in M"
    return "no single shift s places f*x^s and g*x^-s in M"


def verify_counterexample(M: FgMonoid, cx: Counterexample, prop: str, radius: int) -> bool:
    """Recheck the product and the obstruction by direct shift search."""
    if cx.f * cx.g != cx.product:
        return False
    if any(M.contains(e) is None for e in cx.product.terms):
        return False
    shifts = _shift_grid(M.n, radius)
    cache = {}
    fs, gs = tuple(sorted(cx.f.terms)), tuple(sorted(cx.g.terms))
    if prop == "fc":
        return not all(_member(M, e, cache) for e in fs + gs)
    sf = shift_set(fs, M, shifts, cache)
    sg = shift_set(gs, M, shifts, cache)
    if prop == "qfc":
        return not (sf and sg)
    return sf.isdisjoint({tuple(-x for x in s) for s in sg})


def agreement_check(M: FgMonoid, cfg: FuzzConfig) -> bool:
    """Compare ``qfc_monoid`` with the fuzzer; evidence mode only warns for n >= 2."""
    from .decide import qfc_monoid

    verdict = qfc_monoid(M)
    report = fuzz_monoid_algebra(M, FuzzConfig(cfg.box, "qfc", cfg.p, cfg.radius,
                                               cfg.pair_budget, cfg.poly_budget,
                                               cfg.max_counterexamples))
    if verdict.is_no:
        ok = any(c.obstruction == EXACT for c in report.counterexamples) if report.exact \
            else bool(report.counterexamples)
    else:
        ok = not report.counterexamples
    if not report.exact and not ok:
        warnings.warn(f"oracle evidence disagrees with qfc verdict for {M!r}")
        return True
    return ok


# the F_2 algebra generated by irreducibles


def _to_mask(f: LaurentPoly):
    if f.domain != GF(2) or f.n != 1:
        raise ValueError("expected a polynomial in one variable over GF(2)")
    if f.is_zero():
        raise ValueError("expected a nonzero polynomial")
    lo = min(e[0] for e in f.terms)
    shift = max(0, -lo)
    return sum(1 << (e[0] + shift) for e in f.terms), shift


def _from_mask(mask: int, offset: int = 0) -> LaurentPoly:
    terms = {}
    k = 0
    while mask:
        if mask & 1:
            terms[(k + offset,)] = 1
        mask >>= 1
        k += 1
    return LaurentPoly(terms, 1, GF(2))


def irreducibles_F2(max_degree: int):
    """Irreducible polynomials over F_2 of degree 2..max_degree."""
    return [_from_mask(f) for f in gf2x.irreducibles(max_degree) if gf2x.degree(f) >= 2]


class F2Witness(NamedTuple):
    shift: int
    factors: list       # [(poly, exponent), ...]; x^2 + x comes first when present

    def product(self) -> LaurentPoly:
        out = LaurentPoly.constant(1, 1, GF(2))
        for g, e in self.factors:
            out = out * g ** e
        return out


X_TIMES_X_PLUS_1 = _from_mask(0b110)


def strong_qfc_witness_F2(f: LaurentPoly) -> F2Witness:
    """``x^shift * f`` as a product of x(x+1) and irreducibles of degree >= 2."""
    mask, n0 = _to_mask(f)
    parts = gf2x.factor(mask)
    a = sum(e for g, e in parts if g == gf2x.X)
    b = sum(e for g, e in parts if g == gf2x.X_PLUS_1)
    factors = []
    if b:
        factors.append((X_TIMES_X_PLUS_1, b))
    factors += [(_from_mask(g), e) for g, e in parts if gf2x.degree(g) >= 2]
    return F2Witness(n0 - a + b, factors)


def check_F2_witness(f: LaurentPoly, w: F2Witness) -> bool:
    """Re-multiply and confirm every factor is a generator or x(x+1)."""
    if f.shift((w.shift,)) != w.product():
        return False
    for g, e in w.factors:
        if e < 1:
            return False
        if g == X_TIMES_X_PLUS_1:
            continue
        mask, off = _to_mask(g)
        if off or gf2x.degree(mask) < 2 or gf2x.factor(mask) != [(mask, 1)]:
            return False
    return True


def no_monomial_invariant_F2(f: LaurentPoly) -> bool:
    """Whether f(0) == f(1); true on the algebra generated by the irreducibles."""
    if f.domain != GF(2) or f.n != 1:
        raise ValueError("expected a polynomial in one variable over GF(2)")
    if any(e[0] < 0 for e in f.terms):
        raise NegativeExponent("evaluation at 0 needs a polynomial")
    at0 = f.coefficient((0,)) % 2
    at1 = len(f) % 2
    return at0 == at1


def random_algebra_element(rng: random.Random, max_degree: int = 6, terms: int = 4,
                           max_word: int = 3) -> LaurentPoly:
    """Random F_2-combination of products of irreducibles of degree 2..max_degree."""
    gens = irreducibles_F2(max_degree)
    total = LaurentPoly.zero(1, GF(2))
    for _ in range(rng.randint(1, terms)):
        word = LaurentPoly.constant(1, 1, GF(2))
        for _ in range(rng.randint(0, max_word)):
            word = word * rng.choice(gens)
        total = total + word
    return total
