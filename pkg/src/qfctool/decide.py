"""Decisions for fc / pfc / qfc / retract / normality.

Monoid algebras R[M] are decided through lattice and cone computations on
M.  General finitely generated subalgebras are handled by a bounded search
for monic monomials inside the algebra, which yields exact Yes answers when
the search finds enough of them and exact No answers in one variable when a
gcd obstruction is visible from the generators.

An "expression" is a polynomial in generator symbols g1..gk, stored as a
LaurentPoly with nonnegative exponents.  Substituting the generators gives
back the element it represents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from . import _linalg
from .cone import facet_normals, interior_vector
from .laurent import (CoefficientDomain, LaurentPoly, QQ, is_monic_monomial, parse, render)
from .lattice import (complete_basis, extend_to_basis, group_of, hnf, integer_inverse,
                      is_direct_summand, saturation, torsion_element, vecmat)
from .monoid import FgMonoid, GapReport, GapStatus, classify_Z_submonoid
from .verdict import (GcdOne, GcdTooBig, KeyLemmaWitness, MissingUnit, NotAGroup,
                      StandardMonoidBasis, SummandBasis, TorsionElement, no, unknown, yes)

DEFAULT_WORD_LENGTH = 4
DEFAULT_MAX_DIM = 5000


class StatusNotCertified(ValueError):
    pass


class HypothesisUnmet(ValueError):
    pass


class NotAField(ValueError):
    pass


def field_assumption(d: int) -> str:
    return f"coefficient field with at least {d} elements"


# subalgebras and expressions


@dataclass(frozen=True)
class SubalgebraSpec:
    domain: CoefficientDomain
    n: int
    generators: tuple
    max_length: int = DEFAULT_WORD_LENGTH
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        gens = tuple(self.generators)
        if any(g.is_zero() for g in gens):
            raise ValueError("generators must be nonzero")
        if any(g.n != self.n or g.domain != self.domain for g in gens):
            raise ValueError("generators must share the ambient ring")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def parse(cls, texts, domain: CoefficientDomain = QQ, n: int | None = None, **kw):
        """Build from generator strings in the polynomial text grammar."""
        if isinstance(texts, str):
            texts = [t for t in texts.split(";") if t.strip()]
        if n is None:
            n = max(parse(t, domain=domain).n for t in texts)
        return cls(domain, n, tuple(parse(t, n, domain) for t in texts), **kw)

    def monomial_exponents(self):
        """Exponents of the generators when all are monic monomials, else ``None``."""
        out = []
        for g in self.generators:
            e = is_monic_monomial(g)
            if e is None:
                return None
            out.append(e)
        return out


def render_expression(P: LaurentPoly) -> str:
    """``g1*g2 - g3`` style text, longest words first."""
    if P.is_zero():
        return "0"
    items = sorted(P.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))
    single = LaurentPoly({e: c for e, c in items[:1]}, P.n, P.domain)
    out = render(single)
    for e, c in items[1:]:
        term = render(LaurentPoly({e: c}, P.n, P.domain))
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out.replace("x", "g")


def parse_expression(text: str, k: int, domain: CoefficientDomain) -> LaurentPoly:
    return parse(text.replace("g", "x"), k, domain)


def evaluate_expression(P: LaurentPoly, generators) -> LaurentPoly:
    g0 = generators[0]
    total = LaurentPoly.zero(g0.n, g0.domain)
    for e, c in P.terms.items():
        term = LaurentPoly.constant(c, g0.n, g0.domain)
        for g, k in zip(generators, e):
            if k < 0:
                raise ValueError("expressions use nonnegative powers of generators")
            if k:
                term = term * g ** k
        total = total + term
    return total


@dataclass
class MonomialDiscovery:
    exponents: tuple                    # sorted exponents of monic monomials found
    expressions: dict                   # exponent -> expression (LaurentPoly in g1..gk)
    budget_exceeded: bool = False
    words: int = 0
    rank: int = 0

    def render(self, a) -> str:
        return render_expression(self.expressions[tuple(a)])


def _words(k, L):
    """Multisets of generator indices of size 0..L, by size then lexicographically."""
    yield ()
    level = [()]
    for _ in range(L):
        nxt = []
        for w in level:
            start = w[-1] if w else 0
            for i in range(start, k):
                nxt.append(w + (i,))
        yield from nxt
        level = nxt


def discover_monomials(A: SubalgebraSpec, max_length: int | None = None,
                       max_dim: int | None = None) -> MonomialDiscovery:
    """Monic monomials in the span of generator products of length <= L.

    Keeps a fully reduced echelon basis of the span with pivots at the
    lexicographically largest exponent.  A monomial lies in the span iff
    some basis row is that single monomial.
    """
    if not A.domain.is_field:
        raise NotAField("monomial discovery needs a coefficient field")
    L = A.max_length if max_length is None else max_length
    cap = A.max_dim if max_dim is None else max_dim
    k = len(A.generators)
    dom = A.domain
    one = LaurentPoly.constant(1, A.n, dom)

    rows = {}        # pivot -> (terms dict, combination dict over word exponents)
    found = {}
    products = {(): one}
    used = 0
    exceeded = False

    def word_exp(w):
        return tuple(w.count(i) for i in range(k))

    def record(pivot):
        terms, comb = rows[pivot]
        if len(terms) == 1 and pivot not in found:
            found[pivot] = LaurentPoly(comb, k, dom)

    for w in _words(k, L):
        if used >= cap:
            exceeded = True
            break
        used += 1
        if w not in products:
            products[w] = products[w[:-1]] * A.generators[w[-1]]
        terms = dict(products[w].terms)
        comb = {word_exp(w): dom(1)}
        # rows are fully reduced, so one pass over pivot columns suffices
        for e in [e for e in terms if e in rows]:
            c = terms[e]
            rterms, rcomb = rows[e]
            for x, v in rterms.items():
                terms[x] = dom.normal(terms.get(x, 0) - c * v)
                if terms[x] == 0:
                    del terms[x]
            for x, v in rcomb.items():
                comb[x] = dom.normal(comb.get(x, 0) - c * v)
                if comb[x] == 0:
                    del comb[x]
        if not terms:
            continue
        piv = max(terms)
        inv = dom.inv(terms[piv])
        terms = {x: dom.normal(v * inv) for x, v in terms.items()}
        comb = {x: dom.normal(v * inv) for x, v in comb.items()}
        # eliminate the new pivot from older rows
        for p, (rterms, rcomb) in list(rows.items()):
            c = rterms.get(piv)
            if c:
                for x, v in terms.items():
                    rterms[x] = dom.normal(rterms.get(x, 0) - c * v)
                    if rterms[x] == 0:
                        del rterms[x]
                for x, v in comb.items():
                    rcomb[x] = dom.normal(rcomb.get(x, 0) - c * v)
                    if rcomb[x] == 0:
                        del rcomb[x]
                record(p)
        rows[piv] = (terms, comb)
        record(piv)

    return MonomialDiscovery(tuple(sorted(found)), found, exceeded, used, len(rows))


# monoid algebras


def _as_monoid(M) -> FgMonoid:
    if isinstance(M, FgMonoid):
        return M
    if isinstance(M, SubalgebraSpec):
        exps = M.monomial_exponents()
        if exps is None:
            raise ValueError("subalgebra is not generated by monic monomials")
        return FgMonoid(exps, M.n)
    raise TypeError(f"expected FgMonoid or SubalgebraSpec, got {type(M).__name__}")


def qfc_monoid(M: FgMonoid):
    """R[M] is qfc iff <M> is a direct summand of Z^n."""
    M = _as_monoid(M)
    H = M.group
    if M.n == 1 and H.rank == 1 and H.basis == ((1,),):
        _, U = hnf(M.generators)
        exps = tuple(g[0] for g in M.generators)
        return yes("qfc", GcdOne(exps, tuple(U[0])))
    if is_direct_summand(H):
        C, r = extend_to_basis(H)
        return yes("qfc", SummandBasis(C, r))
    t, m = torsion_element(H)
    return no("qfc", TorsionElement(t, m), reason=f"<M> has torsion quotient of order {m}")


def _standard_proofs(M: FgMonoid, C, s, t):
    proofs = []
    for i in range(s):
        proofs.append((C[i], M.contains(C[i])))
    for i in range(s, s + t):
        neg = tuple(-x for x in C[i])
        proofs.append((C[i], M.contains(C[i])))
        proofs.append((neg, M.contains(neg)))
    if any(p is None for _, p in proofs):
        return None
    return tuple(proofs)


def _recognize_standard(M: FgMonoid):
    """``(C, s, t)`` when M is the image of N^s x Z^t under a unimodular C."""
    U = M.unit_group
    units, rest = M._split
    hrep = M.cone
    t = U.rank
    s = len(hrep.normals)
    if s + t != M.group.rank:
        return None
    picks = []
    for v in hrep.normals:
        # the ray of this face: points positive on v and zero on the other normals
        ray = [M.generators[i] for i in rest
               if _linalg.dot(M.generators[i], v) > 0
               and all(_linalg.dot(M.generators[i], u) == 0 for u in hrep.normals if u != v)]
        if not ray:
            return None
        picks.append(min(ray, key=lambda g: (_linalg.dot(g, v), g)))
    rows = picks + list(U.basis)
    if _linalg.rank(rows) < len(rows):
        return None
    if group_of(rows, M.n) != M.group or not is_direct_summand(M.group):
        return None
    C = complete_basis(rows)
    # every generator must have nonnegative coordinates on the first s rows
    Cinv = integer_inverse(C)
    for g in M.generators:
        y = vecmat(g, Cinv)
        if any(c < 0 for c in y[:s]) or any(y[s + t:]):
            return None
    return C, s, t


def pfc_monoid(M: FgMonoid):
    M = _as_monoid(M)
    normal = M.is_normal()
    if normal.is_no:
        return no("pfc", normal.witness, reason="M is not normal")
    if not is_direct_summand(M.group):
        t, m = torsion_element(M.group)
        return no("pfc", TorsionElement(t, m), reason="R[M] is not qfc, hence not pfc")
    if normal.answer.value == "Unknown":
        return unknown("pfc", f"normality undecided: {normal.reason}")
    if M.n == 1:
        cls = classify_Z_submonoid(M)
        shapes = {"Zero": (((1,),), 0, 0), "dN": (((1,),), 1, 0),
                  "dNegN": (((-1,),), 1, 0), "dZ": (((1,),), 0, 1)}
        C, s, t = shapes[cls.kind]
        return yes("pfc", StandardMonoidBasis(C, s, t, _standard_proofs(M, C, s, t)))
    found = _recognize_standard(M)
    if found is None:
        return unknown("pfc", "pfc not characterized for n >= 2 beyond the standard shapes")
    C, s, t = found
    return yes("pfc", StandardMonoidBasis(C, s, t, _standard_proofs(M, C, s, t)))


def fc_monoid(M: FgMonoid):
    """For monoid algebras, fc holds exactly when M = Z^n."""
    M = _as_monoid(M)
    n = M.n
    for i in range(n):
        for sign in (1, -1):
            a = tuple(sign * int(i == j) for j in range(n))
            if M.contains(a) is None:
                return no("fc", MissingUnit(a), reason="a unit of the Laurent ring is missing")
    C = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return yes("fc", StandardMonoidBasis(C, 0, n, _standard_proofs(M, C, 0, n)))


def retract_monoid(M: FgMonoid):
    M = _as_monoid(M)
    _, rest = M._split
    if rest:
        return no("retract", NotAGroup(M.generators[rest[0]]), reason="M is not a group")
    if not is_direct_summand(M.group):
        t, m = torsion_element(M.group)
        return no("retract", TorsionElement(t, m), reason="<M> is not a direct summand")
    C, r = extend_to_basis(M.group)
    inverses = tuple(M.contains(tuple(-x for x in g)) for g in M.generators)
    return yes("retract", SummandBasis(C, r, inverses))


def normal_monoid(M: FgMonoid):
    return _as_monoid(M).is_normal()


# finite gap certificate


def qfc_from_finite_gap(M, gap: GapReport):
    """Yes for qfc from a finite gap set, with points N*w and N*w + c_i in M."""
    if gap.status not in (GapStatus.EMPTY, GapStatus.FINITE_EXACT):
        raise StatusNotCertified(f"gap status {gap.status} does not certify finiteness")
    M = _as_monoid(M)
    n = M.n
    C, r = extend_to_basis(saturation(M.group))
    directions = C[:r]
    if r == 0:
        w0 = (0,) * n
        proofs = ((w0, M.contains(w0)),)
        return yes("qfc", KeyLemmaWitness(w0, (), proofs, (("N", 1), ("C", C))))

    D = M.generators
    normals = facet_normals(D).normals
    # with no facets every w is interior, and 0 is the smallest choice
    w = _linalg.primitive(interior_vector(D)) if normals else (0,) * n
    N1 = max((Fraction(abs(_linalg.dot(c, v)), _linalg.dot(w, v))
              for c in directions for v in normals), default=Fraction(0))

    def norm(p):
        return sum(abs(x) for x in p)

    N2 = max((norm(g) + norm(c) for g in gap.elements for c in directions), default=0)
    N = math.floor(max(N1, Fraction(N2))) + 1
    base = tuple(N * x for x in w)
    points = [base] + [tuple(x + y for x, y in zip(base, c)) for c in directions]
    proofs = tuple((p, M.contains(p)) for p in points)
    if any(pr is None for _, pr in proofs):
        raise AssertionError("finite-gap construction produced a non-member")
    w0 = vecmat(base, integer_inverse(C))
    details = (("N1", N1), ("N2", N2), ("N", N), ("w", w), ("w0", w0), ("C", C))
    return yes("qfc", KeyLemmaWitness(base, directions, proofs, details))


# general subalgebras


def _integer_combination(target, vectors):
    """Integer ``z`` with ``sum(z_i v_i) == target``; the vectors generate Z^n."""
    H, U = hnf(vectors)
    G = group_of(vectors)
    y = G.coordinates(target)
    k = G.rank
    return [sum(y[i] * U[i][j] for i in range(k)) for j in range(len(vectors))]


def _key_lemma_search(disc: MonomialDiscovery, n):
    found = set(disc.exponents)
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for w in sorted(found, key=lambda p: (sum(map(abs, p)), p)):
        pts = [tuple(a + b for a, b in zip(w, e)) for e in units]
        if all(p in found for p in pts):
            return w, [w] + pts, {p: disc.expressions[p] for p in [w] + pts}
    return None


def _key_lemma_construct(disc: MonomialDiscovery, n, k, dom):
    """w = sum of the negative parts of integer expressions for each e_i."""
    vecs = [e for e in disc.exponents if any(e)]
    exprs = {}

    def product(coeffs):
        P = LaurentPoly.constant(1, k, dom)
        pt = [0] * n
        for c, v in zip(coeffs, vecs):
            if c:
                P = P * disc.expressions[v] ** c
                pt = [x + c * y for x, y in zip(pt, v)]
        return tuple(pt), P

    pos_parts, neg_parts = [], []
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        z = _integer_combination(e, vecs)
        pos_parts.append([max(c, 0) for c in z])
        neg_parts.append([max(-c, 0) for c in z])
    total_neg = [sum(col) for col in zip(*neg_parts)]
    w, Pw = product(total_neg)
    exprs[w] = Pw
    pts = [w]
    for i in range(n):
        coeffs = [a - b + c for a, b, c in zip(total_neg, neg_parts[i], pos_parts[i])]
        p, P = product(coeffs)
        exprs[p] = P
        pts.append(p)
    return w, pts, exprs


def qfc_general(A: SubalgebraSpec, disc: MonomialDiscovery | None = None):
    if not A.domain.is_field:
        return unknown("qfc", "general subalgebras need a coefficient field")
    disc = disc or discover_monomials(A)
    n, k = A.n, len(A.generators)
    nonzero = [e for e in disc.exponents if any(e)]
    state = (f"words={disc.words} rank={disc.rank} monomials={len(disc.exponents)}"
             f" budget_exceeded={disc.budget_exceeded}")
    extra = {"discovered": [list(e) for e in disc.exponents]}

    if nonzero and group_of(nonzero, n).is_full():
        hit = _key_lemma_search(disc, n)
        if hit is None:
            hit = _key_lemma_construct(disc, n, k, A.domain)
        w, pts, exprs = hit
        proofs = tuple((p, render_expression(exprs[p])) for p in pts)
        dirs = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return yes("qfc", KeyLemmaWitness(w, dirs, proofs), extra=extra)

    if n == 1 and nonzero:
        d = reduce(math.gcd, (e[0] for g in A.generators for e in g.terms), 0)
        if d >= 2:
            if A.domain.has_field_of_size(d):
                return no("qfc", GcdTooBig(d, tuple((e, disc.render(e)) for e in nonzero)),
                          assumptions=(field_assumption(d),), extra=extra,
                          reason=f"every generator lies in R[x^{d}, x^-{d}]")
            return unknown("qfc", f"supports lie in {d}Z but the field has fewer than {d}"
                           " elements", extra=extra)

    if A.monomial_exponents() is not None:
        v = qfc_monoid(A)
        return type(v)(v.answer, v.property, v.certificate, v.witness, v.assumptions,
                       v.reason, extra)
    return unknown("qfc", f"monomial search inconclusive ({state})", extra=extra)


def one_var_pfc_general(A: SubalgebraSpec):
    if A.n != 1:
        raise ValueError("one-variable criterion needs n = 1")
    exps = A.monomial_exponents()
    if exps is not None:
        if not any(e[0] for e in exps):
            raise HypothesisUnmet("the algebra has no nonconstant monomial")
        return pfc_monoid(FgMonoid(exps, 1))
    disc = discover_monomials(A)
    nonzero = [e for e in disc.exponents if any(e)]
    if not nonzero:
        raise HypothesisUnmet("no nonconstant monomial found in the algebra")
    q = qfc_general(A, disc)
    if q.is_no:
        return no("pfc", q.witness, assumptions=q.assumptions, reason="not qfc, hence not pfc")
    supports = [e[0] for g in A.generators for e in g.terms]
    has_x, has_inv = (1,) in disc.expressions, (-1,) in disc.expressions
    proofs = []
    if has_x and has_inv:
        C, s, t = ((1,),), 0, 1
        proofs = [((1,), disc.render((1,))), ((-1,), disc.render((-1,)))]
    elif has_x and min(supports) >= 0:
        C, s, t = ((1,),), 1, 0
        proofs = [((1,), disc.render((1,)))]
    elif has_inv and max(supports) <= 0:
        C, s, t = ((-1,),), 1, 0
        proofs = [((-1,), disc.render((-1,)))]
    else:
        return unknown("pfc", "generators not recognized as R[x], R[x^-1] or R[x, x^-1]")
    return yes("pfc", StandardMonoidBasis(C, s, t, tuple(proofs)))


def decide(prop: str, obj):
    """Dispatch on property name for a monoid or a subalgebra."""
    table = {"qfc": qfc_monoid, "pfc": pfc_monoid, "fc": fc_monoid,
             "retract": retract_monoid, "normal": normal_monoid}
    if prop not in table:
        raise ValueError(f"unknown property {prop!r}")
    if isinstance(obj, SubalgebraSpec) and obj.monomial_exponents() is None:
        if prop == "qfc":
            return qfc_general(obj)
        if prop == "pfc" and obj.n == 1:
            try:
                return one_var_pfc_general(obj)
            except HypothesisUnmet as exc:
                return unknown("pfc", str(exc))
        return unknown(prop, f"{prop} for non-monomial subalgebras is outside the decidable range")
    return table[prop](obj)
