"""Independent re-checking of verdict documents.

A document is the JSON object the CLI emits.  It holds the input object
next to the verdict with its certificate or witness.  Checks rebuild every
claim from lattice and polynomial primitives; no decision procedure is re-run.
"""

from __future__ import annotations

import json
import re

from . import _linalg
from .laurent import GF, is_monic_monomial, parse, parse_domain, render
from .lattice import det, group_of, integer_inverse, is_direct_summand, vecmat
from .monoid import FgMonoid
from .verdict import record_from_dict


class MalformedCertificate(ValueError):
    pass


class _Input:
    """The object a document talks about: a monoid or a list of algebra generators."""

    def __init__(self, spec):
        try:
            kind = spec["kind"]
            self.n = int(spec["n"])
            if kind == "monoid":
                self.monoid = FgMonoid([tuple(g) for g in spec["generators"]], self.n)
                self.algebra = None
            elif kind == "algebra":
                self.domain = parse_domain(spec["domain"])
                self.algebra = [parse(t, self.n, self.domain) for t in spec["generators"]]
                exps = [is_monic_monomial(g) for g in self.algebra]
                self.monoid = FgMonoid(exps, self.n) if all(e is not None for e in exps) else None
            else:
                raise MalformedCertificate(f"unknown input kind {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedCertificate):
                raise
            raise MalformedCertificate(f"bad input section: {exc}") from exc

    def support_points(self):
        if self.algebra is not None:
            return [e for g in self.algebra for e in g.terms]
        return list(self.monoid.generators)

    def is_member(self, point, proof) -> bool:
        """Check a membership proof: monoid coefficients or an algebra expression."""
        point = tuple(point)
        if isinstance(proof, str):
            if self.algebra is None:
                return False
            from .decide import evaluate_expression, parse_expression
            P = parse_expression(proof, len(self.algebra), self.domain)
            if any(x < 0 for e in P.terms for x in e):
                return False
            value = evaluate_expression(P, self.algebra)
            return is_monic_monomial(value) == point
        if self.monoid is None or proof is None:
            return False
        coeffs = tuple(proof)
        if len(coeffs) != len(self.monoid.generators) or any(c < 0 for c in coeffs):
            return False
        return self.monoid.evaluate(coeffs) == point

    def not_in_monoid(self, point) -> bool:
        return self.monoid is not None and self.monoid.contains(tuple(point)) is None


def _square_unimodular(C, n) -> bool:
    return len(C) == n and all(len(r) == n for r in C) and abs(det(C)) == 1


def _summand_containing(rows, points, n) -> bool:
    """``rows`` are independent and span a direct summand holding ``points``."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return all(not any(p) for p in points)
    if _linalg.rank(rows) < len(rows):
        return False
    G = group_of(rows, n)
    return is_direct_summand(G) and all(tuple(p) in G for p in points)


def _check_certificate(cert, prop, inp: _Input) -> bool:
    kind = cert.kind
    n = inp.n
    if kind == "SummandBasis":
        M = inp.monoid
        if M is None or not _square_unimodular(cert.C, n) or not 0 <= cert.r <= n:
            return False
        if group_of(cert.C[:cert.r], n) != M.group:
            return False
        if prop == "retract":
            if cert.inverses is None or len(cert.inverses) != len(M.generators):
                return False
            return all(inp.is_member(tuple(-x for x in g), c)
                       for g, c in zip(M.generators, cert.inverses))
        return prop == "qfc"

    if kind == "GcdOne":
        if prop != "qfc" or n != 1 or len(cert.exponents) != len(cert.combination):
            return False
        if any(inp.not_in_monoid((e,)) for e in cert.exponents):
            return False
        return sum(a * b for a, b in zip(cert.exponents, cert.combination)) == 1

    if kind == "KeyLemmaWitness":
        if prop != "qfc":
            return False
        w = tuple(cert.w)
        dirs = [tuple(c) for c in cert.directions]
        wanted = {w} | {tuple(a + b for a, b in zip(w, c)) for c in dirs}
        proofs = {tuple(p): pr for p, pr in cert.proofs}
        if set(proofs) != wanted:
            return False
        if not all(inp.is_member(p, pr) for p, pr in proofs.items()):
            return False
        return _summand_containing(dirs, inp.support_points(), n)

    if kind == "NormalityCover":
        M = inp.monoid
        if prop != "normal" or M is None:
            return False
        listed = {}
        for p, c in cert.points:
            if not inp.is_member(p, c):
                return False
            listed[tuple(p)] = True
        try:
            return all(pt in listed for pt, _, _ in M._parallelepiped_points(10 ** 7))
        except RuntimeError:
            return False

    if kind == "StandardMonoidBasis":
        C = [tuple(r) for r in cert.C]
        s, t = cert.s, cert.t
        if not _square_unimodular(C, n) or s < 0 or t < 0 or s + t > n:
            return False
        if prop == "fc" and (s, t) != (0, n):
            return False
        if prop not in ("fc", "pfc"):
            return False
        Cinv = integer_inverse(C)
        for p in inp.support_points():
            y = vecmat(p, Cinv)
            if any(c < 0 for c in y[:s]) or any(y[s + t:]):
                return False
        needed = set(C[:s + t]) | {tuple(-x for x in C[i]) for i in range(s, s + t)}
        proofs = {tuple(p): pr for p, pr in cert.proofs}
        if not needed <= set(proofs):
            return False
        return all(inp.is_member(p, proofs[p]) for p in needed)

    return False


def _check_witness(wit, prop, inp: _Input, doc) -> bool:
    kind = wit.kind
    n = inp.n
    M = inp.monoid
    if kind == "TorsionElement":
        if M is None or prop not in ("qfc", "pfc", "retract") or wit.m < 2:
            return False
        t = tuple(wit.t)
        return tuple(wit.m * x for x in t) in M.group and t not in M.group

    if kind == "NotNormalPoint":
        if M is None or prop not in ("normal", "pfc") or wit.m < 1:
            return False
        a = tuple(wit.a)
        ma = tuple(wit.m * x for x in a)
        return a in M.group and inp.is_member(ma, wit.coefficients) and inp.not_in_monoid(a)

    if kind == "MissingUnit":
        return prop == "fc" and inp.not_in_monoid(wit.a)

    if kind == "NotAGroup":
        g = tuple(wit.g)
        return prop == "retract" and M is not None and M.contains(g) is not None \
            and inp.not_in_monoid(tuple(-x for x in g))

    if kind == "GcdTooBig":
        if prop not in ("qfc", "pfc") or n != 1 or wit.d < 2 or inp.algebra is None:
            return False
        if not inp.domain.has_field_of_size(wit.d):
            return False
        if any(e[0] % wit.d for e in inp.support_points()):
            return False
        found = [(tuple(p), pr) for p, pr in wit.found]
        return any(any(p) and inp.is_member(p, pr) for p, pr in found)

    if kind == "CounterexamplePair":
        if M is None:
            return False
        from .oracle import EXACT, Counterexample, verify_counterexample
        p = int(doc.get("input", {}).get("prime", 2))
        f = parse(wit.f, n, GF(p))
        g = parse(wit.g, n, GF(p))
        cx = Counterexample(f, g, f * g, EXACT, "")
        radius = int(doc.get("radius", 32))
        return verify_counterexample(M, cx, prop, radius)
    return False


def extract_document(text: str) -> dict:
    """Parse a document from raw JSON or from the fenced block of the text format."""
    m = re.search(r"```json\s*\n(.*?)\n```", text, re.S)
    body = m.group(1) if m else text
    try:
        doc = json.loads(body)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedCertificate("document must be a JSON object")
    return doc


def verify_certificate(document) -> bool:
    """Re-check the certificate (Yes) or witness (No) of a verdict document."""
    if isinstance(document, str):
        document = extract_document(document)
    try:
        verdict = document["verdict"]
        prop = verdict["property"]
        answer = verdict["answer"]
        inp = _Input(document["input"])
    except (KeyError, TypeError) as exc:
        raise MalformedCertificate(f"missing field: {exc}") from exc
    try:
        if answer == "Yes":
            if not verdict.get("certificate"):
                raise MalformedCertificate("Yes verdict without certificate")
            return _check_certificate(record_from_dict(verdict["certificate"]), prop, inp)
        if answer == "No":
            if not verdict.get("witness"):
                raise MalformedCertificate("No verdict without witness")
            return _check_witness(record_from_dict(verdict["witness"]), prop, inp, document)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedCertificate):
            raise
        raise MalformedCertificate(f"bad certificate: {exc}") from exc
    return False


def make_document(verdict, input_spec: dict, **extra) -> dict:
    doc = {"tool": "qfctool", "input": input_spec, "verdict": verdict.to_dict()}
    doc.update(extra)
    return doc


def monoid_input(M: FgMonoid) -> dict:
    return {"kind": "monoid", "n": M.n, "generators": [list(g) for g in M.generators]}


def algebra_input(A) -> dict:
    return {"kind": "algebra", "n": A.n, "domain": str(A.domain),
            "generators": [render(g) for g in A.generators]}


def document_for(verdict, obj, **extra) -> dict:
    if isinstance(obj, FgMonoid):
        return make_document(verdict, monoid_input(obj), **extra)
    return make_document(verdict, algebra_input(obj), **extra)

