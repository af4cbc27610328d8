"""Sparse Laurent polynomials over QQ, ZZ and GF(p).

A polynomial is a map from exponent tuples to nonzero coefficients.  Values
are immutable; arithmetic returns new objects.  Text form::

    3/2*x1^2*x2^-1 - x1 + 7

Terms render in ascending lexicographic exponent order so that
``parse(render(f)) == f`` and the rendering of a polynomial is canonical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .lattice import det


class DomainMismatch(TypeError):
    pass


class ZeroPolynomial(ValueError):
    pass


class NotUnimodular(ValueError):
    pass


class LaurentSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class CoefficientDomain:
    kind: str           # "QQ", "ZZ" or "GF"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("QQ", "ZZ", "GF"):
            raise ValueError(f"unknown coefficient domain {self.kind!r}")
        if self.kind == "GF" and not (self.p and _is_prime(self.p)):
            raise ValueError(f"GF(p) needs a prime, got {self.p}")

    def __str__(self):
        return f"GF({self.p})" if self.kind == "GF" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    @property
    def size(self) -> int | None:
        """Number of elements, ``None`` when infinite."""
        return self.p if self.kind == "GF" else None

    def has_field_of_size(self, d: int) -> bool:
        return self.kind == "QQ" or (self.kind == "GF" and self.p >= d)

    def __call__(self, value):
        """Coerce an int, Fraction or numeric string into this domain."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.kind == "QQ":
            return Fraction(value)
        if self.kind == "ZZ":
            q = Fraction(value)
            if q.denominator != 1:
                raise ValueError(f"{value} is not an integer")
            return int(q)
        q = Fraction(value)
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def normal(self, c):
        return c % self.p if self.kind == "GF" else c

    def inv(self, c):
        if self.kind == "GF":
            return pow(c, -1, self.p)
        if self.kind == "QQ":
            return 1 / Fraction(c)
        if c in (1, -1):
            return c
        raise ZeroDivisionError(f"{c} is not a unit in ZZ")

    def is_unit(self, c) -> bool:
        c = self.normal(c)
        if c == 0:
            return False
        return self.is_field or c in (1, -1)


QQ = CoefficientDomain("QQ")
ZZ = CoefficientDomain("ZZ")


def GF(p: int) -> CoefficientDomain:
    return CoefficientDomain("GF", p)


def parse_domain(text: str) -> CoefficientDomain:
    t = text.strip().upper()
    if t in ("QQ", "Q"):
        return QQ
    if t in ("ZZ", "Z"):
        return ZZ
    m = re.fullmatch(r"(?:GF|F)\(?(\d+)\)?", t)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown coefficient domain {text!r}")


class LaurentPoly:
    __slots__ = ("domain", "n", "_terms")

    def __init__(self, terms, n: int, domain: CoefficientDomain = QQ):
        self.domain = domain
        self.n = n
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not have length {n}")
            c = domain.normal(clean.get(e, 0) + domain(c))
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean

    # constructors

    @classmethod
    def zero(cls, n, domain=QQ):
        return cls({}, n, domain)

    @classmethod
    def constant(cls, c, n, domain=QQ):
        return cls({(0,) * n: domain(c)}, n, domain)

    @classmethod
    def monomial(cls, exponent, coefficient=1, domain=QQ):
        exponent = tuple(exponent)
        return cls({exponent: domain(coefficient)}, len(exponent), domain)

    @classmethod
    def variable(cls, i, n, domain=QQ):
        """The variable ``x_{i+1}`` (0-based index ``i``)."""
        return cls.monomial(tuple(int(j == i) for j in range(n)), 1, domain)

    # basic accessors

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.n, self.domain)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self.domain == other.domain and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.domain, frozenset(self._terms.items())))

    def __repr__(self):
        return f"LaurentPoly({render(self)!r}, n={self.n}, domain={self.domain})"

    def __str__(self):
        return render(self)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.domain != self.domain or other.n != self.n:
                raise DomainMismatch(
                    f"{self.domain}[n={self.n}] vs {other.domain}[n={other.n}]")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.n, self.domain)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(terms, self.n, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.n, self.domain)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(terms, self.n, self.domain)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            e = is_monic_monomial(self)
            if e is None:
                raise ValueError("negative power of a non-unit")
            inv = LaurentPoly.monomial(tuple(-x for x in e), self.domain.inv(self._terms[e]),
                                       self.domain)
            return inv ** -k
        result = LaurentPoly.constant(1, self.n, self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, s):
        """Multiply by the monomial ``x^s``."""
        return LaurentPoly({tuple(a + b for a, b in zip(e, s)): c for e, c in self._terms.items()},
                           self.n, self.domain)


def supp(f: LaurentPoly) -> frozenset:
    return frozenset(f._terms)


def _check_index(f, i):
    if f.is_zero():
        raise ZeroPolynomial("degree of the zero polynomial")
    if not 0 <= i < f.n:
        raise IndexError(f"variable index {i} outside 0..{f.n - 1}")


def deg_i(f: LaurentPoly, i: int) -> int:
    """Largest exponent of the variable with 0-based index ``i``."""
    _check_index(f, i)
    return max(e[i] for e in f._terms)


def ord_i(f: LaurentPoly, i: int) -> int:
    """Smallest exponent of the variable with 0-based index ``i``."""
    _check_index(f, i)
    return min(e[i] for e in f._terms)


def is_monic_monomial(f: LaurentPoly):
    """The exponent ``a`` when ``f = u*x^a`` with ``u`` a unit, else ``None``."""
    if len(f._terms) != 1:
        return None
    (e, c), = f._terms.items()
    return e if f.domain.is_unit(c) else None


def apply_unimodular(A, f: LaurentPoly) -> LaurentPoly:
    """Ring automorphism ``x^b -> x^(b A)``."""
    n = f.n
    if len(A) != n or any(len(r) != n for r in A):
        raise NotUnimodular(f"expected a {n}x{n} matrix")
    if abs(det(A)) != 1:
        raise NotUnimodular(f"determinant {det(A)}")
    terms = {}
    for e, c in f._terms.items():
        terms[tuple(sum(e[k] * A[k][j] for k in range(n)) for j in range(n))] = c
    return LaurentPoly(terms, n, f.domain)


# text form


def _render_coeff(c):
    return str(c)


def render(f: LaurentPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e, c in sorted(f._terms.items()):
        mono = "*".join(
            f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}" for i, a in enumerate(e) if a != 0)
        neg = (not isinstance(c, int) or f.domain.kind != "GF") and c < 0
        mag = -c if neg else c
        if not mono:
            body = _render_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_render_coeff(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*/^()])|(?P<bad>\S))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group("bad"):
            raise LaurentSyntaxError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        if m.group("num"):
            out.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("var"):
            out.append(("var", int(m.group("idx")), m.start("var")))
        elif m.group("op"):
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise LaurentSyntaxError(f"expected {op!r}", t[2])

    def is_op(self, op):
        t = self.peek()
        return t[0] == "op" and t[1] == op

    def polynomial(self):
        terms = []
        sign = 1
        if self.is_op("-") or self.is_op("+"):
            sign = -1 if self.take()[1] == "-" else 1
        terms.append((sign, *self.term()))
        while self.is_op("+") or self.is_op("-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, *self.term()))
        t = self.peek()
        if t[0] != "end":
            raise LaurentSyntaxError("unexpected token", t[2])
        return terms

    def term(self):
        coeff = Fraction(1)
        powers = {}
        t = self.peek()
        if t[0] == "num":
            self.take()
            coeff = Fraction(t[1])
            if self.is_op("/"):
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise LaurentSyntaxError("expected a denominator", d[2])
                if d[1] == 0:
                    raise LaurentSyntaxError("zero denominator", d[2])
                coeff /= d[1]
            if not self.is_op("*"):
                return coeff, powers
            self.take()
        elif t[0] != "var":
            raise LaurentSyntaxError("expected a coefficient or a variable", t[2])
        self.factor(powers)
        while self.is_op("*"):
            self.take()
            self.factor(powers)
        return coeff, powers

    def factor(self, powers):
        t = self.take()
        if t[0] != "var":
            raise LaurentSyntaxError("expected a variable", t[2])
        if t[1] < 1:
            raise LaurentSyntaxError("variables are numbered from x1", t[2])
        exp = 1
        if self.is_op("^"):
            self.take()
            neg = False
            if self.is_op("-"):
                self.take()
                neg = True
            d = self.take()
            if d[0] != "num":
                raise LaurentSyntaxError("expected an integer exponent", d[2])
            exp = -d[1] if neg else d[1]
        powers[t[1]] = powers.get(t[1], 0) + exp


def parse(text: str, n: int | None = None, domain: CoefficientDomain = QQ) -> LaurentPoly:
    """Parse the text grammar; ``n`` defaults to the largest variable index used."""
    terms = _Parser(text).polynomial()
    used = max((max(p) for _, _, p in terms if p), default=0)
    if n is None:
        n = max(used, 1)
    elif used > n:
        raise LaurentSyntaxError(f"variable x{used} outside x1..x{n}", 0)
    out = {}
    for sign, coeff, powers in terms:
        e = tuple(powers.get(i + 1, 0) for i in range(n))
        out[e] = out.get(e, 0) + domain(sign * coeff)
    return LaurentPoly(out, n, domain)
