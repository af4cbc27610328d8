"""Three-valued verdicts with re-checkable certificates and witnesses.

Every certificate and witness is a small frozen dataclass with a ``kind``
tag.  ``to_dict``/``from_dict`` give a JSON-friendly form; tuples become
lists and polynomials become their text rendering.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields
from fractions import Fraction


class Answer(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return str(x)


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


class _Record:
    kind = "?"

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        for f in fields(self):
            d[f.name] = _plain(getattr(self, f.name))
        return d


# certificates


@dataclass(frozen=True)
class SummandBasis(_Record):
    """Unimodular ``C`` whose first ``r`` rows generate the group of the monoid.

    ``inverses`` optionally holds monoid coefficients for ``-g`` per generator,
    which is what a retract verdict needs on top of the summand property.
    """

    C: tuple
    r: int
    inverses: tuple | None = None
    kind = "SummandBasis"


@dataclass(frozen=True)
class GcdOne(_Record):
    """``sum(combination[i] * exponents[i]) == 1`` for exponents of M."""

    exponents: tuple
    combination: tuple
    kind = "GcdOne"


@dataclass(frozen=True)
class KeyLemmaWitness(_Record):
    """Points ``w`` and ``w + c`` for each direction ``c`` all lie in M(A).

    ``proofs`` maps each point to monoid coefficients (tuple of ints) or to
    an algebra expression (string) that evaluates to a monic monomial.
    """

    w: tuple
    directions: tuple
    proofs: tuple           # ((point, proof), ...)
    details: tuple = ()     # ((name, value), ...) such as N1, N2, N
    kind = "KeyLemmaWitness"


@dataclass(frozen=True)
class NormalityCover(_Record):
    """Every lattice point of every fundamental parallelepiped lies in M."""

    points: tuple           # ((point, coefficients), ...)
    bases: int
    kind = "NormalityCover"


@dataclass(frozen=True)
class StandardMonoidBasis(_Record):
    """M equals the image of N^s x Z^t x 0 under the unimodular ``C``.

    ``proofs`` carries monoid coefficients for the rows c_1..c_s and for
    both signs of c_{s+1}..c_{s+t}.
    """

    C: tuple
    s: int
    t: int
    proofs: tuple = ()
    kind = "StandardMonoidBasis"


# witnesses


@dataclass(frozen=True)
class TorsionElement(_Record):
    t: tuple
    m: int
    kind = "TorsionElement"


@dataclass(frozen=True)
class NotNormalPoint(_Record):
    a: tuple
    m: int
    coefficients: tuple     # monoid coefficients of m*a
    kind = "NotNormalPoint"


@dataclass(frozen=True)
class MissingUnit(_Record):
    """The unit x^a of the Laurent ring does not lie in A."""

    a: tuple
    kind = "MissingUnit"


@dataclass(frozen=True)
class NotAGroup(_Record):
    """Generator ``g`` whose negative is outside M."""

    g: tuple
    kind = "NotAGroup"


@dataclass(frozen=True)
class GcdTooBig(_Record):
    """Every generator support lies in dZ, so M(A) sits inside dZ.

    ``found`` lists nonzero exponents of M(A) with their algebra expressions,
    showing M(A) is not {0}.
    """

    d: int
    found: tuple = ()
    kind = "GcdTooBig"


@dataclass(frozen=True)
class CounterexamplePair(_Record):
    f: str
    g: str
    obstruction: str
    kind = "CounterexamplePair"


_KINDS = {cls.kind: cls for cls in (
    SummandBasis, GcdOne, KeyLemmaWitness, NormalityCover, StandardMonoidBasis,
    TorsionElement, NotNormalPoint, MissingUnit, NotAGroup, GcdTooBig, CounterexamplePair)}

CERTIFICATE_KINDS = ("SummandBasis", "GcdOne", "KeyLemmaWitness", "NormalityCover",
                     "StandardMonoidBasis")
WITNESS_KINDS = ("TorsionElement", "NotNormalPoint", "MissingUnit", "NotAGroup",
                 "GcdTooBig", "CounterexamplePair")


def record_from_dict(d: dict):
    cls = _KINDS.get(d.get("kind"))
    if cls is None:
        raise KeyError(f"unknown record kind {d.get('kind')!r}")
    kwargs = {}
    for f in fields(cls):
        if f.name in d:
            kwargs[f.name] = _tuplify(d[f.name])
    return cls(**kwargs)


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    property: str
    certificate: object = None
    witness: object = None
    assumptions: tuple = ()
    reason: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.answer is Answer.YES and self.certificate is None:
            raise ValueError("a Yes verdict needs a certificate")
        if self.answer is Answer.NO and self.witness is None:
            raise ValueError("a No verdict needs a witness")

    @property
    def is_yes(self):
        return self.answer is Answer.YES

    @property
    def is_no(self):
        return self.answer is Answer.NO

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "answer": self.answer.value,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "assumptions": list(self.assumptions),
            "reason": self.reason,
            **{k: _plain(v) for k, v in self.extra.items()},
        }


def yes(prop, certificate, **kw) -> Verdict:
    return Verdict(Answer.YES, prop, certificate=certificate, **kw)


def no(prop, witness, **kw) -> Verdict:
    return Verdict(Answer.NO, prop, witness=witness, **kw)


def unknown(prop, reason, **kw) -> Verdict:
    return Verdict(Answer.UNKNOWN, prop, reason=reason, **kw)
