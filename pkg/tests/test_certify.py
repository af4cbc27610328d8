import copy
import json

import pytest

from qfctool.certify import (MalformedCertificate, document_for, extract_document,
                             verify_certificate)
from qfctool.decide import SubalgebraSpec, decide, qfc_from_finite_gap, qfc_general
from qfctool.monoid import FgMonoid

CORPUS = [[(3,), (5,)], [(2,)], [(2,), (3,)], [(1,)], [(1,), (-1,)], [(2,), (-2,)],
          [(2, 0), (0, 2), (2, 3), (3, 2), (3, 3)], [(2, 2)], [(1, 0), (1, 1), (1, 2)],
          [(1, 1), (-1, -1), (0, 1)], [(1, 0), (-1, 0), (0, 1), (0, -1)], [(4, 1), (1, 4)]]
PROPS = ("qfc", "pfc", "fc", "retract", "normal")


@pytest.mark.parametrize("gens", CORPUS, ids=str)
def test_every_decided_monoid_verdict_verifies(gens):
    M = FgMonoid(gens)
    for prop in PROPS:
        v = decide(prop, M)
        doc = document_for(v, M)
        if v.answer.value == "Unknown":
            assert verify_certificate(doc) is False
        else:
            assert verify_certificate(doc), (prop, gens)
            # the JSON form verifies as well
            assert verify_certificate(json.dumps(doc))


@pytest.mark.parametrize("text", ["x1 + x2; x1^2; x1^3", "x1^2", "x1^2; x1^3",
                                  "x1 + x1^2; x1^2"])
def test_algebra_verdicts_verify(text):
    A = SubalgebraSpec.parse(text, max_length=2)
    v = qfc_general(A)
    assert v.answer.value != "Unknown"
    assert verify_certificate(document_for(v, A))


def test_summand_basis_three_five():
    M = FgMonoid([(2, 0), (0, 2), (2, 3), (3, 2), (3, 3)])
    doc = document_for(decide("qfc", M), M)
    assert doc["verdict"]["certificate"]["kind"] == "SummandBasis"
    assert verify_certificate(doc)
    bad = copy.deepcopy(doc)
    bad["verdict"]["certificate"]["C"][0] = [2, 0]      # determinant no longer +-1
    assert verify_certificate(bad) is False


def test_gcd_one_tampered():
    M = FgMonoid.integers([3, 5])
    doc = document_for(decide("qfc", M), M)
    doc["verdict"]["certificate"]["combination"][0] += 1
    assert verify_certificate(doc) is False


def test_key_lemma_witness_three_five():
    M = FgMonoid.integers([3, 5])
    v = qfc_from_finite_gap(M, M.gap_set(((0,), (20,))))
    doc = document_for(v, M)
    assert verify_certificate(doc)
    bad = copy.deepcopy(doc)
    proofs = bad["verdict"]["certificate"]["proofs"]
    proofs[0][1] = [0, 0]                  # coefficients no longer produce the point
    assert verify_certificate(bad) is False


def test_witness_tampering():
    M = FgMonoid.integers([2])
    doc = document_for(decide("qfc", M), M)
    doc["verdict"]["witness"]["t"] = [2]   # 2 lies in <M>
    assert verify_certificate(doc) is False
    M = FgMonoid.integers([2, 3])
    doc = document_for(decide("normal", M), M)
    doc["verdict"]["witness"]["a"] = [2]   # 2 is in M
    assert verify_certificate(doc) is False


def test_mismatched_property():
    M = FgMonoid.integers([3, 5])
    doc = document_for(decide("qfc", M), M)
    doc["verdict"]["property"] = "fc"
    assert verify_certificate(doc) is False


def test_malformed_documents():
    with pytest.raises(MalformedCertificate):
        extract_document("not json")
    with pytest.raises(MalformedCertificate):
        verify_certificate({"verdict": {}})
    with pytest.raises(MalformedCertificate):
        verify_certificate({"input": {"kind": "monoid", "n": 1, "generators": [[1]]},
                            "verdict": {"property": "qfc", "answer": "Yes"}})
    with pytest.raises(MalformedCertificate):
        verify_certificate({"input": {"kind": "tensor"},
                            "verdict": {"property": "qfc", "answer": "Yes"}})


def test_fenced_block_extraction():
    M = FgMonoid.integers([3, 5])
    body = json.dumps(document_for(decide("qfc", M), M), indent=2)
    text = f"qfc: Yes\n\n```json\n{body}\n```\n"
    assert verify_certificate(extract_document(text))
