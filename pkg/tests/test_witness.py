import pytest
from hypothesis import given

from oracles import fixpoint_congruence, term_functions
from prodcoeq.errors import AlgebraError
from prodcoeq.fixtures import z2
from prodcoeq.io import FormatError, algebra_to_json
from prodcoeq.witness import naive_clone, naive_congruence, validate_witness
from strategies import algebra_with_pairs, algebras


@given(algebra_with_pairs(max_size=4, max_ops=2, max_arity=2))
def test_naive_congruence_matches_oracle(case):
    A, pairs = case
    R = naive_congruence(A, pairs)
    rel = fixpoint_congruence(A, pairs)
    assert {(int(a), int(b)) for a, b in zip(*R.nonzero())} == set(rel)


@given(algebras(max_size=2, max_ops=2, max_arity=2))
def test_naive_clone_matches_oracle(A):
    assert naive_clone(A, 2) == term_functions(A, 2)


def test_naive_clone_limit():
    with pytest.raises(AlgebraError):
        naive_clone(z2(), 3, limit=4)


def test_rejects_unknown_type():
    with pytest.raises(FormatError, match="type"):
        validate_witness({"type": "magic"})
    with pytest.raises(FormatError):
        validate_witness([1, 2])


def test_malformed_document(X):
    doc = {"type": "normal-epi", "algebras": [algebra_to_json(X)]}
    with pytest.raises(FormatError, match="malformed"):
        validate_witness(doc)


def test_term_absent_refuted_when_term_exists():
    A = z2()
    ok, detail = validate_witness({"type": "term-absent", "algebras": [algebra_to_json(A)],
                                   "algebra": A.name, "kind": "malcev"})
    assert not ok and "0 satisfy" not in detail


def test_bogus_terms_refuted():
    A = z2()
    doc = {"type": "terms", "algebra": A.name, "algebras": [algebra_to_json(A)],
           "terms": {"kind": "P", "b": [["x"]], "c": [["z"]], "p": [["v1"]]}}
    ok, _ = validate_witness(doc)
    assert not ok
    doc["terms"]["p"] = ["v1"]
    with pytest.raises(AlgebraError, match="malformed term"):
        validate_witness(doc)
