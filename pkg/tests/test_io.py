import json

import pytest
from hypothesis import given

from prodcoeq.algebra import identity
from prodcoeq.fixtures import BUILTINS
from prodcoeq.io import (FormatError, algebra_from_json, algebra_to_json, congruence_from_json,
                         congruence_to_json, hom_from_json, hom_to_json, load_json,
                         pair_from_json, point_from_json, point_to_json)
from strategies import algebras


@pytest.mark.parametrize("key", sorted(BUILTINS))
def test_builtin_round_trip(key):
    A = BUILTINS[key]()
    B = algebra_from_json(json.loads(json.dumps(algebra_to_json(A))))
    assert B.size == A.size and B.signature == A.signature
    assert all(A.flat(s) == B.flat(s) for s, _ in A.signature.operations)


@given(algebras(max_size=3, max_arity=3))
def test_random_round_trip(A):
    B = algebra_from_json(algebra_to_json(A))
    assert algebra_to_json(B) == algebra_to_json(A)


@pytest.mark.parametrize("patch, field", [
    ({"size": 0}, "size"),
    ({"size": "3"}, "size"),
    ({"labels": ["0"]}, "labels"),
    ({"constants": {"0": 9}}, "constants.0"),
    ({"operations": {"-": {"arity": 2, "table": [0, 1]}}}, "operations.-.table"),
    ({"operations": {"-": {"arity": 5, "table": []}}}, "arity"),
    ({"operations": {"-": {"table": []}}}, "arity"),
    ({"operations": {"-": {"arity": 1, "table": [0, 1, 7]}}}, "operations.-.table"),
])
def test_bad_algebra_names_field(X, patch, field):
    doc = {**algebra_to_json(X), **patch}
    with pytest.raises(FormatError, match=field.replace(".", r"\.").replace("-", r"\-")):
        algebra_from_json(doc)


def test_missing_name():
    with pytest.raises(FormatError, match="name"):
        algebra_from_json({"size": 1})


def test_hom_and_pair(X):
    algs = {"X": X}
    f = hom_from_json(hom_to_json(identity(X)), algs)
    assert f.map == (0, 1, 2)
    u, v = pair_from_json({"source": "X", "target": "X", "u": [0, 1, 2],
                           "v": {"map": [0, 1, 2]}}, algs)
    assert u.map == v.map
    with pytest.raises(FormatError, match="unknown algebra"):
        hom_from_json({"source": "Q", "target": "X", "map": []}, algs)
    with pytest.raises(FormatError, match="expected 3 entries"):
        hom_from_json({"source": "X", "target": "X", "map": [0]}, algs)
    with pytest.raises(FormatError, match="pair.u.map"):
        pair_from_json({"source": "X", "target": "X", "u": [0, 0, 1], "v": [0, 1, 2]}, algs)


def test_point_round_trip():
    algs = {A.name: A for A in (BUILTINS["z2"](), BUILTINS["z2^2"]())}
    doc = {"total": "Z2^2", "base": "Z2", "p": [0, 0, 1, 1], "s": [0, 2]}
    assert point_to_json(point_from_json(doc, algs)) == doc
    with pytest.raises(FormatError, match="identity"):
        point_from_json({**doc, "s": [0, 0]}, algs)


def test_congruence_round_trip(X):
    blocks = [[0, 1, 2]]
    assert congruence_to_json(congruence_from_json(blocks, X)) == blocks
    with pytest.raises(FormatError):
        congruence_from_json([[0, 1]], X)


def test_load_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\n  1\n}")
    with pytest.raises(FormatError, match="line 2"):
        load_json(p)
