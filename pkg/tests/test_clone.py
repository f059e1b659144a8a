import itertools

import pytest
from hypothesis import given, settings

from oracles import term_functions
from prodcoeq.clone import (clone_slice, find_majority, find_malcev, find_subtraction,
                            is_majority, is_malcev, is_subtraction)
from prodcoeq.errors import CapExceededError, NotPointedError
from prodcoeq.fixtures import lattice2, pointed_set2, set2, z2
from prodcoeq.terms import Var, format_term
from strategies import algebras


def _has(A, k, pred):
    return any(pred(dict(zip(itertools.product(range(A.size), repeat=k), vals)))
               for vals in term_functions(A, k))


def _malcev_ok(A):
    E = range(A.size)
    return lambda f: all(f[(x, y, y)] == x and f[(y, y, x)] == x for x in E for y in E)


def _majority_ok(A):
    E = range(A.size)
    return lambda f: all(f[(x, x, y)] == x and f[(x, y, x)] == x and f[(y, x, x)] == x
                         for x in E for y in E)


def test_z2():
    A = z2()
    t = find_malcev(A)
    assert t is not None and is_malcev(A, t)
    assert find_majority(A) is None
    s = find_subtraction(A)
    assert format_term(s, ("x", "y")) in ("x + y", "(x + y)")


@pytest.mark.parametrize("pointed", [True, False])
def test_lattice(pointed):
    A = lattice2(pointed)
    assert find_majority(A) is not None
    assert find_malcev(A) is None


def test_lattice_has_no_subtraction():
    assert find_subtraction(lattice2(True)) is None


def test_pointed_set_has_nothing():
    A = pointed_set2()
    assert find_malcev(A) is None and find_majority(A) is None and find_subtraction(A) is None


def test_subtraction_algebra(X):
    s = find_subtraction(X)
    assert s is not None and is_subtraction(X, s)
    assert find_malcev(X) is None and find_majority(X) is None


def test_subtraction_needs_a_point():
    with pytest.raises(NotPointedError):
        find_subtraction(set2())


def test_projection_checks():
    A = z2()
    assert not is_malcev(A, Var(0)) and not is_majority(A, Var(0))
    assert not is_subtraction(A, Var(0))


def test_slice_sizes():
    assert clone_slice(set2(), 3).size == 3
    assert clone_slice(z2(), 3).size == 8
    with pytest.raises(CapExceededError):
        clone_slice(z2(), 3, max_size=5)


@settings(max_examples=25)
@given(algebras(max_size=2, max_ops=2, max_arity=2))
def test_finders_agree_with_naive_clone(A):
    assert (find_malcev(A) is not None) == _has(A, 3, _malcev_ok(A))
    assert (find_majority(A) is not None) == _has(A, 3, _majority_ok(A))
