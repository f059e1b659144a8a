import numpy as np
import pytest
from hypothesis import given

from oracles import term_functions
from prodcoeq.errors import CapExceededError
from prodcoeq.fixtures import lattice2, set2, z2
from prodcoeq.free import free_algebra, hom_from_free
from prodcoeq.terms import Var, depth, eval_vectorized
from strategies import algebras


def test_known_sizes(X):
    assert free_algebra(z2(), 2).size == 4
    assert free_algebra(z2(), 3).size == 8
    assert free_algebra(set2(), 3).size == 3
    # the free distributive lattice on two generators with 0: 0, x, y, x^y, xvy
    assert free_algebra(lattice2(True), 2).size == 5
    assert free_algebra(X, 0).size == 1


@given(algebras(max_size=3, max_ops=2, max_arity=2))
def test_unary_slice_matches_naive_clone(A):
    F = free_algebra(A, 1)
    assert {tuple(r) for r in F.functions.tolist()} == term_functions(A, 1)


@given(algebras(max_size=2, max_ops=2, max_arity=2))
def test_binary_slice_matches_naive_clone(A):
    F = free_algebra(A, 2)
    assert {tuple(r) for r in F.functions.tolist()} == term_functions(A, 2)


@given(algebras(max_size=2, max_ops=2, max_arity=2))
def test_witnesses_evaluate_to_members(A):
    F = free_algebra(A, 3)
    for e, t in enumerate(F.witnesses):
        assert np.array_equal(eval_vectorized(A, t, list(F.points)), F.functions[e])
    # breadth-first order: witness depths never decrease
    depths = [depth(t) for t in F.witnesses]
    assert depths == sorted(depths)


def test_generators_and_operations():
    F = free_algebra(z2(), 2)
    x, y = F.generators
    assert F.element_of(Var(0)) == x and F.element_of(Var(1)) == y
    s = F.algebra.op("+", x, y)
    assert F.label(s) in ("x + y", "(x + y)")


def test_hom_from_free():
    A = z2()
    F = free_algebra(A, 2)
    h = hom_from_free(F, A, [1, 1])
    assert h.map[F.generators[0]] == 1
    assert h.map[F.algebra.op("+", *F.generators)] == 0


def test_cap():
    with pytest.raises(CapExceededError):
        free_algebra(z2(), 3, max_size=4)
