import numpy as np
import pytest
from hypothesis import given, strategies as st

from prodcoeq.errors import TermError
from prodcoeq.fixtures import lattice2, subtraction_x, z2
from prodcoeq.terms import (App, Var, app, check_term, depth, eval_term, eval_vectorized,
                            format_term, from_prefix, substitute, to_prefix, variables)

x, y, z = Var(0), Var(1), Var(2)
MEDIAN = app("join", app("join", app("meet", x, y), app("meet", y, z)), app("meet", x, z))


def test_group_identity_in_z2():
    assert eval_term(z2(), app("+", x, y), {0: 1, 1: 1}) == 0


def test_subtraction_of_nonzero_is_zero():
    X = subtraction_x()
    b, a = X.element("b"), X.element("a")
    assert eval_term(X, app("-", x, y), {0: b, 1: a}) == X.element("0")


def test_median_polynomial_on_lattice():
    assert eval_term(lattice2(False), MEDIAN, [1, 1, 0]) == 1


def test_unbound_variable():
    with pytest.raises(TermError):
        eval_term(z2(), app("+", x, y), {0: 1})


def test_arity_mismatch():
    with pytest.raises(TermError):
        eval_term(z2(), App("+", (x,)), [0])
    with pytest.raises(TermError):
        check_term(App("+", (x,)), z2().signature)
    with pytest.raises(TermError):
        check_term(app("+", x, Var(5)), z2().signature, nvars=2)


def test_prefix_round_trip():
    names = ("x", "y", "z")
    t = app("+", x, app("+", y, App("0")))
    doc = to_prefix(t, names)
    assert doc == ["+", ["x"], ["+", ["y"], ["0"]]]
    assert from_prefix(doc, names, z2().signature) == t
    assert format_term(t, names) == "(x + (y + 0))"
    assert format_term(MEDIAN, names).startswith("join(")


def test_malformed_prefix():
    with pytest.raises(TermError):
        from_prefix([], ("x",))
    with pytest.raises(TermError):
        from_prefix(["nope", ["x"]], ("x",), z2().signature)


def test_substitute_and_inspect():
    t = substitute(app("+", x, y), {1: app("+", x, x)})
    assert variables(t) == {0}
    assert depth(t) == 2


@given(st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_vectorized_agrees_with_scalar(env):
    A = lattice2(False)
    vec = eval_vectorized(A, MEDIAN, [np.asarray([v]) for v in env])
    assert int(vec[0]) == eval_term(A, MEDIAN, env)


def test_variable_is_lookup_and_commutes_with_homomorphisms():
    from prodcoeq.algebra import homomorphisms, product
    A = z2()
    P, pi1, _ = product(A, A)
    t = app("+", x, app("+", y, x))
    for env in np.ndindex(4, 4):
        assert eval_term(P, x, env) == env[0]
        assert pi1(eval_term(P, t, env)) == eval_term(A, t, [pi1(e) for e in env])
    assert len(list(homomorphisms(A, A))) == 2
