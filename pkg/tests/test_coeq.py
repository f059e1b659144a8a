import pytest
from hypothesis import given, strategies as st

from oracles import fixpoint_congruence
from prodcoeq.algebra import Homomorphism, homomorphisms, identity, product, trivial, zero_map
from prodcoeq.coeq import (ParallelPair, check_P_instance, check_P_zero_trick, cokernel,
                           compose_coequalizers_check, coequalizer, is_coequalizer,
                           is_normal_epi, kernel_inclusion, universal_property_violations)
from prodcoeq.errors import AlgebraError
from prodcoeq.fixtures import lattice2, pointed_set2, z2, z2_squared
from prodcoeq.free import free_algebra, hom_from_free


def _pairs_into(targets, sources):
    for C in sources:
        for X in targets:
            homs = list(homomorphisms(C, X))
            for u in homs:
                for v in homs:
                    yield ParallelPair(u, v)


def test_equal_maps_give_identity_quotient(X):
    pair = ParallelPair(identity(X), identity(X))
    c = coequalizer(pair)
    # the quotient is isomorphic to the common target
    assert c.quotient.size == X.size and c.q.is_surjective()
    assert is_coequalizer(identity(X), pair)


def test_z2_into_square():
    A, B = z2(), z2_squared()
    pair = ParallelPair(Homomorphism(A, B, [0, 1]), Homomorphism(A, B, [0, 3]))
    c = coequalizer(pair)
    assert c.quotient.size == 2
    assert c.congruence.blocks() == [[0, 2], [1, 3]]


def test_coequalizer_matches_oracle_and_universal_property():
    targets = [trivial(z2().signature), z2(), z2_squared()]
    for pair in _pairs_into([z2(), z2_squared()], [z2()]):
        c = coequalizer(pair)
        rel = fixpoint_congruence(pair.target, pair.generating_pairs())
        assert all(c.congruence.related(a, b) == ((a, b) in rel)
                   for a in range(pair.target.size) for b in range(pair.target.size))
        assert universal_property_violations(c.q, pair, targets) == []


def test_universal_property_detects_non_coequalizer():
    A = z2()
    pair = ParallelPair(identity(A), identity(A))
    collapse = zero_map(A, trivial(A.signature))
    assert not is_coequalizer(collapse, pair)
    assert universal_property_violations(collapse, pair, [A])


def test_normal_epi_examples(X):
    assert is_normal_epi(identity(X))
    assert is_normal_epi(Homomorphism(X, trivial(X.signature), [0, 0, 0]))
    A = z2_squared()
    assert is_normal_epi(Homomorphism(A, z2(), [0, 0, 1, 1]))


def test_not_normal_and_witness(X):
    from prodcoeq.fixtures import subtraction_y
    Y = subtraction_y()
    f = Homomorphism(X, Y, [0, 1, 1])
    v = is_normal_epi(f)
    assert not v and v.witness == (1, 2)


def test_normal_epi_requires_surjection():
    with pytest.raises(AlgebraError):
        is_normal_epi(Homomorphism(z2(), z2_squared(), [0, 1]))


@pytest.mark.parametrize("make", [pointed_set2, z2, lambda: lattice2(True)])
def test_normal_epi_matches_oracle(make):
    A = make()
    P = product(A, A)[0]
    z = P.require_pointed()
    found = [f for f in homomorphisms(P, A) if f.is_surjective()]
    assert found
    for f in found:
        zt = A.require_pointed()
        rel = fixpoint_congruence(P, [(k, z) for k in range(P.size) if f.map[k] == zt])
        eq = {(a, b) for a in range(P.size) for b in range(P.size) if f.map[a] == f.map[b]}
        assert bool(is_normal_epi(f)) == (eq == set(rel))


def test_kernel_and_cokernel():
    A, B = z2(), z2_squared()
    f = Homomorphism(A, B, [0, 1])
    K, inc = kernel_inclusion(Homomorphism(B, A, [0, 1, 0, 1]))
    assert K.size == 2 and inc.map == (0, 2)
    c = cokernel(f)
    assert c.quotient.size == 2 and c.congruence.related(0, 1)


def test_p_instance_z2_all_pairs():
    sources = [trivial(z2().signature), z2()]
    pairs = list(_pairs_into([z2(), z2_squared()], sources))
    for p1 in pairs[::3]:
        for p2 in pairs[::4]:
            assert check_P_instance(p1, p2)


def test_p_instance_fails_for_subtraction(X):
    from prodcoeq.fixtures import subtraction_y
    Y = subtraction_y()
    T = free_algebra(X, 1, ("t",))
    p1 = ParallelPair(hom_from_free(T, X, [1]), hom_from_free(T, X, [2]))
    one = trivial(X.signature)
    p2 = ParallelPair(zero_map(one, Y), zero_map(one, Y))
    v = check_P_instance(p1, p2)
    assert not v and sorted(v.witness) == [3, 5]


def test_published_pair_holds(X):
    # the pair (a, 0) into X against the identity pair on Y is fine
    from prodcoeq.fixtures import subtraction_y
    Y = subtraction_y()
    T = free_algebra(X, 1, ("t",))
    p1 = ParallelPair(hom_from_free(T, X, [1]), hom_from_free(T, X, [0]))
    p2 = ParallelPair(identity(Y), identity(Y))
    assert check_P_instance(p1, p2)


def test_zero_trick_agrees_with_instance(X):
    from prodcoeq.fixtures import subtraction_y
    Y = subtraction_y()
    T = free_algebra(X, 1, ("t",))
    for a in range(3):
        for b in range(3):
            pair = ParallelPair(hom_from_free(T, X, [a]), hom_from_free(T, X, [b]))
            v = check_P_zero_trick(pair, Y)
            assert bool(v) == ({a, b} != {1, 2})


@given(st.integers(0, 3), st.integers(0, 3))
def test_zero_trick_z2(a, b):
    A = z2_squared()
    T = free_algebra(A, 1, ("t",))
    pair = ParallelPair(hom_from_free(T, A, [a]), hom_from_free(T, A, [b]))
    assert check_P_zero_trick(pair, z2())


def test_compose_coequalizers():
    A, B = z2(), z2_squared()
    P, i1, i2 = _coproduct_like(A)
    u = Homomorphism(P, B, [0, 1, 2, 3])
    v = Homomorphism(P, B, [0, 0, 0, 0])
    e1 = coequalizer(ParallelPair(u.after(i1), v.after(i1))).q
    e2 = coequalizer(ParallelPair(e1.after(u).after(i2), e1.after(v).after(i2))).q
    res = compose_coequalizers_check(u, v, i1, i2, e1, e2, targets=[A, B])
    assert res.conclusion and all(res.hypotheses.values())
    with pytest.raises(AlgebraError, match="e2 coequalizes"):
        compose_coequalizers_check(u, v, i1, i2, e1, identity(e1.target))


def _coproduct_like(A):
    P, _, _ = product(A, A)
    i1 = Homomorphism(A, P, [0, 2])
    i2 = Homomorphism(A, P, [0, 1])
    return P, i1, i2


def test_lattice_pairs_hold():
    L = lattice2(True)
    pairs = list(_pairs_into([L], [trivial(L.signature), L]))
    assert all(check_P_instance(p, q) for p in pairs for q in pairs)
