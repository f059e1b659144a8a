import pytest

from prodcoeq.algebra import Homomorphism, identity, product
from prodcoeq.errors import AlgebraError
from prodcoeq.fixtures import pointed_set2, z2, z2_squared
from prodcoeq.points import (Point, PointMorphism, check_local_P_instance, point_morphisms,
                             pt_coequalizer, pt_is_normal_epi, pt_product, pt_zero,
                             pt_zero_morphism)


def _split_square(A):
    P, p1, _ = product(A, A)
    s = Homomorphism(A, P, [a * A.size + a for a in range(A.size)])
    return Point(P, A, p1, s)


def test_point_validation():
    A, B = z2(), z2_squared()
    p = Homomorphism(B, A, [0, 0, 1, 1])
    with pytest.raises(AlgebraError):
        Point(B, A, p, Homomorphism(A, B, [0, 1]))
    Point(B, A, p, Homomorphism(A, B, [0, 2]))


def test_zero_object_and_morphism():
    A = z2()
    E = _split_square(A)
    Z = pt_zero(A)
    z = pt_zero_morphism(E, Z)
    assert z.f.map == E.p.map
    assert pt_zero_morphism(Z, E).f.map == E.s.map


def test_product_is_pullback():
    A = z2()
    E = _split_square(A)
    prod, q1, q2 = pt_product(E, E)
    assert prod.total.size == 8
    assert all(prod.p.map[prod.s.map[x]] == x for x in range(2))
    assert q1.f.map != q2.f.map


def test_morphism_validation():
    A = z2()
    E = _split_square(A)
    with pytest.raises(AlgebraError):
        PointMorphism(E, E, Homomorphism(E.total, E.total, [0, 1, 0, 1]))
    assert len(point_morphisms(E, E)) >= 2


def test_coequalizer_in_points():
    A = z2()
    E = _split_square(A)
    homs = point_morphisms(E, E)
    for u in homs:
        for v in homs:
            Q, q = pt_coequalizer(u, v)
            assert q.f.is_surjective()
            assert q.after(u).f.map == q.after(v).f.map
            assert pt_is_normal_epi(q)


def test_local_instances_z2_hold():
    A = z2()
    E = _split_square(A)
    Z = pt_zero(A)
    homs = [(u, v) for src in (Z, E) for u in point_morphisms(src, E)
            for v in point_morphisms(src, E)]
    for pair1 in homs:
        for pair2 in homs:
            assert check_local_P_instance(pair1, pair2)


def test_local_instance_pointed_sets_fails_somewhere():
    A = pointed_set2()
    E = _split_square(A)
    homs = [(u, v) for u in point_morphisms(E, E) for v in point_morphisms(E, E)]
    bad = [(p, q) for p in homs for q in homs if not check_local_P_instance(p, q)]
    assert bad
    (x1, x2), (y1, y2) = check_local_P_instance(*bad[0]).witness
    assert E.p.map[x1] == E.p.map[x2] and E.p.map[y1] == E.p.map[y2]


def test_different_bases_rejected():
    E1, E2 = _split_square(z2()), pt_zero(z2_squared())
    with pytest.raises(AlgebraError):
        pt_product(E1, E2)
    with pytest.raises(AlgebraError):
        pt_zero_morphism(E1, E2)


def test_identity_is_normal():
    E = _split_square(z2())
    assert pt_is_normal_epi(PointMorphism(E, E, identity(E.total)))
