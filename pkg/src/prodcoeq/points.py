"""The category of points Pt(X): split epimorphisms over a fixed base.

Products in Pt(X) are pullbacks over X; the zero object is ``(X, 1, 1)`` and
the zero morphism ``(A,p,s) -> (B,q,t)`` is ``t o p``. Product totals keep their
pullback carrier so that witnesses can be reported as coordinate pairs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (FiniteAlgebra, Homomorphism, PullbackAlgebra, homomorphisms, identity,
                      kernel_congruence, pullback, quotient)
from .checks import PASS, Verdict
from .congruence import congruence_generated
from .errors import AlgebraError
from .relations import Partition


@dataclass(frozen=True, eq=False)
class Point:
    total: FiniteAlgebra
    base: FiniteAlgebra
    p: Homomorphism
    s: Homomorphism
    pullback: PullbackAlgebra | None = None

    def __post_init__(self):
        if self.p.source != self.total or self.p.target != self.base:
            raise AlgebraError("structure map must go total -> base")
        if self.s.source != self.base or self.s.target != self.total:
            raise AlgebraError("section must go base -> total")
        if any(self.p.map[self.s.map[x]] != x for x in range(self.base.size)):
            raise AlgebraError("p o s is not the identity on the base")


@dataclass(frozen=True, eq=False)
class PointMorphism:
    source: Point
    target: Point
    f: Homomorphism

    def __post_init__(self):
        src, tgt = self.source, self.target
        if src.base != tgt.base:
            raise AlgebraError("points over different bases")
        if self.f.source != src.total or self.f.target != tgt.total:
            raise AlgebraError("underlying map has the wrong domain or codomain")
        if any(tgt.p.map[self.f.map[a]] != src.p.map[a] for a in range(src.total.size)):
            raise AlgebraError("q o f != p")
        if any(self.f.map[src.s.map[x]] != tgt.s.map[x] for x in range(src.base.size)):
            raise AlgebraError("f o s != t")

    def after(self, other: "PointMorphism") -> "PointMorphism":
        return PointMorphism(other.source, self.target, self.f.after(other.f))


def pt_zero(X: FiniteAlgebra) -> Point:
    return Point(X, X, identity(X), identity(X))


def pt_zero_morphism(source: Point, target: Point) -> PointMorphism:
    if source.base != target.base:
        raise AlgebraError("points over different bases")
    return PointMorphism(source, target, target.s.after(source.p))


def pt_product(P1: Point, P2: Point):
    """``(A x_X B, d, (s,t))`` with its two projections."""
    if P1.base != P2.base:
        raise AlgebraError("points over different bases")
    pb = pullback(P1.p, P2.p)
    X = P1.base
    d = P1.p.after(pb.p1)
    sec = Homomorphism(X, pb.algebra,
                       tuple(pb.index[(P1.s.map[x], P2.s.map[x])] for x in range(X.size)))
    prod = Point(pb.algebra, X, d, sec, pb)
    return prod, PointMorphism(prod, P1, pb.p1), PointMorphism(prod, P2, pb.p2)


def point_morphisms(source: Point, target: Point):
    """All point morphisms between two points (enumerated; for small totals only)."""
    out = []
    for f in homomorphisms(source.total, target.total):
        try:
            out.append(PointMorphism(source, target, f))
        except AlgebraError:
            continue
    return out


def pt_product_violations(P1: Point, P2: Point, tests, max_total: int = 6) -> list:
    """Enumerate cones ``f1: D -> P1, f2: D -> P2`` from each test point ``D`` and
    report those that do not factor exactly once through the product.

    Entries are ``(D.total.name, f1 map, f2 map, number of factorizations)``.
    """
    prod, pi1, pi2 = pt_product(P1, P2)
    bad = []
    for D in tests:
        if D.base != P1.base or D.total.size > max_total:
            continue
        into_prod = point_morphisms(D, prod)
        for f1 in point_morphisms(D, P1):
            for f2 in point_morphisms(D, P2):
                n = sum(1 for h in into_prod
                        if pi1.after(h).f.map == f1.f.map and pi2.after(h).f.map == f2.f.map)
                if n != 1:
                    bad.append((D.total.name, f1.f.map, f2.f.map, n))
    return bad


def _coeq_partition(u: PointMorphism, v: PointMorphism) -> Partition:
    pairs = sorted({(a, b) for a, b in zip(u.f.map, v.f.map) if a != b})
    theta, _ = congruence_generated(u.target.total, pairs, trace=False)
    return theta.partition


def pt_coequalizer(u: PointMorphism, v: PointMorphism):
    """Coequalizer in Pt(X), computed on the underlying algebras.

    Returns the quotient point and the quotient point morphism.
    """
    if u.source.total != v.source.total or u.target.total != v.target.total:
        raise AlgebraError("not a parallel pair")
    A = u.target
    part = _coeq_partition(u, v)
    Q, q = quotient(A.total, part, name=f"coeq({A.total.name})")
    reps = sorted(set(part.rep))
    p_bar = Homomorphism(Q, A.base, tuple(A.p.map[r] for r in reps))
    point = Point(Q, A.base, p_bar, q.after(A.s))
    return point, PointMorphism(A, point, q)


def pt_kernel_pairs(f: PointMorphism) -> list[tuple[int, int]]:
    """Pairs ``(k, s(p(k)))`` for the elements k of the kernel of ``f`` in Pt(X)."""
    A, B = f.source, f.target
    out = []
    for a in range(A.total.size):
        if f.f.map[a] == B.s.map[A.p.map[a]]:
            b = A.s.map[A.p.map[a]]
            if a != b:
                out.append((a, b))
    return out


def pt_is_normal_epi(f: PointMorphism) -> Verdict:
    """``f`` is normal iff ``Eq(f)`` is generated by its kernel paired with the zero morphism."""
    if not f.f.is_surjective():
        raise AlgebraError("not epi: map is not surjective")
    gen, _ = congruence_generated(f.source.total, pt_kernel_pairs(f), trace=False)
    eq = kernel_congruence(f.f).partition
    if gen.partition == eq:
        return PASS
    for a, b in eq.pairs():
        if not gen.partition.related(a, b):
            return Verdict(False, (a, b))
    raise AssertionError("unreachable")


def check_local_P_instance(pair1: tuple, pair2: tuple) -> Verdict:
    """Is the pullback of two coequalizers in Pt(X) the coequalizer of the product pair?

    ``pair_i = (u_i, v_i)`` are parallel point morphisms ``C_i -> A_i``. The witness
    is the least pair of pullback coordinates ``((a1, a2), (a1', a2'))`` on which the
    two kernel congruences disagree.
    """
    (u1, v1), (u2, v2) = pair1, pair2
    if u1.source.base != u2.source.base:
        raise AlgebraError("points over different bases")
    A1, A2 = u1.target, u2.target
    C1, C2 = u1.source, u2.source
    pbA = pullback(A1.p, A2.p)
    pbC = pullback(C1.p, C2.p)
    idx = pbA.index
    gens = sorted({(idx[(u1.f.map[c1], u2.f.map[c2])], idx[(v1.f.map[c1], v2.f.map[c2])])
                   for c1, c2 in pbC.carrier})
    gens = [(a, b) for a, b in gens if a != b]
    coeq, _ = congruence_generated(pbA.algebra, gens, trace=False)
    k1, k2 = _coeq_partition(u1, v1), _coeq_partition(u2, v2)
    expected = Partition.from_labels([(k1.rep[a1], k2.rep[a2]) for a1, a2 in pbA.carrier])
    if expected == coeq.partition:
        return PASS
    for a, b in expected.pairs():
        if not coeq.partition.related(a, b):
            return Verdict(False, (pbA.carrier[a], pbA.carrier[b]))
    for a, b in coeq.partition.pairs():
        if not expected.related(a, b):
            return Verdict(False, (pbA.carrier[a], pbA.carrier[b]))
    raise AssertionError("unreachable")
