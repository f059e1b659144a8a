"""Coequalizers of parallel pairs, normal epimorphisms and instance checks of (P).

In a variety the coequalizer of ``u, v: C -> X`` is the quotient of ``X`` by
the congruence generated by ``{(u(c), v(c))}``. Coequalizers are compared by
kernel congruence; the universal property itself is only enumerated, on small
targets, as an oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import (FiniteAlgebra, Homomorphism, homomorphisms, identity, kernel_congruence,
                      pairing, product, product_map, quotient, same_signature, subalgebra,
                      zero_map)
from .checks import PASS, Verdict
from .congruence import congruence_generated
from .errors import AlgebraError
from .relations import Congruence, Partition

DEFAULT_MAX_TARGET = 5


@dataclass(frozen=True, eq=False)
class ParallelPair:
    u: Homomorphism
    v: Homomorphism

    def __post_init__(self):
        if self.u.source != self.v.source or self.u.target != self.v.target:
            raise AlgebraError("parallel pair needs common source and target")

    @property
    def source(self) -> FiniteAlgebra:
        return self.u.source

    @property
    def target(self) -> FiniteAlgebra:
        return self.u.target

    def generating_pairs(self) -> list[tuple[int, int]]:
        seen = {}
        for a, b in zip(self.u.map, self.v.map):
            if a != b:
                seen.setdefault((a, b), None)
        return list(seen)


@dataclass(frozen=True, eq=False)
class CoequalizerResult:
    quotient: FiniteAlgebra
    q: Homomorphism
    congruence: Congruence


def coequalizer_congruence(pair: ParallelPair) -> Congruence:
    theta, _ = congruence_generated(pair.target, pair.generating_pairs(), trace=False)
    return theta


def coequalizer(pair: ParallelPair) -> CoequalizerResult:
    theta = coequalizer_congruence(pair)
    Q, q = quotient(pair.target, theta, name=f"coeq({pair.target.name})")
    return CoequalizerResult(Q, q, theta)


def is_coequalizer(e: Homomorphism, pair: ParallelPair) -> bool:
    """Whether ``e`` is a coequalizer of ``pair`` (surjective with the right kernel)."""
    if e.source != pair.target or not e.is_surjective():
        return False
    return kernel_congruence(e).partition == coequalizer_congruence(pair).partition


def factorizations(h: Homomorphism, e: Homomorphism):
    """All homomorphisms ``k`` with ``k o e = h``."""
    return [k for k in homomorphisms(e.target, h.target)
            if all(k.map[e.map[x]] == h.map[x] for x in range(e.source.size))]


def universal_property_violations(e: Homomorphism, pair: ParallelPair,
                                  targets: Iterable[FiniteAlgebra],
                                  max_target: int = DEFAULT_MAX_TARGET) -> list:
    """Enumerate every ``h: X -> Z`` with ``h u = h v`` over the given targets and
    report the ones without exactly one factorization through ``e``."""
    bad = []
    for Z in targets:
        if Z.size > max_target:
            continue
        for h in homomorphisms(pair.target, Z):
            if h.after(pair.u).map != h.after(pair.v).map:
                continue
            n = len(factorizations(h, e))
            if n != 1:
                bad.append((Z.name, h.map, n))
    return bad


def _pointed_kernel_pairs(f: Homomorphism) -> list[tuple[int, int]]:
    z_src = f.source.require_pointed()
    z_tgt = f.target.require_pointed()
    return [(k, z_src) for k in range(f.source.size) if f.map[k] == z_tgt and k != z_src]


def is_normal_epi(f: Homomorphism) -> Verdict:
    """A surjection between pointed algebras is normal iff its kernel congruence
    is generated by the pairs ``(k, 0)`` with ``f(k) = 0``.

    The failing witness is the least pair in ``Eq(f)`` missing from that congruence.
    """
    if not f.is_surjective():
        raise AlgebraError("not epi: map is not surjective")
    gen, _ = congruence_generated(f.source, _pointed_kernel_pairs(f), trace=False)
    eq = kernel_congruence(f)
    if gen.partition == eq.partition:
        return PASS
    return Verdict(False, _least_difference(eq.partition, gen.partition))


def _least_difference(bigger: Partition, smaller: Partition):
    for a, b in bigger.pairs():
        if not smaller.related(a, b):
            return (a, b)
    return None


def kernel_inclusion(f: Homomorphism):
    """The subalgebra ``f^-1(0)`` with its inclusion into ``f.source``."""
    z = f.target.require_pointed()
    return subalgebra(f.source, [a for a in range(f.source.size) if f.map[a] == z],
                      name=f"ker({f.source.name})")


def cokernel(f: Homomorphism) -> CoequalizerResult:
    """Quotient of the target by ``Cg{(f(a), 0)}``."""
    z = f.target.require_pointed()
    pairs = sorted({(f.map[a], z) for a in range(f.source.size) if f.map[a] != z})
    theta, _ = congruence_generated(f.target, pairs, trace=False)
    Q, q = quotient(f.target, theta, name=f"coker({f.target.name})")
    return CoequalizerResult(Q, q, theta)


def product_pair(p1: ParallelPair, p2: ParallelPair):
    """``(u x u', v x v')`` together with the canonical products it lives between."""
    src = product(p1.source, p2.source)
    tgt = product(p1.target, p2.target)
    u = product_map(p1.u, p2.u, src, tgt)
    v = product_map(p1.v, p2.v, src, tgt)
    return ParallelPair(u, v), src, tgt


def _compare(expected: Partition, actual: Partition) -> Verdict:
    if expected == actual:
        return PASS
    witness = _least_difference(expected, actual) or _least_difference(actual, expected)
    return Verdict(False, witness)


def check_P_instance(p1: ParallelPair, p2: ParallelPair) -> Verdict:
    """Is ``q1 x q2`` the coequalizer of ``(u x u', v x v')``?

    Compares ``Eq(q1 x q2)`` with the coequalizer congruence on ``X x Y``. The
    witness is the least pair (as element indices of ``X x Y``) in one and not the other.
    """
    same_signature(p1.source, p2.source, p1.target, p2.target)
    pp, _, tgt = product_pair(p1, p2)
    c1, c2 = coequalizer(p1), coequalizer(p2)
    qq = product_map(c1.q, c2.q, tgt)
    return _compare(kernel_congruence(qq).partition, coequalizer_congruence(pp).partition)


def check_P_zero_trick(pair: ParallelPair, B: FiniteAlgebra) -> Verdict:
    """Is ``q x 1_B`` the coequalizer of ``(u, 0), (v, 0): C -> X x B``?"""
    same_signature(pair.target, B)
    B.require_pointed()
    prod = product(pair.target, B)
    z = zero_map(pair.source, B)
    u0 = pairing(pair.u, z, prod)
    v0 = pairing(pair.v, z, prod)
    c = coequalizer(pair)
    qq = product_map(c.q, identity(B), prod)
    return _compare(kernel_congruence(qq).partition,
                    coequalizer_congruence(ParallelPair(u0, v0)).partition)


@dataclass(frozen=True)
class CompositeCoequalizerCheck:
    hypotheses: dict
    conclusion: bool
    universal_violations: tuple = ()


def compose_coequalizers_check(u: Homomorphism, v: Homomorphism, i1: Homomorphism,
                               i2: Homomorphism, e1: Homomorphism, e2: Homomorphism,
                               targets: Iterable[FiniteAlgebra] = (),
                               max_target: int = DEFAULT_MAX_TARGET) -> CompositeCoequalizerCheck:
    """Two-stage coequalizer: ``e1`` coequalizes ``u i1, v i1``, ``e2`` coequalizes
    ``e1 u i2, e1 v i2``, and ``e2 e1`` equalizes ``u, v``; then ``e2 e1`` should be
    a coequalizer of ``u, v``.

    Raises ``AlgebraError`` naming every violated hypothesis.
    """
    e21 = e2.after(e1)
    hyp = {
        "e1 coequalizes u.i1, v.i1": is_coequalizer(e1, ParallelPair(u.after(i1), v.after(i1))),
        "e2 coequalizes e1.u.i2, e1.v.i2": is_coequalizer(
            e2, ParallelPair(e1.after(u).after(i2), e1.after(v).after(i2))),
        "e2.e1.u = e2.e1.v": e21.after(u).map == e21.after(v).map,
    }
    failed = [k for k, ok in hyp.items() if not ok]
    if failed:
        raise AlgebraError("hypotheses violated: " + "; ".join(failed))
    pair = ParallelPair(u, v)
    viol = tuple(universal_property_violations(e21, pair, targets, max_target))
    return CompositeCoequalizerCheck(hyp, is_coequalizer(e21, pair) and not viol, viol)
