"""Deciding (P) and local (P) for the variety generated by a finite algebra.

Both procedures build one generic instance from free algebras, generate a
principal congruence on it with a derivation trace, and test a single pair:

* (P): on ``F(x,y) x F(z)`` with ``C = Cg((x,0), (y,0))``, is ``(x,z) C (y,z)``?
* local (P): on the pullback ``P`` of ``F(x,y) -> F(w) <- F(u,v)`` (all
  generators sent to ``w``) with ``C = Cg((x,u), (y,u))``, is ``(x,v) C (y,v)``?

A positive answer is turned into witnessing terms ``b_i, c_i, p_i`` by reading
the transitivity chain off the trace. A negative answer is concretized into an
explicit failing instance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .algebra import FiniteAlgebra, product, pullback, trivial, zero_map
from .checks import Verdict, local_egg_box_check
from .coeq import ParallelPair, check_P_instance
from .congruence import DerivationTrace, congruence_generated
from .errors import AlgebraError, TermError
from .free import DEFAULT_MAX_FREE_SIZE, FreeAlgebra, free_algebra, hom_from_free
from .points import Point, PointMorphism, check_local_P_instance, pt_zero
from .terms import Term, Var, check_term, eval_vectorized, from_prefix, substitute, to_prefix

P_KIND = "P"
LOCAL_KIND = "local"


@dataclass(frozen=True)
class PWitness:
    """Terms ``b_1..b_m`` (binary), ``c_1..c_m`` and ``p_1..p_n`` (arity m+2).

    For kind ``"P"`` the ``c`` terms are unary in ``z``; for ``"local"`` they are
    binary in ``u, v``. The ``p`` terms use variables ``0..m+1``: the two swapped
    slots first, then one slot per ``b``/``c`` pair.
    """
    kind: str
    b: tuple
    c: tuple
    p: tuple

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def n(self) -> int:
        return len(self.p)

    def c_names(self) -> tuple:
        return ("z",) if self.kind == P_KIND else ("u", "v")

    def p_names(self) -> tuple:
        return tuple(f"v{i}" for i in range(self.m + 2))

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "m": self.m, "n": self.n,
            "b": [to_prefix(t, ("x", "y")) for t in self.b],
            "c": [to_prefix(t, self.c_names()) for t in self.c],
            "p": [to_prefix(t, self.p_names()) for t in self.p],
        }

    @classmethod
    def from_json(cls, data: dict, signature=None) -> "PWitness":
        kind = data["kind"]
        m = len(data["b"])
        c_names = ("z",) if kind == P_KIND else ("u", "v")
        p_names = tuple(f"v{i}" for i in range(m + 2))
        return cls(kind,
                   tuple(from_prefix(t, ("x", "y"), signature) for t in data["b"]),
                   tuple(from_prefix(t, c_names, signature) for t in data["c"]),
                   tuple(from_prefix(t, p_names, signature) for t in data["p"]))


@dataclass
class Decision:
    holds: bool
    witness: PWitness | None = None
    counterexample: Any = None
    sizes: dict = field(default_factory=dict)
    trace: DerivationTrace | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True, eq=False)
class PCounterexample:
    """Two parallel pairs whose product is not a coequalizer."""
    pair1: ParallelPair
    pair2: ParallelPair
    verdict: Verdict


@dataclass(frozen=True, eq=False)
class LocalCounterexample:
    """Two parallel pairs in Pt(F(w)) whose pullback-product is not a coequalizer."""
    pair1: tuple
    pair2: tuple
    verdict: Verdict
    egg_box: Verdict


# -- extraction -------------------------------------------------------------

def extract_terms(trace: DerivationTrace, start: int, end: int, split, first: FreeAlgebra,
                  second: FreeAlgebra, kind: str) -> PWitness:
    """Read witnessing terms off the chain of one-step links from ``start`` to ``end``.

    ``split`` maps an element of the generic algebra to its coordinates in
    ``first x second``. Every link uses the single generating pair; its context
    becomes ``p_i`` with the hole placed in slot 0 (forward) or slot 1 (backward).
    All parameters are pooled into one list, so every ``p_i`` has the same arity.
    """
    if len(trace.pairs) != 1:
        raise AlgebraError("term extraction needs a principal congruence")
    links = trace.links(start, end)
    if not links:
        if start != end:
            raise AlgebraError("trace does not relate the target pair")
        # only in a trivial variety: x = y
        return PWitness(kind, (), (), (Var(0),))
    if links[0].source != start or links[-1].target != end or any(
            a.target != b.source for a, b in zip(links, links[1:])):
        raise AlgebraError("malformed transitivity chain")
    params: dict[int, int] = {}
    for link in links:
        for r in link.params:
            params.setdefault(r, len(params))
    p_terms = []
    for link in links:
        mapping = {0: Var(0) if link.forward else Var(1)}
        for j, r in enumerate(link.params):
            mapping[1 + j] = Var(2 + params[r])
        p_terms.append(substitute(link.context, mapping))
    bs, cs = [], []
    for r in params:
        i, j = split(r)
        bs.append(first.witnesses[i])
        cs.append(second.witnesses[j])
    return PWitness(kind, tuple(bs), tuple(cs), tuple(p_terms))


# -- verification -----------------------------------------------------------

def _check_shapes(A: FiniteAlgebra, w: PWitness, c_vars: int) -> None:
    if len(w.c) != w.m:
        raise TermError("b and c must have the same length")
    if w.n < 1:
        raise TermError("need at least one p term")
    for t in w.b:
        check_term(t, A.signature, 2)
    for t in w.c:
        check_term(t, A.signature, c_vars)
    for t in w.p:
        check_term(t, A.signature, w.m + 2)


def _chain_holds(A: FiniteAlgebra, w: PWitness) -> bool:
    n = A.size
    X, Y = (a.ravel() for a in np.indices((n, n)))
    B = [eval_vectorized(A, t, [X, Y]) for t in w.b]
    fwd = [eval_vectorized(A, p, [X, Y, *B]) for p in w.p]
    bwd = [eval_vectorized(A, p, [Y, X, *B]) for p in w.p]
    if not np.array_equal(fwd[0], X) or not np.array_equal(bwd[-1], Y):
        return False
    return all(np.array_equal(bwd[i], fwd[i + 1]) for i in range(w.n - 1))


def verify_P_terms(A: FiniteAlgebra, w: PWitness) -> bool:
    """Check the identities for (P) under every substitution from ``A``.

    p_1(x,y,b(x,y)) = x, p_i(y,x,b) = p_{i+1}(x,y,b), p_n(y,x,b) = y and
    p_i(0,0,c(z)) = z for every i.
    """
    zero = A.require_pointed()
    _check_shapes(A, w, 1)
    if not _chain_holds(A, w):
        return False
    Z = np.arange(A.size)
    Cz = [eval_vectorized(A, t, [Z]) for t in w.c]
    zeros = np.full(A.size, zero)
    return all(np.array_equal(eval_vectorized(A, p, [zeros, zeros, *Cz]), Z) for p in w.p)


def verify_local_terms(A: FiniteAlgebra, w: PWitness) -> bool:
    """Check the identities for local normal projections under every substitution.

    The chain identities as for (P), plus p_i(u,u,c(u,v)) = v for every i and
    b_j(z,z) = c_j(z,z) for every j.
    """
    _check_shapes(A, w, 2)
    if not _chain_holds(A, w):
        return False
    n = A.size
    U, V = (a.ravel() for a in np.indices((n, n)))
    C = [eval_vectorized(A, t, [U, V]) for t in w.c]
    if not all(np.array_equal(eval_vectorized(A, p, [U, U, *C]), V) for p in w.p):
        return False
    Z = np.arange(n)
    return all(np.array_equal(eval_vectorized(A, b, [Z, Z]), eval_vectorized(A, c, [Z, Z]))
               for b, c in zip(w.b, w.c))


# -- decision procedures ----------------------------------------------------

def decide_P(A: FiniteAlgebra, max_free_size: int = DEFAULT_MAX_FREE_SIZE) -> Decision:
    """Does the pointed variety generated by ``A`` satisfy (P)?"""
    A.require_pointed()
    F = free_algebra(A, 2, ("x", "y"), max_free_size)
    G = free_algebra(A, 1, ("z",), max_free_size)
    prod, _, _ = product(F.algebra, G.algebra, name="F(x,y)xF(z)")
    m = G.size
    x, y = F.generators
    (z,) = G.generators
    g0 = G.zero
    start, end = x * m + z, y * m + z
    C, tr = congruence_generated(prod, [(x * m + g0, y * m + g0)])
    sizes = {"free_rank2": F.size, "free_rank1": G.size, "generic": prod.size,
             "classes": C.partition.num_blocks()}
    if C.related(start, end):
        w = extract_terms(tr, start, end, lambda e: divmod(e, m), F, G, P_KIND)
        return Decision(True, w, None, sizes, tr)
    return Decision(False, None, _concretize_P(A, F, G, max_free_size), sizes, tr)


def _concretize_P(A, F: FreeAlgebra, G: FreeAlgebra, max_free_size) -> PCounterexample:
    # coequalizer of x, y: F(t) -> F(x,y) times the trivial pair 1 -> F(z)
    T = free_algebra(A, 1, ("t",), max_free_size)
    x, y = F.generators
    pair1 = ParallelPair(hom_from_free(T, F.algebra, [x]), hom_from_free(T, F.algebra, [y]))
    one = trivial(A.signature)
    pair2 = ParallelPair(zero_map(one, G.algebra), zero_map(one, G.algebra))
    return PCounterexample(pair1, pair2, check_P_instance(pair1, pair2))


def decide_local_NP(A: FiniteAlgebra, max_free_size: int = DEFAULT_MAX_FREE_SIZE) -> Decision:
    """Does the variety generated by ``A`` have local normal projections (equivalently
    satisfy (P) locally)? No pointedness is required."""
    F1 = free_algebra(A, 2, ("x", "y"), max_free_size)
    F2 = free_algebra(A, 2, ("u", "v"), max_free_size)
    W = free_algebra(A, 1, ("w",), max_free_size)
    (w,) = W.generators
    f1 = hom_from_free(F1, W.algebra, [w, w])
    f2 = hom_from_free(F2, W.algebra, [w, w])
    pb = pullback(f1, f2, name="generic pullback")
    x, y = F1.generators
    u, v = F2.generators
    idx = pb.index
    start, end = idx[(x, v)], idx[(y, v)]
    C, tr = congruence_generated(pb.algebra, [(idx[(x, u)], idx[(y, u)])])
    sizes = {"free_rank2": F1.size, "free_rank1": W.size, "generic": pb.algebra.size,
             "classes": C.partition.num_blocks()}
    if C.related(start, end):
        wit = extract_terms(tr, start, end, lambda e: pb.carrier[e], F1, F2, LOCAL_KIND)
        return Decision(True, wit, None, sizes, tr)
    egg = local_egg_box_check(pb, C)
    return Decision(False, None, _concretize_local(A, F1, F2, W, f1, f2, egg, max_free_size),
                    sizes, tr)


def _concretize_local(A, F1, F2, W, f1, f2, egg, max_free_size) -> LocalCounterexample:
    (w,) = W.generators
    x, y = F1.generators
    u, _ = F2.generators
    point1 = Point(F1.algebra, W.algebra, f1, hom_from_free(W, F1.algebra, [x]))
    point2 = Point(F2.algebra, W.algebra, f2, hom_from_free(W, F2.algebra, [u]))
    # C = F(w, t) over W, with u: t -> x and v: t -> y
    Fc = free_algebra(A, 2, ("w", "t"), max_free_size)
    r = hom_from_free(Fc, W.algebra, [w, w])
    n = hom_from_free(W, Fc.algebra, [Fc.generators[0]])
    cpoint = Point(Fc.algebra, W.algebra, r, n)
    pair1 = (PointMorphism(cpoint, point1, hom_from_free(Fc, F1.algebra, [x, x])),
             PointMorphism(cpoint, point1, hom_from_free(Fc, F1.algebra, [x, y])))
    zero = pt_zero(W.algebra)
    pair2 = (PointMorphism(zero, point2, point2.s), PointMorphism(zero, point2, point2.s))
    return LocalCounterexample(pair1, pair2, check_local_P_instance(pair1, pair2), egg)


def check_witness(A: FiniteAlgebra, w: PWitness) -> bool:
    return verify_P_terms(A, w) if w.kind == P_KIND else verify_local_terms(A, w)


def term_list(terms: Sequence[Term], names) -> list:
    return [to_prefix(t, names) for t in terms]
