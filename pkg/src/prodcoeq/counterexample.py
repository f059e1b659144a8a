"""The subtractive variety that has normal projections but fails (P).

``X = {0, a, b}`` and ``Y = {0, c}`` carry the subtraction ``x - y = x`` if
``y = 0`` and ``0`` otherwise. The published claims are checked one by one,
exactly as stated, with ``f(a) = 0`` and ``f(b) = c``:

1. ``f`` is a normal epimorphism;
2. ``f x 1_Y`` is not normal;
3. ``((a,c),(b,c))`` lies in ``Eq(f x 1_Y)`` but not in ``Cg((a,0),(0,0))``;
4. ``X`` has a subtraction term;
5. the variety generated by ``X`` fails (P).

Under the stated subtraction ``f`` does not preserve ``-`` (``f(b - a) = 0``
while ``f(b) - f(a) = c``), so the first three claims fail as written. The
report therefore also carries a corrected instance: the coequalizer ``q`` of
the two elements ``a, b`` of ``X`` (a map from the free algebra on one
generator), for which ``q x 1_Y`` is not the coequalizer of the product pair.
Its least witness is again ``((a,c),(b,c))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import FiniteAlgebra, Homomorphism, is_homomorphism, permuted, product, trivial, zero_map
from .clone import find_subtraction
from .coeq import ParallelPair, check_P_instance, is_normal_epi
from .congruence import congruence_generated
from .decide import decide_P
from .fixtures import subtraction_x, subtraction_y
from .free import free_algebra, hom_from_free
from .terms import format_term


@dataclass(frozen=True)
class Assertion:
    name: str
    passed: bool
    detail: str


@dataclass
class CounterexampleReport:
    assertions: list
    corrected: Assertion
    witness: tuple  # labels of the two elements of X x Y
    sizes: dict = field(default_factory=dict)
    p_instance: tuple | None = None  # (pair1, pair2, verdict) of the corrected instance

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)


def _preservation_failure(source: FiniteAlgebra, target: FiniteAlgebra, m: Sequence[int]) -> str | None:
    """First equation ``m(op(args)) = op(m(args))`` that fails, as readable text."""
    for sym, arity in source.signature.symbols:
        for args in np.ndindex(*(source.size,) * arity):
            lhs = m[source.op(sym, *args)]
            rhs = target.op(sym, *(m[a] for a in args))
            if lhs != rhs:
                src = f"{sym}({', '.join(source.label(a) for a in args)})" if arity else sym
                img = f"{sym}({', '.join(target.label(m[a]) for a in args)})" if arity else sym
                return (f"f({src}) = {target.label(lhs)} but {img} = {target.label(rhs)}")
    return None


def verify_subtraction_counterexample(perm_x: Sequence[int] | None = None,
                                perm_y: Sequence[int] | None = None) -> CounterexampleReport:
    """Check each published claim; optional permutations relabel the carriers."""
    X, Y = subtraction_x(), subtraction_y()
    if perm_x is not None:
        X = permuted(X, perm_x)
    if perm_y is not None:
        Y = permuted(Y, perm_y)
    zx, a, b = X.element("0"), X.element("a"), X.element("b")
    zy, c = Y.element("0"), Y.element("c")
    fmap = [0] * X.size
    fmap[zx], fmap[a], fmap[b] = zy, zy, c
    XY, _, _ = product(X, Y)
    m = Y.size
    fy = [fmap[i // m] * m + i % m for i in range(XY.size)]
    checks = []

    # 1. f is a normal epimorphism
    bad = _preservation_failure(X, Y, fmap)
    if bad:
        checks.append(Assertion("f is a normal epimorphism", False,
                                f"f is not a homomorphism: {bad}"))
    else:
        v = is_normal_epi(Homomorphism(X, Y, fmap))
        checks.append(Assertion("f is a normal epimorphism", v.holds,
                                "normal" if v else f"not normal, witness {v.witness}"))

    # 2. f x 1_Y is not normal
    YY = product(Y, Y)[0]
    if not is_homomorphism(XY, YY, fy):
        checks.append(Assertion("f x 1_Y is not normal", False,
                                "f x 1_Y is not a homomorphism, so normality is undefined"))
    else:
        v = is_normal_epi(Homomorphism(XY, YY, fy))
        checks.append(Assertion("f x 1_Y is not normal", not v.holds,
                                f"witness {_pair_labels(XY, v.witness)}" if not v else "it is normal"))

    # 3. ((a,c),(b,c)) in Eq(f x 1_Y) but not in Cg((a,0),(0,0))
    p, q = a * m + c, b * m + c
    in_eq = fy[p] == fy[q]
    C, _ = congruence_generated(XY, [(a * m + zy, zx * m + zy)], trace=False)
    in_c = C.related(p, q)
    checks.append(Assertion(
        "((a,c),(b,c)) in Eq(f x 1_Y) minus Cg((a,0),(0,0))", in_eq and not in_c,
        f"in Eq(f x 1_Y): {in_eq}; in Cg((a,0),(0,0)): {in_c}"))

    # 4. X is subtractive
    s = find_subtraction(X)
    checks.append(Assertion("X has a subtraction term", s is not None,
                            format_term(s, ("x", "y")) if s is not None else "none in the binary clone"))

    # 5. decide_P(X) = false
    d = decide_P(X)
    checks.append(Assertion("the variety of X fails (P)", not d.holds,
                            "decision procedure: " + ("holds" if d.holds else "fails")))

    corrected, instance = _corrected_instance(X, Y, a, b, c)
    return CounterexampleReport(checks, corrected, (XY.label(p), XY.label(q)),
                                {"X": X.size, "Y": Y.size, "XxY": XY.size,
                                 "Cg((a,0),(0,0)) classes": C.partition.num_blocks()},
                                instance)


def _pair_labels(A: FiniteAlgebra, pair):
    return tuple(A.label(x) for x in pair) if pair is not None else None


def _corrected_instance(X, Y, a, b, c):
    """``q: X -> X/Cg(a,b)`` times ``1_Y`` against the pair ``(a,0), (b,0)``."""
    T = free_algebra(X, 1, ("t",))
    pair1 = ParallelPair(hom_from_free(T, X, [a]), hom_from_free(T, X, [b]))
    one = trivial(X.signature)
    pair2 = ParallelPair(zero_map(one, Y), zero_map(one, Y))
    verdict = check_P_instance(pair1, pair2)
    XY = product(X, Y)[0]
    expected = (a * Y.size + c, b * Y.size + c)
    ok = not verdict.holds and tuple(sorted(verdict.witness)) == tuple(sorted(expected))
    theta, _ = congruence_generated(X, [(a, b)], trace=False)
    detail = (f"Cg(a,b) on X has blocks {[[X.label(i) for i in blk] for blk in theta.blocks()]}; "
              f"q x 1_Y coequalizes the product pair: {verdict.holds}; "
              f"least witness {_pair_labels(XY, verdict.witness)}")
    return Assertion("q x 1_Y is not the coequalizer of (a,0), (b,0)", ok, detail), (
        pair1, pair2, verdict)
