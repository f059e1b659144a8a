"""Relational checkers: egg-box, shifting lemma and their variants.

Each checker returns a :class:`Verdict`; a failing verdict carries the
lexicographically least violating tuple of elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .algebra import FiniteAlgebra, PullbackAlgebra
from .errors import AlgebraError
from .relations import Congruence


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Any = None
    applicable: bool = True

    def __bool__(self) -> bool:
        return self.holds


PASS = Verdict(True)


def egg_box_check(A: FiniteAlgebra, B: FiniteAlgebra, C: Congruence) -> Verdict:
    """``(x,0) C (y,0)`` implies ``(x,z) C (y,z)`` for all x, y in A and z in B.

    ``C`` lives on ``product(A, B)``. The witness is ``(x, y, z)``.
    """
    A.require_pointed()
    zb = B.require_pointed()
    m = B.size
    if C.algebra.size != A.size * m:
        raise AlgebraError("congruence does not live on A x B")
    for x in range(A.size):
        for y in range(A.size):
            if x == y or not C.related(x * m + zb, y * m + zb):
                continue
            for z in range(m):
                if not C.related(x * m + z, y * m + z):
                    return Verdict(False, (x, y, z))
    return PASS


def shifting_lemma_check(A: FiniteAlgebra, R: Congruence, S: Congruence, T: Congruence) -> Verdict:
    """Gumm's shifting lemma for one triple of congruences.

    Requires ``R meet S <= T`` (otherwise the verdict is marked not applicable).
    Checks: x R y, w R z, y S z, x S w, y T z imply x T w. Witness ``(x, y, z, w)``.
    """
    if not (R.meet(S) <= T):
        return Verdict(True, applicable=False)
    n = A.size
    rblocks = {}
    for i in range(n):
        rblocks.setdefault(R.partition.rep[i], []).append(i)
    worst = None
    for y in range(n):
        for z in range(n):
            if not (S.related(y, z) and T.related(y, z)):
                continue
            for x in rblocks[R.partition.rep[y]]:
                for w in rblocks[R.partition.rep[z]]:
                    if S.related(x, w) and not T.related(x, w):
                        cand = (x, y, z, w)
                        if worst is None or cand < worst:
                            worst = cand
    return PASS if worst is None else Verdict(False, worst)


def weak_shifting_check(A: FiniteAlgebra, B: FiniteAlgebra, R: Congruence, S: Congruence) -> Verdict:
    """Weak shifting on ``A x B``, with ``Eq(pi1) meet R <= S`` as precondition.

    If ``(a,c)`` and ``(d,f)`` are related by both R and S, and ``(a,b) R (d,e)``,
    then ``(a,b) S (d,e)``. Witness ``(a, b, c, d, e, f)``.
    """
    m = B.size
    n = A.size
    if R.algebra.size != n * m:
        raise AlgebraError("congruences do not live on A x B")
    for p in range(n * m):
        for q in range(n * m):
            if p // m == q // m and R.related(p, q) and not S.related(p, q):
                return Verdict(True, applicable=False)
    for a in range(n):
        for d in range(n):
            for b in range(m):
                for e in range(m):
                    p, q = a * m + b, d * m + e
                    if not R.related(p, q) or S.related(p, q):
                        continue
                    for c in range(m):
                        for f in range(m):
                            p2, q2 = a * m + c, d * m + f
                            if R.related(p2, q2) and S.related(p2, q2):
                                return Verdict(False, (a, b, c, d, e, f))
    return PASS


def local_egg_box_check(P: PullbackAlgebra, C: Congruence) -> Verdict:
    """``(x,u) C (y,u)`` implies ``(x,v) C (y,v)`` whenever all four pairs lie in P.

    Witness ``(x, y, u, v)`` in the coordinates of the two factors.
    """
    idx = P.index
    by_first: dict[int, list[int]] = {}
    for a, b in P.carrier:
        by_first.setdefault(a, []).append(b)
    for x in sorted(by_first):
        for y in sorted(by_first):
            if x == y:
                continue
            common = sorted(set(by_first[x]) & set(by_first[y]))
            for u in common:
                if not C.related(idx[(x, u)], idx[(y, u)]):
                    continue
                for v in common:
                    if not C.related(idx[(x, v)], idx[(y, v)]):
                        return Verdict(False, (x, y, u, v))
    return PASS
