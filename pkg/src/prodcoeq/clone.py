"""Term finders that search a clone slice exhaustively.

The k-ary term operations of ``A`` form the free algebra of rank k, so the
slice is complete: when no member satisfies the identities, no term does.
Members are scanned in generation order and the first match wins, which makes
the returned witness the least one.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from .algebra import FiniteAlgebra
from .free import DEFAULT_MAX_FREE_SIZE, FreeAlgebra, free_algebra
from .terms import Term, eval_vectorized

CloneSlice = FreeAlgebra

KINDS = ("malcev", "majority", "subtraction")


def clone_slice(A: FiniteAlgebra, k: int, max_size: int = DEFAULT_MAX_FREE_SIZE) -> CloneSlice:
    return free_algebra(A, k, max_size=max_size)


def _first_member(S: CloneSlice, condition: Callable[[np.ndarray], np.ndarray]) -> Term | None:
    ok = condition(S.functions)
    hits = np.flatnonzero(ok)
    return S.witnesses[hits[0]] if len(hits) else None


def _ternary_views(n: int):
    x, y, z = np.indices((n, n, n)).reshape(3, -1)
    return x, y, z


def is_malcev(A: FiniteAlgebra, t: Term) -> bool:
    x, y, z = _ternary_views(A.size)
    g = eval_vectorized(A, t, [x, y, z])
    sel_a, sel_b = y == z, x == y
    return bool(np.array_equal(g[sel_a], x[sel_a]) and np.array_equal(g[sel_b], z[sel_b]))


def is_majority(A: FiniteAlgebra, t: Term) -> bool:
    x, y, z = _ternary_views(A.size)
    m = eval_vectorized(A, t, [x, y, z])
    return all(np.array_equal(m[sel], val[sel])
               for sel, val in ((x == y, x), (x == z, x), (y == z, y)))


def is_subtraction(A: FiniteAlgebra, t: Term) -> bool:
    zero = A.require_pointed()
    n = A.size
    x, y = np.indices((n, n)).reshape(2, -1)
    s = eval_vectorized(A, t, [x, y])
    return bool(np.array_equal(s[y == zero], x[y == zero]) and np.all(s[x == y] == zero))


def find_malcev(A: FiniteAlgebra, max_size: int = DEFAULT_MAX_FREE_SIZE) -> Term | None:
    """A ternary term with ``g(x,y,y) = x = g(y,y,x)``, or None if the clone has none."""
    S = clone_slice(A, 3, max_size)
    x, y, z = S.points
    a, b = y == z, x == y
    t = _first_member(S, lambda F: (F[:, a] == x[a]).all(axis=1) & (F[:, b] == z[b]).all(axis=1))
    return _confirmed(A, t, is_malcev)


def find_majority(A: FiniteAlgebra, max_size: int = DEFAULT_MAX_FREE_SIZE) -> Term | None:
    """A ternary term with ``m(x,x,y) = m(x,y,x) = m(y,x,x) = x``, or None."""
    S = clone_slice(A, 3, max_size)
    x, y, z = S.points

    def cond(F):
        ok = np.ones(len(F), dtype=bool)
        for sel, val in ((x == y, x), (x == z, x), (y == z, y)):
            ok &= (F[:, sel] == val[sel]).all(axis=1)
        return ok

    return _confirmed(A, _first_member(S, cond), is_majority)


def find_subtraction(A: FiniteAlgebra, max_size: int = DEFAULT_MAX_FREE_SIZE) -> Term | None:
    """A binary term with ``s(x,0) = x`` and ``s(x,x) = 0``; A must be pointed."""
    zero = A.require_pointed()
    S = clone_slice(A, 2, max_size)
    x, y = S.points
    a, b = y == zero, x == y
    t = _first_member(S, lambda F: (F[:, a] == x[a]).all(axis=1) & (F[:, b] == zero).all(axis=1))
    return _confirmed(A, t, is_subtraction)


def _confirmed(A, t, check) -> Term | None:
    # re-evaluate the witness term itself rather than trusting the stored table row
    if t is not None and not check(A, t):
        raise AssertionError("clone slice witness does not satisfy its identities")
    return t


FINDERS = {"malcev": find_malcev, "majority": find_majority, "subtraction": find_subtraction}
CHECKERS = {"malcev": is_malcev, "majority": is_majority, "subtraction": is_subtraction}
