"""Free algebras of the variety generated by a finite algebra.

The free algebra on ``k`` generators is realized inside the power algebra
``A^(A^k)``: it is the subalgebra generated by the ``k`` projections. Its
elements are exactly the ``k``-ary term operations of ``A`` (the clone slice).

Generation is breadth-first by term depth; within a depth, operation symbols
follow signature order and argument tuples are taken in lexicographic order, so
every element's witness term is minimal in that order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import FiniteAlgebra, Homomorphism
from .errors import CapExceededError
from .terms import App, Term, Var, eval_term, eval_vectorized, format_term

DEFAULT_MAX_FREE_SIZE = 10 ** 6
DEFAULT_NAMES = ("x", "y", "z")
_CHUNK = 1 << 22  # values materialized per chunk


@dataclass(frozen=True, eq=False)
class FreeAlgebra:
    base: FiniteAlgebra
    rank: int
    algebra: FiniteAlgebra
    functions: np.ndarray  # row e = values of element e on A^rank, row-major
    witnesses: tuple
    generators: tuple
    names: tuple

    @property
    def size(self) -> int:
        return self.algebra.size

    @property
    def arity(self) -> int:
        return self.rank

    @property
    def members(self) -> np.ndarray:
        return self.functions

    @cached_property
    def _index(self) -> dict:
        return {row.tobytes(): i for i, row in enumerate(self.functions)}

    def index_of(self, values: Sequence[int]) -> int:
        return self._index[np.asarray(values, dtype=self.functions.dtype).tobytes()]

    @cached_property
    def points(self) -> np.ndarray:
        """Coordinates of the points of ``A^rank``: shape ``(rank, n**rank)``."""
        n = self.base.size
        return np.indices((n,) * self.rank).reshape(self.rank, -1)

    def element_of(self, t: Term) -> int:
        """The element represented by a term over the generators."""
        vals = eval_vectorized(self.base, t, list(self.points))
        return self.index_of(vals)

    @property
    def zero(self) -> int | None:
        return self.algebra.zero

    def term(self, e: int) -> Term:
        return self.witnesses[e]

    def label(self, e: int) -> str:
        return format_term(self.witnesses[e], self.names)


def _encoder(n: int, width: int):
    if width == 0:
        return lambda rows: np.zeros(len(rows), dtype=np.int64)
    if n ** width < 2 ** 62:
        weights = np.asarray([n ** (width - 1 - i) for i in range(width)], dtype=np.int64)
        return lambda rows: rows.astype(np.int64) @ weights
    dt = np.dtype((np.void, width * 8))
    return lambda rows: np.ascontiguousarray(rows.astype(np.int64)).view(dt).ravel()


def free_algebra(A: FiniteAlgebra, k: int, names: Sequence[str] | None = None,
                 max_size: int = DEFAULT_MAX_FREE_SIZE) -> FreeAlgebra:
    """Free algebra of ``V(A)`` on ``k`` generators, with minimal witness terms.

    Raises :class:`CapExceededError` once more than ``max_size`` elements appear.
    """
    if k < 0:
        raise ValueError("rank must be nonnegative")
    names = tuple(names) if names is not None else DEFAULT_NAMES[:k] if k <= 3 else tuple(
        f"x{i}" for i in range(k))
    n = A.size
    width = n ** k
    pts = np.indices((n,) * k).reshape(k, -1) if k else np.zeros((0, 1), dtype=np.int64)
    encode = _encoder(n, width)

    rows: list[np.ndarray] = []
    witnesses: list[Term] = []
    known: dict = {}

    def add(row, term):
        code = encode(row[None, :])[0]
        key = code.tobytes() if isinstance(code, np.void) else int(code)
        if key in known:
            return known[key]
        if len(rows) >= max_size:
            raise CapExceededError(
                f"free algebra of {A.name} on {k} generators exceeds {max_size} elements "
                f"(upper bound {n}^{width})", cap=max_size, required=f">{max_size}")
        known[key] = len(rows)
        rows.append(row)
        witnesses.append(term)
        return known[key]

    generators = tuple(add(pts[i].astype(np.int64), Var(i)) for i in range(k))
    prev_start = 0
    level = 1
    while True:
        level_start = len(rows)
        M0 = level_start
        F = np.asarray(rows, dtype=np.int64).reshape(M0, width) if M0 else np.zeros((0, width), np.int64)
        for sym, arity in A.signature.symbols:
            table = A.table(sym)
            if arity == 0:
                if level == 1:
                    add(np.full(width, int(table), dtype=np.int64), App(sym))
                continue
            if M0 == 0:
                continue
            for tuples in _tuples_with_new(M0, arity, prev_start, width):
                vals = table[tuple(F[tuples[:, j]] for j in range(arity))]
                enc = encode(vals)
                for i in _first_new(enc, known):
                    term = App(sym, tuple(witnesses[t] for t in tuples[i]))
                    add(vals[i], term)
        prev_start = level_start
        if len(rows) == level_start:
            break
        level += 1

    N = len(rows)
    F = np.asarray(rows, dtype=np.int64).reshape(N, width)
    alg = _as_algebra(A, F, witnesses, names, encode, known)
    return FreeAlgebra(A, k, alg, F, tuple(witnesses), generators, names)


def _tuples_with_new(M: int, arity: int, new_start: int, width: int = 1):
    """Argument tuples over ``range(M)`` with some entry ``>= new_start``, lexicographic, chunked."""
    rest = M ** (arity - 1)
    per = max(1, _CHUNK // max(rest * width, 1))
    for lo in range(0, M, per):
        hi = min(M, lo + per)
        grid = np.indices((hi - lo,) + (M,) * (arity - 1)).reshape(arity, -1).T
        grid[:, 0] += lo
        mask = (grid >= new_start).any(axis=1)
        if mask.any():
            yield grid[mask]


def _first_new(enc, known: dict):
    """Indices of the first occurrence of each not-yet-known code, in order."""
    if enc.dtype.kind == "V":
        keys = [e.tobytes() for e in enc]
    else:
        keys = enc.tolist()
    seen = set()
    out = []
    for i, key in enumerate(keys):
        if key not in known and key not in seen:
            seen.add(key)
            out.append(i)
    return out


def _as_algebra(A, F, witnesses, names, encode, known) -> FiniteAlgebra:
    N = len(F)
    tables = {}
    for sym, arity in A.signature.symbols:
        table = A.table(sym)
        if arity == 0:
            key = encode(np.full((1, F.shape[1]), int(table), dtype=np.int64))[0]
            tables[sym] = known[key.tobytes() if isinstance(key, np.void) else int(key)]
            continue
        out = np.empty(N ** arity, dtype=np.int64)
        pos = 0
        for tuples in _tuples_with_new(N, arity, 0, F.shape[1]):
            vals = table[tuple(F[tuples[:, j]] for j in range(arity))]
            enc = encode(vals)
            keys = [e.tobytes() for e in enc] if enc.dtype.kind == "V" else enc.tolist()
            out[pos:pos + len(keys)] = [known[key] for key in keys]
            pos += len(keys)
        tables[sym] = out
    labels = [format_term(w, names) for w in witnesses]
    return FiniteAlgebra(A.signature, N, tables, f"F({','.join(names)})", labels)


def hom_from_free(F: FreeAlgebra, B: FiniteAlgebra, images: Sequence[int]) -> Homomorphism:
    """The homomorphism sending generator ``i`` to ``images[i]``; ``B`` must lie in V(A)."""
    m = tuple(eval_term(B, t, images) for t in F.witnesses)
    return Homomorphism(F.algebra, B, m)
