"""Finite algebras, homomorphisms and the basic constructions on them.

Carriers are always ``0..n-1``. Element names exist only as optional labels
for input/output. Operation tables are numpy arrays of shape ``(n,) * arity``;
their row-major flattening is the on-disk format.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import AlgebraError, NotHomomorphismError, NotPointedError, SignatureMismatch
from .relations import Congruence, Partition, is_compatible

MAX_ARITY = 4


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((str(s), int(k)) for s, k in self.symbols))
        names = [s for s, _ in self.symbols]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate symbol names in {names}")
        for s, k in self.symbols:
            if not 0 <= k <= MAX_ARITY:
                raise AlgebraError(f"symbol {s!r}: arity {k} outside 0..{MAX_ARITY}")

    @cached_property
    def arities(self) -> dict[str, int]:
        return dict(self.symbols)

    @property
    def constants(self) -> list[str]:
        return [s for s, k in self.symbols if k == 0]

    @property
    def operations(self) -> list[tuple[str, int]]:
        return [(s, k) for s, k in self.symbols if k > 0]

    def __iter__(self):
        return iter(self.symbols)


class FiniteAlgebra:
    """An algebra on ``0..size-1`` given by total operation tables.

    ``tables`` maps each symbol to a nested or flat array; flat arrays are read in
    row-major order, ``index(args) = sum(args[i] * n**(arity-1-i))``.
    """

    def __init__(self, signature: Signature | Iterable, size: int, tables: Mapping,
                 name: str = "A", labels: Sequence[str] | None = None):
        if not isinstance(signature, Signature):
            signature = Signature(tuple(signature))
        if size < 0:
            raise AlgebraError("size must be nonnegative")
        if size == 0 and signature.constants:
            raise AlgebraError("an algebra with constants cannot be empty")
        self.signature = signature
        self.size = int(size)
        self.name = name
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != size:
                raise AlgebraError(f"{name}: {len(labels)} labels for {size} elements")
        self.labels = labels
        self._tables: dict[str, np.ndarray] = {}
        for sym, arity in signature.symbols:
            if sym not in tables:
                raise AlgebraError(f"{name}: missing table for {sym!r}")
            t = np.asarray(tables[sym], dtype=np.int64)
            if t.size != size ** arity:
                raise AlgebraError(
                    f"{name}: table for {sym!r} has {t.size} entries, expected {size ** arity}")
            t = t.reshape((size,) * arity).copy()
            if t.size and (t.min() < 0 or t.max() >= size):
                raise AlgebraError(f"{name}: table for {sym!r} has entries outside 0..{size - 1}")
            t.setflags(write=False)
            self._tables[sym] = t
        extra = set(tables) - set(self._tables)
        if extra:
            raise AlgebraError(f"{name}: tables for unknown symbols {sorted(extra)}")
        self._flat = {s: t.ravel().tolist() for s, t in self._tables.items()}

    # -- access -------------------------------------------------------------

    def table(self, symbol: str) -> np.ndarray:
        return self._tables[symbol]

    def flat(self, symbol: str) -> list[int]:
        return self._flat[symbol]

    def op(self, symbol: str, *args: int) -> int:
        t = self._flat[symbol]
        i = 0
        for a in args:
            i = i * self.size + a
        return t[i]

    @property
    def constants(self) -> dict[str, int]:
        return {s: int(self._tables[s]) for s in self.signature.constants}

    @cached_property
    def zero(self) -> int | None:
        """The zero element if the algebra is pointed, else ``None``.

        Pointed means: at least one constant, and the subalgebra generated by the
        empty set has exactly one element (so all constant terms agree).
        """
        if not self.signature.constants:
            return None
        closed = subalgebra_generated(self, ())
        return next(iter(closed)) if len(closed) == 1 else None

    @property
    def is_pointed(self) -> bool:
        return self.zero is not None

    def require_pointed(self) -> int:
        if self.zero is None:
            raise NotPointedError(f"{self.name} is not pointed")
        return self.zero

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def element(self, label: str) -> int:
        if self.labels and label in self.labels:
            return self.labels.index(label)
        return int(label)

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name!r}, size={self.size})"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (isinstance(other, FiniteAlgebra) and self.signature == other.signature
                and self.size == other.size
                and all(np.array_equal(self._tables[s], other._tables[s]) for s in self._tables))

    def __hash__(self) -> int:
        return hash((self.signature, self.size,
                     tuple(self._tables[s].tobytes() for s, _ in self.signature.symbols)))

    def renamed(self, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(self.signature, self.size, self._tables, name, self.labels)


def same_signature(*algebras: FiniteAlgebra) -> Signature:
    sig = algebras[0].signature
    for a in algebras[1:]:
        if a.signature != sig:
            raise SignatureMismatch(f"signatures of {algebras[0].name} and {a.name} differ")
    return sig


def from_functions(signature, size: int, funcs: Mapping, name="A", labels=None) -> FiniteAlgebra:
    """Build an algebra from Python callables (constants may be given as ints)."""
    if not isinstance(signature, Signature):
        signature = Signature(tuple(signature))
    tables = {}
    for sym, arity in signature.symbols:
        f = funcs[sym]
        if arity == 0:
            tables[sym] = f() if callable(f) else f
        else:
            tables[sym] = [f(*args) for args in itertools.product(range(size), repeat=arity)]
    return FiniteAlgebra(signature, size, tables, name, labels)


def trivial(signature, name="1") -> FiniteAlgebra:
    """The one-element algebra of a signature."""
    if not isinstance(signature, Signature):
        signature = Signature(tuple(signature))
    return FiniteAlgebra(signature, 1, {s: [0] for s, _ in signature.symbols}, name, ["0"])


def permuted(alg: FiniteAlgebra, perm: Sequence[int], name=None) -> FiniteAlgebra:
    """Isomorphic copy in which element ``i`` becomes ``perm[i]``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.argsort(perm)
    tables = {}
    for sym, arity in alg.signature.symbols:
        t = alg.table(sym)
        tables[sym] = perm[t[np.ix_(*([inv] * arity))]] if arity else perm[t]
    labels = None
    if alg.labels:
        labels = [alg.labels[i] for i in inv]
    return FiniteAlgebra(alg.signature, alg.size, tables, name or alg.name, labels)


# -- homomorphisms ----------------------------------------------------------

def _map_preserves(source: FiniteAlgebra, target: FiniteAlgebra, m: np.ndarray) -> bool:
    for sym, arity in source.signature.symbols:
        ts, tt = source.table(sym), target.table(sym)
        if arity == 0:
            if m[ts] != tt:
                return False
        elif source.size and not np.array_equal(m[ts], tt[np.ix_(*([m] * arity))]):
            return False
    return True


def is_homomorphism(source: FiniteAlgebra, target: FiniteAlgebra, mapping: Sequence[int]) -> bool:
    if source.signature != target.signature or len(mapping) != source.size:
        return False
    m = np.asarray(mapping, dtype=np.int64)
    if m.size and (m.min() < 0 or m.max() >= target.size):
        return False
    return _map_preserves(source, target, m)


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if not is_homomorphism(self.source, self.target, self.map):
            raise NotHomomorphismError(
                f"map {self.source.name} -> {self.target.name} is not a homomorphism")

    def __call__(self, a: int) -> int:
        return self.map[a]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Homomorphism) and self.map == other.map
                and self.source == other.source and self.target == other.target)

    def __hash__(self) -> int:
        return hash(self.map)

    def __repr__(self) -> str:
        return f"Homomorphism({self.source.name} -> {self.target.name}, {list(self.map)})"

    def after(self, other: "Homomorphism") -> "Homomorphism":
        """The composite ``self o other``."""
        if other.target != self.source:
            raise AlgebraError("maps are not composable")
        return Homomorphism(other.source, self.target, tuple(self.map[x] for x in other.map))

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.size

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def image(self) -> frozenset:
        return frozenset(self.map)


def identity(alg: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(alg, alg, tuple(range(alg.size)))


def zero_map(source: FiniteAlgebra, target: FiniteAlgebra) -> Homomorphism:
    """The constant map onto the zero of a pointed target."""
    z = target.require_pointed()
    return Homomorphism(source, target, (z,) * source.size)


def _generating_plan(alg: FiniteAlgebra):
    """A small generating set and a build order for the rest of the carrier.

    Returns ``(gens, steps)`` where each step is ``(element, symbol, args)`` with
    every argument produced earlier.
    """
    known: dict[int, None] = {}
    steps = []

    def close():
        changed = True
        while changed:
            changed = False
            for sym, arity in alg.signature.symbols:
                flat = alg.flat(sym)
                for args in itertools.product(list(known), repeat=arity):
                    i = 0
                    for a in args:
                        i = i * alg.size + a
                    v = flat[i]
                    if v not in known:
                        known[v] = None
                        steps.append((v, sym, args))
                        changed = True

    gens = []
    close()
    for e in range(alg.size):
        if e not in known:
            gens.append(e)
            known[e] = None
            close()
    return gens, steps


def homomorphisms(source: FiniteAlgebra, target: FiniteAlgebra) -> Iterator[Homomorphism]:
    """Enumerate every homomorphism ``source -> target``, in lexicographic order of generator images."""
    same_signature(source, target)
    gens, steps = _generating_plan(source)
    found = []
    for images in itertools.product(range(target.size), repeat=len(gens)):
        m = [-1] * source.size
        for g, v in zip(gens, images):
            m[g] = v
        ok = True
        for e, sym, args in steps:
            v = target.op(sym, *(m[a] for a in args))
            if m[e] == -1:
                m[e] = v
            elif m[e] != v:
                ok = False
                break
        if ok and _map_preserves(source, target, np.asarray(m, dtype=np.int64)):
            found.append(tuple(m))
    for m in sorted(found):
        yield Homomorphism(source, target, m)


# -- constructions ----------------------------------------------------------

def product(A: FiniteAlgebra, B: FiniteAlgebra, name: str | None = None):
    """``(A x B, pi1, pi2)``; the pair ``(a, b)`` has index ``a * |B| + b``."""
    sig = same_signature(A, B)
    n, m = A.size, B.size
    ai = np.repeat(np.arange(n), m)
    bi = np.tile(np.arange(m), n)
    tables = {}
    for sym, arity in sig.symbols:
        ta, tb = A.table(sym), B.table(sym)
        if arity == 0:
            tables[sym] = int(ta) * m + int(tb)
            continue
        grids = np.ix_(*([np.arange(n * m)] * arity))
        ra = ta[tuple(ai[g] for g in grids)]
        rb = tb[tuple(bi[g] for g in grids)]
        tables[sym] = ra * m + rb
    labels = [f"({A.label(a)},{B.label(b)})" for a in range(n) for b in range(m)]
    P = FiniteAlgebra(sig, n * m, tables, name or f"{A.name}x{B.name}", labels)
    pi1 = Homomorphism(P, A, tuple(ai.tolist()))
    pi2 = Homomorphism(P, B, tuple(bi.tolist()))
    return P, pi1, pi2


def pair_index(a: int, b: int, B: FiniteAlgebra) -> int:
    return a * B.size + b


def pairing(f: Homomorphism, g: Homomorphism, prod) -> Homomorphism:
    """The map ``(f, g)`` into ``prod = product(f.target, g.target)``."""
    P, pi1, pi2 = prod
    if f.source != g.source:
        raise AlgebraError("pairing needs a common source")
    m = pi2.target.size
    return Homomorphism(f.source, P, tuple(a * m + b for a, b in zip(f.map, g.map)))


def product_map(f: Homomorphism, g: Homomorphism, source_prod=None, target_prod=None) -> Homomorphism:
    """``f x g`` between the canonical products."""
    S = source_prod or product(f.source, g.source)
    T = target_prod or product(f.target, g.target)
    pi1, pi2 = S[1], S[2]
    return pairing(f.after(pi1), g.after(pi2), T)


def subalgebra_generated(A: FiniteAlgebra, seed: Iterable[int]) -> frozenset:
    """Least subset containing ``seed`` and the constants, closed under all operations."""
    current = set()
    for e in seed:
        if not 0 <= e < A.size:
            raise AlgebraError(f"element {e} outside carrier of {A.name}")
        current.add(int(e))
    ops = A.signature.symbols
    frontier = set(current)
    first = True
    while first or frontier:
        new = set()
        elems = sorted(current)
        for sym, arity in ops:
            flat = A.flat(sym)
            if arity == 0:
                if first:
                    new.add(flat[0])
                continue
            for args in itertools.product(elems, repeat=arity):
                if not first and not any(a in frontier for a in args):
                    continue
                i = 0
                for a in args:
                    i = i * A.size + a
                new.add(flat[i])
        new -= current
        current |= new
        frontier = new
        first = False
    return frozenset(current)


def subalgebra(A: FiniteAlgebra, elements: Iterable[int], name: str | None = None):
    """The subalgebra on a closed subset, with its inclusion map."""
    elems = sorted(set(elements))
    index = {e: i for i, e in enumerate(elems)}
    if set(subalgebra_generated(A, elems)) != set(elems):
        raise AlgebraError("subset is not closed under the operations")
    tables = {}
    arr = np.asarray(elems, dtype=np.int64)
    lookup = np.full(A.size, -1, dtype=np.int64)
    lookup[arr] = np.arange(len(elems))
    for sym, arity in A.signature.symbols:
        t = A.table(sym)
        tables[sym] = lookup[t[np.ix_(*([arr] * arity))]] if arity else index[int(t)]
    labels = [A.label(e) for e in elems]
    S = FiniteAlgebra(A.signature, len(elems), tables, name or f"sub({A.name})", labels)
    return S, Homomorphism(S, A, tuple(elems))


def quotient(A: FiniteAlgebra, theta: Congruence | Partition, name: str | None = None):
    """``(A/theta, q)``; classes are indexed in order of their least element."""
    part = theta.partition if isinstance(theta, Congruence) else theta
    if not is_compatible(A, part):
        raise AlgebraError("relation is not compatible with the operations")
    cls = np.asarray(part.class_index(), dtype=np.int64)
    reps = np.asarray(sorted(set(part.rep)), dtype=np.int64)
    tables = {}
    for sym, arity in A.signature.symbols:
        t = A.table(sym)
        tables[sym] = cls[t[np.ix_(*([reps] * arity))]] if arity else int(cls[int(t)])
    labels = None
    if A.labels:
        labels = ["{" + ",".join(A.label(e) for e in b) + "}" for b in part.blocks()]
    Q = FiniteAlgebra(A.signature, len(reps), tables, name or f"{A.name}/~", labels)
    return Q, Homomorphism(A, Q, tuple(cls.tolist()))


def kernel_congruence(f: Homomorphism) -> Congruence:
    return Congruence(f.source, Partition.from_labels(f.map))


@dataclass(frozen=True, eq=False)
class PullbackAlgebra:
    left: Homomorphism
    right: Homomorphism
    algebra: FiniteAlgebra
    carrier: tuple  # (a, b) pairs, in lexicographic order
    p1: Homomorphism
    p2: Homomorphism

    @cached_property
    def index(self) -> dict:
        return {ab: i for i, ab in enumerate(self.carrier)}

    def __len__(self) -> int:
        return len(self.carrier)


def pullback(f: Homomorphism, g: Homomorphism, name: str | None = None) -> PullbackAlgebra:
    """``{(a, b) | f(a) = g(b)}`` with coordinatewise operations."""
    if f.target != g.target:
        raise AlgebraError("pullback needs a common codomain")
    A, B = f.source, g.source
    sig = same_signature(A, B)
    by_image: dict[int, list[int]] = {}
    for b in range(B.size):
        by_image.setdefault(g.map[b], []).append(b)
    carrier = tuple((a, b) for a in range(A.size) for b in by_image.get(f.map[a], ()))
    if not carrier and sig.constants:
        raise AlgebraError("empty pullback in a signature with constants")
    index = {ab: i for i, ab in enumerate(carrier)}
    ca = np.asarray([a for a, _ in carrier], dtype=np.int64)
    cb = np.asarray([b for _, b in carrier], dtype=np.int64)
    k = len(carrier)
    tables = {}
    for sym, arity in sig.symbols:
        ta, tb = A.table(sym), B.table(sym)
        if arity == 0:
            tables[sym] = index[(int(ta), int(tb))]
            continue
        grids = np.ix_(*([np.arange(k)] * arity))
        ra = ta[tuple(ca[gr] for gr in grids)]
        rb = tb[tuple(cb[gr] for gr in grids)]
        # encode pairs and look them up; closure is guaranteed since f, g are homomorphisms
        codes = ra * B.size + rb
        lookup = np.full(A.size * B.size, -1, dtype=np.int64)
        lookup[ca * B.size + cb] = np.arange(k)
        tables[sym] = lookup[codes]
    labels = [f"({A.label(a)},{B.label(b)})" for a, b in carrier]
    P = FiniteAlgebra(sig, k, tables, name or f"{A.name}x_{f.target.name}{B.name}", labels)
    p1 = Homomorphism(P, A, tuple(ca.tolist()))
    p2 = Homomorphism(P, B, tuple(cb.tolist()))
    return PullbackAlgebra(f, g, P, carrier, p1, p2)
