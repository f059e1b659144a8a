"""Congruence generation with derivation traces, and congruence enumeration.

The closure runs a worklist over a union-find partition. When two classes
merge, only operation applications with an argument in the smaller class are
re-examined (signature-table congruence closure). Every merge is recorded as
an edge of a proof forest, so any related pair can later be explained as a
chain of one-step links ``t(g, r...) -> t(g', r...)`` where ``(g, g')`` is a
generating pair and ``t`` is a term in which the generator occurs once.
"""
from __future__ import annotations

import itertools
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import AlgebraError
from .relations import Congruence, Partition
from .terms import App, Term, Var

DEFAULT_MAX_ENUMERATION = 12


@dataclass(frozen=True)
class GeneratorStep:
    index: int


@dataclass(frozen=True)
class OperationStep:
    symbol: str
    left: tuple
    right: tuple


@dataclass(frozen=True)
class Derivation:
    """Proof tree for one related pair.

    ``kind`` is one of ``generator``, ``reflexivity``, ``symmetry``,
    ``transitivity`` or ``operation``.
    """
    kind: str
    pair: tuple
    premises: tuple = ()
    generator: int | None = None
    symbol: str | None = None
    via: int | None = None


@dataclass(frozen=True)
class Link:
    """One step ``source -> target`` of a transitivity chain.

    ``context`` has the hole ``Var(0)`` and parameters ``Var(1 + j) = params[j]``.
    With ``forward`` the hole holds ``pairs[generator][0]`` at the source and
    ``pairs[generator][1]`` at the target; otherwise the other way round.
    """
    source: int
    target: int
    context: Term
    params: tuple
    generator: int
    forward: bool


def _shift(t: Term, offset: int) -> Term:
    if isinstance(t, Var):
        return t if t.index == 0 else Var(t.index + offset)
    return App(t.symbol, tuple(_shift(a, offset) for a in t.args))


@dataclass(eq=False)
class DerivationTrace:
    algebra: object
    pairs: tuple
    edges: list = field(default_factory=list)  # (s, t, step) in merge order
    _forest: dict = field(default_factory=dict, repr=False)  # child -> (parent, edge index)
    _link_memo: dict = field(default_factory=dict, repr=False)

    # -- forest maintenance ---------------------------------------------------

    def _add_edge(self, s: int, t: int, step) -> None:
        idx = len(self.edges)
        self.edges.append((s, t, step))
        # reroot s's tree at s, then hang s below t
        node, prev, prev_edge = s, None, None
        while True:
            up = self._forest.get(node)
            if prev is None:
                self._forest.pop(node, None)
            else:
                self._forest[node] = (prev, prev_edge)
            if up is None:
                break
            prev, prev_edge, node = node, up[1], up[0]
        self._forest[s] = (t, idx)

    def _path(self, a: int, b: int):
        """Edges (from, to, edge index) along the forest path a -> b, or None."""
        up_a = [a]
        while up_a[-1] in self._forest:
            up_a.append(self._forest[up_a[-1]][0])
        pos = {x: i for i, x in enumerate(up_a)}
        down = []
        node = b
        while node not in pos:
            if node not in self._forest:
                return None
            parent, e = self._forest[node]
            down.append((parent, node, e))
            node = parent
        lca = node
        path = []
        for x in up_a[:pos[lca]]:
            parent, e = self._forest[x]
            path.append((x, parent, e))
        path.extend(reversed(down))
        return path

    # -- queries ----------------------------------------------------------------

    def related(self, a: int, b: int) -> bool:
        return a == b or self._path(a, b) is not None

    def replay(self) -> Partition:
        """Re-derive the partition from the recorded edges, checking every step."""
        alg = self.algebra
        parent = list(range(alg.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t, step in self.edges:
            if isinstance(step, GeneratorStep):
                if tuple(self.pairs[step.index]) != (s, t):
                    raise AlgebraError(f"edge {s}~{t} misattributes generator {step.index}")
            else:
                if alg.op(step.symbol, *step.left) != s or alg.op(step.symbol, *step.right) != t:
                    raise AlgebraError(f"edge {s}~{t} does not match its operation step")
                if any(find(x) != find(y) for x, y in zip(step.left, step.right)):
                    raise AlgebraError(f"edge {s}~{t} uses unrelated arguments")
            a, b = find(s), find(t)
            if a != b:
                parent[max(a, b)] = min(a, b)
        return Partition.from_labels([find(i) for i in range(alg.size)])

    def explain(self, a: int, b: int) -> Derivation:
        if a == b:
            return Derivation("reflexivity", (a, b))
        path = self._path(a, b)
        if path is None:
            raise AlgebraError(f"{a} and {b} are not related")
        steps = [self._explain_edge(x, y, e) for x, y, e in path]
        out = steps[0]
        for (x, y, _), d in zip(path[1:], steps[1:]):
            out = Derivation("transitivity", (a, y), (out, d), via=x)
        return out

    def _explain_edge(self, x: int, y: int, e: int) -> Derivation:
        s, t, step = self.edges[e]
        if isinstance(step, GeneratorStep):
            d = Derivation("generator", (s, t), generator=step.index)
        else:
            prem = tuple(self.explain(l, r) for l, r in zip(step.left, step.right))
            d = Derivation("operation", (s, t), prem, symbol=step.symbol)
        if (x, y) == (s, t):
            return d
        return Derivation("symmetry", (x, y), (d,))

    def links(self, a: int, b: int) -> list[Link]:
        """A loop-free chain of one-step links from ``a`` to ``b``."""
        key = (a, b)
        if key in self._link_memo:
            return self._link_memo[key]
        if a == b:
            return []
        path = self._path(a, b)
        if path is None:
            raise AlgebraError(f"{a} and {b} are not related")
        chain: list[Link] = []
        for x, y, e in path:
            chain.extend(self._edge_links(x, y, e))
        chain = _drop_loops(chain, a)
        self._link_memo[key] = chain
        return chain

    def _edge_links(self, x: int, y: int, e: int) -> list[Link]:
        s, t, step = self.edges[e]
        if isinstance(step, GeneratorStep):
            return [Link(x, y, Var(0), (), step.index, (x, y) == (s, t))]
        start, end = (step.left, step.right) if (x, y) == (s, t) else (step.right, step.left)
        alg = self.algebra
        k = len(start)
        current = list(start)
        out = []
        for i in range(k):
            for sub in self.links(start[i], end[i]):
                others = [current[j] for j in range(k) if j != i]
                children = []
                pos = 0
                for j in range(k):
                    if j == i:
                        children.append(_shift(sub.context, k - 1))
                    else:
                        children.append(Var(1 + pos))
                        pos += 1
                before = alg.op(step.symbol, *current)
                current[i] = sub.target
                after = alg.op(step.symbol, *current)
                out.append(Link(before, after, App(step.symbol, tuple(children)),
                                tuple(others) + sub.params, sub.generator, sub.forward))
        return out

    def to_json(self) -> list:
        out = []
        for s, t, step in self.edges:
            if isinstance(step, GeneratorStep):
                out.append({"pair": [s, t], "by": "generator", "index": step.index})
            else:
                out.append({"pair": [s, t], "by": "operation", "symbol": step.symbol,
                            "left": list(step.left), "right": list(step.right)})
        return out


def _drop_loops(chain: list[Link], start: int) -> list[Link]:
    seen = {start: 0}
    out: list[Link] = []
    for link in chain:
        if link.target in seen:
            del out[seen[link.target]:]
            seen = {start: 0}
            for i, l in enumerate(out):
                seen[l.target] = i + 1
            continue
        out.append(link)
        seen[link.target] = len(out)
    return out


def congruence_generated(A, pairs: Sequence, *, trace: bool = True):
    """Least congruence of ``A`` containing ``pairs``, with its derivation trace.

    Returns ``(congruence, trace)``; ``trace`` is ``None`` when not requested.
    """
    n = A.size
    pairs = tuple((int(a), int(b)) for a, b in pairs)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise AlgebraError(f"pair ({a}, {b}) outside carrier of {A.name}")
    tr = DerivationTrace(A, pairs) if trace else None
    cls = list(range(n))
    members = [[i] for i in range(n)]
    ops = [(sym, k, A.flat(sym)) for sym, k in A.signature.operations]
    sigtab = {sym: {} for sym, _, _ in ops}
    pending = deque((a, b, GeneratorStep(k)) for k, (a, b) in enumerate(pairs))
    powers = {k: [n ** (k - 1 - i) for i in range(k)] for _, k, _ in ops}

    while pending:
        a, b, step = pending.popleft()
        ca, cb = cls[a], cls[b]
        if ca == cb:
            continue
        if tr is not None:
            tr._add_edge(a, b, step)
        if len(members[ca]) < len(members[cb]):
            ca, cb = cb, ca
        moved = members[cb]
        for e in moved:
            cls[e] = ca
        members[ca].extend(moved)
        members[cb] = []
        for sym, k, flat in ops:
            pw = powers[k]
            touched = set()
            for pos in range(k):
                stride = pw[pos]
                for e in moved:
                    for rest in itertools.product(range(n), repeat=k - 1):
                        idx = e * stride
                        for j, r in enumerate(rest):
                            idx += r * pw[j if j < pos else j + 1]
                        touched.add(idx)
            tab = sigtab[sym]
            for idx in sorted(touched):
                args = _decode(idx, n, k)
                key = 0
                for x in args:
                    key = key * n + cls[x]
                other = tab.get(key)
                if other is None:
                    tab[key] = idx
                    other = key
                if other == idx:
                    continue
                r1, r2 = flat[other], flat[idx]
                if cls[r1] != cls[r2]:
                    pending.append((r1, r2, OperationStep(sym, _decode(other, n, k), args)))

    return Congruence(A, Partition.from_labels(cls)), tr


def _decode(idx: int, n: int, k: int) -> tuple:
    out = [0] * k
    for i in range(k - 1, -1, -1):
        idx, out[i] = divmod(idx, n)
    return tuple(out)


def principal_congruence(A, x: int, y: int, *, trace: bool = True):
    return congruence_generated(A, [(x, y)], trace=trace)


def all_congruences(A, max_size: int = DEFAULT_MAX_ENUMERATION) -> list[Congruence]:
    """Every congruence of ``A``, as joins of principal congruences.

    Sorted by the canonical representative array.
    """
    if A.size > max_size:
        raise AlgebraError(f"{A.name} has {A.size} elements; enumeration bound is {max_size}")
    n = A.size
    principal = {}
    for a in range(n):
        for b in range(a + 1, n):
            theta, _ = congruence_generated(A, [(a, b)], trace=False)
            principal.setdefault(theta.partition, None)
    principal = list(principal)
    seen = {Partition.diagonal(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for q in principal:
                j = p.join(q)
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return [Congruence(A, p) for p in sorted(seen, key=lambda p: p.rep)]


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
