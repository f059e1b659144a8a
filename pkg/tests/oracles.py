"""Slow, obviously-correct reference implementations used only by the tests.

They work on plain Python sets and tuples and share no code with the package
beyond reading operation tables through ``A.op``.
"""
from __future__ import annotations

import itertools


def fixpoint_congruence(A, pairs) -> frozenset:
    """Least congruence containing ``pairs``, as a set of ordered pairs.

    Repeats reflexive closure, symmetric closure, closure under every operation
    on related argument tuples and transitive closure until nothing changes.
    """
    n = A.size
    R = {(a, a) for a in range(n)} | {tuple(p) for p in pairs}
    ops = A.signature.operations
    while True:
        new = set(R)
        new |= {(b, a) for a, b in R}
        for sym, k in ops:
            rel = list(new)
            for choice in itertools.product(rel, repeat=k):
                left = [p[0] for p in choice]
                right = [p[1] for p in choice]
                new.add((A.op(sym, *left), A.op(sym, *right)))
        changed = True
        while changed:
            changed = False
            succ = {}
            for a, b in new:
                succ.setdefault(a, set()).add(b)
            for a, b in list(new):
                for c in succ.get(b, ()):
                    if (a, c) not in new:
                        new.add((a, c))
                        changed = True
        if new == R:
            return frozenset(R)
        R = new


def blocks_of(relation, n) -> list:
    seen, out = set(), []
    for a in range(n):
        if a in seen:
            continue
        blk = sorted(b for b in range(n) if (a, b) in relation)
        seen.update(blk)
        out.append(blk)
    return out


def all_maps(n, m):
    return itertools.product(range(m), repeat=n)


def brute_homomorphisms(A, B) -> list:
    out = []
    for f in all_maps(A.size, B.size):
        ok = True
        for sym, k in A.signature.symbols:
            for args in itertools.product(range(A.size), repeat=k):
                if f[A.op(sym, *args)] != B.op(sym, *(f[x] for x in args)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(f))
    return out


def closure(A, seed) -> frozenset:
    S = set(seed) | {A.op(s) for s in A.signature.constants}
    while True:
        new = set(S)
        for sym, k in A.signature.operations:
            for args in itertools.product(sorted(S), repeat=k):
                new.add(A.op(sym, *args))
        if new == S:
            return frozenset(S)
        S = new


def term_functions(A, k) -> set:
    """All k-ary term operations as value tuples, by naive closure of the projections."""
    pts = list(itertools.product(range(A.size), repeat=k))
    S = {tuple(p[i] for p in pts) for i in range(k)}
    S |= {(A.op(s),) * len(pts) for s in A.signature.constants}
    while True:
        new = set(S)
        for sym, ar in A.signature.operations:
            for args in itertools.product(sorted(S), repeat=ar):
                new.add(tuple(A.op(sym, *col) for col in zip(*args)))
        if new == S:
            return S
        S = new


def is_compatible_partition(A, labels) -> bool:
    for sym, k in A.signature.operations:
        for left in itertools.product(range(A.size), repeat=k):
            for right in itertools.product(range(A.size), repeat=k):
                if all(labels[x] == labels[y] for x, y in zip(left, right)):
                    if labels[A.op(sym, *left)] != labels[A.op(sym, *right)]:
                        return False
    return True


def set_partitions(n):
    """All partitions of range(n) as label lists (restricted growth strings)."""
    def rec(i, labels, top):
        if i == n:
            yield list(labels)
            return
        for c in range(top + 2):
            labels.append(c)
            yield from rec(i + 1, labels, max(top, c))
            labels.pop()
    if n == 0:
        yield []
        return
    yield from rec(1, [0], 0)
