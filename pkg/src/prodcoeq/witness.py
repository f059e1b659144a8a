"""Independent re-verification of the witnesses carried by reports.

Nothing here uses the union-find engine or the free-algebra generator: congruences
are recomputed as boolean relation matrices closed under symmetry, transitivity
and one-position operation substitution, and term operations are evaluated one
tuple at a time.
"""
from __future__ import annotations

import itertools
from typing import Mapping

import numpy as np

from .algebra import FiniteAlgebra
from .errors import AlgebraError
from .io import (FormatError, algebra_from_json, hom_from_json, pair_from_json,
                 point_from_json)
from .terms import eval_term, from_prefix

WITNESS_TYPES = ("normal-epi", "p-instance", "local-instance", "terms", "term-absent")


def naive_congruence(A: FiniteAlgebra, pairs) -> np.ndarray:
    """The generated congruence as an ``n x n`` boolean matrix."""
    n = A.size
    R = np.eye(n, dtype=bool)
    for a, b in pairs:
        R[a, b] = True
    moved = [(np.moveaxis(A.table(s), i, 0).reshape(n, -1))
             for s, k in A.signature.operations for i in range(k)]
    while True:
        old = R.copy()
        R |= R.T
        R = (R.astype(np.int64) @ R.astype(np.int64)) > 0
        x, y = np.nonzero(R)
        for T in moved:
            R[T[x].ravel(), T[y].ravel()] = True
        if np.array_equal(R, old):
            return R


def naive_clone(A: FiniteAlgebra, k: int, limit: int = 200_000) -> set:
    """All k-ary term operations as value tuples over ``A^k`` (lexicographic points)."""
    pts = list(itertools.product(range(A.size), repeat=k))
    found = {tuple(p[i] for p in pts) for i in range(k)}
    found |= {(int(A.table(s)),) * len(pts) for s in A.signature.constants}
    ops = A.signature.operations
    frontier = set(found)
    while frontier:
        new = set()
        for sym, arity in ops:
            for args in itertools.product(found, repeat=arity):
                if not any(a in frontier for a in args):
                    continue
                val = tuple(A.op(sym, *col) for col in zip(*args))
                if val not in found and val not in new:
                    new.add(val)
        found |= new
        frontier = new
        if len(found) > limit:
            raise AlgebraError("clone too large for the naive validator")
    return found


def _algebras(doc: Mapping) -> dict:
    algs = doc.get("algebras")
    if not isinstance(algs, list):
        raise FormatError("witness: field 'algebras' must be an array of algebra objects")
    out = {}
    for a in algs:
        A = algebra_from_json(a)
        out[A.name] = A
    return out


def _coeq_matrix(u, v) -> np.ndarray:
    return naive_congruence(u.target, [(a, b) for a, b in zip(u.map, v.map)])


def _validate_normal_epi(doc, algs) -> tuple[bool, str]:
    f = hom_from_json(doc["map"], algs, "witness.map")
    a, b = doc["pair"]
    zs, zt = f.source.require_pointed(), f.target.require_pointed()
    R = naive_congruence(f.source, [(k, zs) for k in range(f.source.size) if f.map[k] == zt])
    ok = f.map[a] == f.map[b] and not R[a, b]
    return ok, f"f({a}) = f({b}): {f.map[a] == f.map[b]}; related by the kernel-generated congruence: {bool(R[a, b])}"


def _validate_p_instance(doc, algs) -> tuple[bool, str]:
    u1, v1 = pair_from_json(doc["pair1"], algs, "witness.pair1")
    u2, v2 = pair_from_json(doc["pair2"], algs, "witness.pair2")
    X, Y = u1.target, u2.target
    m = Y.size
    i, j = doc["pair"]
    K1, K2 = _coeq_matrix(u1, v1), _coeq_matrix(u2, v2)
    prod = _naive_product(X, Y)
    gens = [(a1 * m + a2, b1 * m + b2) for a1, b1 in zip(u1.map, v1.map)
            for a2, b2 in zip(u2.map, v2.map)]
    R = naive_congruence(prod, gens)
    in_kernel = bool(K1[i // m, j // m] and K2[i % m, j % m])
    in_coeq = bool(R[i, j])
    return in_kernel != in_coeq, f"in Eq(q1 x q2): {in_kernel}; in the coequalizer congruence: {in_coeq}"


def _naive_product(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    m = B.size
    tables = {}
    for sym, k in A.signature.symbols:
        if k == 0:
            tables[sym] = int(A.table(sym)) * m + int(B.table(sym))
            continue
        tables[sym] = [A.op(sym, *(x // m for x in args)) * m + B.op(sym, *(x % m for x in args))
                       for args in itertools.product(range(A.size * m), repeat=k)]
    return FiniteAlgebra(A.signature, A.size * m, tables, f"{A.name}x{B.name}")


def _validate_local_instance(doc, algs) -> tuple[bool, str]:
    points = {name: point_from_json(p, algs, f"witness.points.{name}")
              for name, p in doc["points"].items()}

    def morphisms(key):
        d = doc[key]
        src, tgt = points[d["source"]], points[d["target"]]
        return src, tgt, d["u"], d["v"]

    C1, A1, u1, v1 = morphisms("pair1")
    C2, A2, u2, v2 = morphisms("pair2")
    carrier = [(a1, a2) for a1 in range(A1.total.size) for a2 in range(A2.total.size)
               if A1.p.map[a1] == A2.p.map[a2]]
    index = {c: i for i, c in enumerate(carrier)}
    ops = {}
    for sym, k in A1.total.signature.symbols:
        ops[sym] = [index[(A1.total.op(sym, *(carrier[x][0] for x in args)),
                           A2.total.op(sym, *(carrier[x][1] for x in args)))]
                    for args in itertools.product(range(len(carrier)), repeat=k)]
    P = FiniteAlgebra(A1.total.signature, len(carrier), ops, "pullback")
    gens = [(index[(u1[c1], u2[c2])], index[(v1[c1], v2[c2])])
            for c1 in range(C1.total.size) for c2 in range(C2.total.size)
            if C1.p.map[c1] == C2.p.map[c2]]
    R = naive_congruence(P, gens)
    K1 = naive_congruence(A1.total, list(zip(u1, v1)))
    K2 = naive_congruence(A2.total, list(zip(u2, v2)))
    (x1, x2), (y1, y2) = (tuple(t) for t in doc["pair"])
    in_kernel = bool(K1[x1, y1] and K2[x2, y2])
    in_coeq = bool(R[index[(x1, x2)], index[(y1, y2)]])
    return in_kernel != in_coeq, f"in the product kernel: {in_kernel}; in the coequalizer congruence: {in_coeq}"


def _validate_terms(doc, algs) -> tuple[bool, str]:
    A = algs[doc["algebra"]]
    w = doc["terms"]
    kind = w["kind"]
    m = len(w["b"])
    sig = A.signature
    b = [from_prefix(t, ("x", "y"), sig) for t in w["b"]]
    c_names = ("z",) if kind == "P" else ("u", "v")
    c = [from_prefix(t, c_names, sig) for t in w["c"]]
    p = [from_prefix(t, [f"v{i}" for i in range(m + 2)], sig) for t in w["p"]]
    if len(c) != m or not p:
        return False, "b, c and p have inconsistent lengths"
    E = range(A.size)
    for x, y in itertools.product(E, E):
        bs = [eval_term(A, t, [x, y]) for t in b]
        f = [eval_term(A, t, [x, y, *bs]) for t in p]
        g = [eval_term(A, t, [y, x, *bs]) for t in p]
        if f[0] != x or g[-1] != y or any(g[i] != f[i + 1] for i in range(len(p) - 1)):
            return False, f"chain identities fail at x={x}, y={y}"
    if kind == "P":
        zero = A.require_pointed()
        for z in E:
            cs = [eval_term(A, t, [z]) for t in c]
            if any(eval_term(A, t, [zero, zero, *cs]) != z for t in p):
                return False, f"p_i(0,0,c(z)) = z fails at z={z}"
    else:
        for u, v in itertools.product(E, E):
            cs = [eval_term(A, t, [u, v]) for t in c]
            if any(eval_term(A, t, [u, u, *cs]) != v for t in p):
                return False, f"p_i(u,u,c(u,v)) = v fails at u={u}, v={v}"
        for z in E:
            if any(eval_term(A, bt, [z, z]) != eval_term(A, ct, [z, z]) for bt, ct in zip(b, c)):
                return False, f"b_j(z,z) = c_j(z,z) fails at z={z}"
    return True, f"all identities hold (m={m}, n={len(p)})"


def _validate_term_absent(doc, algs) -> tuple[bool, str]:
    A = algs[doc["algebra"]]
    kind = doc["kind"]
    k = 2 if kind == "subtraction" else 3
    pts = list(itertools.product(range(A.size), repeat=k))
    clone = naive_clone(A, k)
    zero = A.require_pointed() if kind == "subtraction" else None

    def satisfies(vals):
        f = dict(zip(pts, vals))
        if kind == "malcev":
            return all(f[(x, y, y)] == x and f[(y, y, x)] == x for x, y in itertools.product(range(A.size), repeat=2))
        if kind == "majority":
            return all(f[(x, x, y)] == x and f[(x, y, x)] == x and f[(y, x, x)] == x
                       for x, y in itertools.product(range(A.size), repeat=2))
        return all(f[(x, zero)] == x and f[(x, x)] == zero for x in range(A.size))

    hits = sum(1 for vals in clone if satisfies(vals))
    return hits == 0, f"{len(clone)} term operations of arity {k}; {hits} satisfy the identities"


_VALIDATORS = {
    "normal-epi": _validate_normal_epi,
    "p-instance": _validate_p_instance,
    "local-instance": _validate_local_instance,
    "terms": _validate_terms,
    "term-absent": _validate_term_absent,
}


def validate_witness(doc: Mapping) -> tuple[bool, str]:
    """Re-check a witness document; returns ``(confirmed, explanation)``."""
    if not isinstance(doc, Mapping):
        raise FormatError("witness must be a JSON object")
    for key in ("witness", "terms"):
        inner = doc.get(key)
        if isinstance(inner, Mapping) and "type" in inner:
            doc = inner
            break
    kind = doc.get("type")
    if kind not in _VALIDATORS:
        raise FormatError(f"witness: field 'type' must be one of {list(WITNESS_TYPES)}")
    try:
        return _VALIDATORS[kind](doc, _algebras(doc))
    except (KeyError, TypeError, ValueError, IndexError) as e:
        if isinstance(e, AlgebraError):
            raise
        raise FormatError(f"witness: malformed {kind} document ({e!r})") from None
