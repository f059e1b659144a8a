"""JSON formats for algebras, maps, pairs, points and congruences.

Algebra files::

    {"name": "Z2", "size": 2, "labels": ["0", "1"],
     "constants": {"0": 0},
     "operations": {"+": {"arity": 2, "table": [0, 1, 1, 0]}}}

Maps refer to algebras by name: ``{"source": "X", "target": "Y", "map": [...]}``.
Loaded signatures list the constants first, then the operations, each in file order.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .algebra import MAX_ARITY, FiniteAlgebra, Homomorphism
from .errors import AlgebraError
from .points import Point
from .relations import Congruence, Partition

MAX_FILE_SIZE = 2 ** 16


class FormatError(AlgebraError):
    """A JSON document does not match the expected format; names the offending field."""


def _field(doc: Mapping, key: str, kind, where: str):
    if not isinstance(doc, Mapping):
        raise FormatError(f"{where}: expected a JSON object")
    if key not in doc:
        raise FormatError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise FormatError(f"{where}: field {key!r} must be an integer")
    if kind is not int and not isinstance(value, kind):
        raise FormatError(f"{where}: field {key!r} has the wrong type")
    return value


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list) or any(isinstance(v, bool) or not isinstance(v, int)
                                          for v in value):
        raise FormatError(f"{where} must be an array of integers")
    return value


def algebra_to_json(A: FiniteAlgebra) -> dict:
    doc: dict[str, Any] = {"name": A.name, "size": A.size}
    if A.labels is not None:
        doc["labels"] = list(A.labels)
    doc["constants"] = A.constants
    doc["operations"] = {s: {"arity": k, "table": A.flat(s)} for s, k in A.signature.operations}
    return doc


def algebra_from_json(doc: Mapping) -> FiniteAlgebra:
    name = _field(doc, "name", str, "algebra")
    where = f"algebra {name!r}"
    size = _field(doc, "size", int, where)
    if not 1 <= size <= MAX_FILE_SIZE:
        raise FormatError(f"{where}: field 'size' must lie in 1..{MAX_FILE_SIZE}")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != size
                               or not all(isinstance(x, str) for x in labels)):
        raise FormatError(f"{where}: field 'labels' must be {size} strings")
    constants = _field(doc, "constants", dict, where) if "constants" in doc else {}
    operations = _field(doc, "operations", dict, where) if "operations" in doc else {}
    symbols, tables = [], {}
    for sym, value in constants.items():
        if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < size:
            raise FormatError(f"{where}: constants.{sym} must be an index below {size}")
        symbols.append((sym, 0))
        tables[sym] = value
    for sym, spec in operations.items():
        w = f"{where}: operations.{sym}"
        arity = _field(spec, "arity", int, w)
        if not 0 <= arity <= MAX_ARITY:
            raise FormatError(f"{w}: field 'arity' must lie in 0..{MAX_ARITY}")
        if sym in tables:
            raise FormatError(f"{w}: symbol also declared as a constant")
        table = _int_list(_field(spec, "table", list, w), f"{w}.table")
        if len(table) != size ** arity:
            raise FormatError(f"{w}.table: expected {size ** arity} entries, got {len(table)}")
        if any(not 0 <= v < size for v in table):
            raise FormatError(f"{w}.table: entries must lie in 0..{size - 1}")
        symbols.append((sym, arity))
        tables[sym] = table
    return FiniteAlgebra(symbols, size, tables, name, labels)


def hom_to_json(f: Homomorphism) -> dict:
    return {"source": f.source.name, "target": f.target.name, "map": list(f.map)}


def _algebra_named(name, algebras: Mapping[str, FiniteAlgebra], where: str) -> FiniteAlgebra:
    if not isinstance(name, str) or name not in algebras:
        raise FormatError(f"{where}: unknown algebra {name!r}")
    return algebras[name]


def hom_from_json(doc: Mapping, algebras: Mapping[str, FiniteAlgebra],
                  where: str = "homomorphism") -> Homomorphism:
    src = _algebra_named(_field(doc, "source", str, where), algebras, f"{where}.source")
    tgt = _algebra_named(_field(doc, "target", str, where), algebras, f"{where}.target")
    m = _int_list(_field(doc, "map", list, where), f"{where}.map")
    if len(m) != src.size:
        raise FormatError(f"{where}.map: expected {src.size} entries, got {len(m)}")
    try:
        return Homomorphism(src, tgt, m)
    except AlgebraError as e:
        raise FormatError(f"{where}.map: {e}") from None


def pair_from_json(doc: Mapping, algebras, where: str = "pair"):
    """``{"u": <map>, "v": <map>}``; the maps may omit source/target when the
    pair document itself carries them."""
    u = _field(doc, "u", (dict, list), where)
    v = _field(doc, "v", (dict, list), where)
    common = {k: doc[k] for k in ("source", "target") if k in doc}

    def one(x, key):
        body = {"map": x} if isinstance(x, list) else dict(x)
        return hom_from_json({**common, **body}, algebras, f"{where}.{key}")

    return one(u, "u"), one(v, "v")


def point_from_json(doc: Mapping, algebras, where: str = "point"):
    """``{"total": name, "base": name, "p": [...], "s": [...]}``."""
    total = _algebra_named(_field(doc, "total", str, where), algebras, f"{where}.total")
    base = _algebra_named(_field(doc, "base", str, where), algebras, f"{where}.base")
    p = hom_from_json({"source": total.name, "target": base.name,
                       "map": _field(doc, "p", list, where)}, algebras, f"{where}.p")
    s = hom_from_json({"source": base.name, "target": total.name,
                       "map": _field(doc, "s", list, where)}, algebras, f"{where}.s")
    try:
        return Point(total, base, p, s)
    except AlgebraError as e:
        raise FormatError(f"{where}: {e}") from None


def point_to_json(P) -> dict:
    return {"total": P.total.name, "base": P.base.name, "p": list(P.p.map), "s": list(P.s.map)}


def congruence_to_json(theta: Congruence | Partition) -> list:
    part = theta.partition if isinstance(theta, Congruence) else theta
    return [list(b) for b in part.blocks()]


def congruence_from_json(blocks, A: FiniteAlgebra) -> Congruence:
    if not isinstance(blocks, list):
        raise FormatError("congruence must be an array of blocks")
    seen = sorted(x for b in blocks for x in _int_list(b, "congruence block"))
    if seen != list(range(A.size)):
        raise FormatError(f"congruence blocks must partition 0..{A.size - 1}")
    return Congruence.checked(A, Partition.from_blocks(A.size, blocks))


def load_json(path: str | Path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def dump_json(doc, path: str | Path | None = None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
