"""Command-line entry point.

Exit codes: 0 when the property holds or the construction succeeded, 1 when a
property fails (the report then carries a witness), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .algebra import FiniteAlgebra, Homomorphism
from .checks import Verdict
from .clone import FINDERS
from .coeq import (ParallelPair, check_P_instance, coequalizer, cokernel, is_normal_epi,
                   kernel_inclusion, universal_property_violations)
from .congruence import congruence_generated
from .counterexample import verify_subtraction_counterexample
from .decide import Decision, decide_local_NP, decide_P
from .errors import AlgebraError, CapExceededError
from .fixtures import BUILTINS
from .free import DEFAULT_MAX_FREE_SIZE
from .io import (FormatError, algebra_from_json, algebra_to_json, congruence_to_json,
                 hom_from_json, hom_to_json, load_json, pair_from_json, point_from_json,
                 point_to_json)
from .points import Point, PointMorphism, check_local_P_instance, pt_coequalizer, pt_product
from .terms import format_term, to_prefix
from .witness import validate_witness

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    max_free_size: int = DEFAULT_MAX_FREE_SIZE
    max_enumeration_size: int = 5
    report_path: str | None = None
    # accepted for interface compatibility; all work runs in this process
    parallelism: int | str = "auto"

    def __post_init__(self):
        if self.max_free_size < 1 or self.max_enumeration_size < 1:
            raise ValueError("size bounds must be positive")
        if self.parallelism != "auto" and (not isinstance(self.parallelism, int)
                                           or self.parallelism < 1):
            raise ValueError("parallelism must be a positive integer or 'auto'")


@dataclass
class Report:
    command: str
    inputs: dict
    result: Any = None
    witness: Any = None
    terms: Any = None
    sizes: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        doc: dict[str, Any] = {"command": self.command, "inputs": self.inputs, "result": self.result}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.terms is not None:
            doc["terms"] = self.terms
        doc["sizes"] = self.sizes
        if timing:
            doc["elapsed_ms"] = round(self.elapsed_ms, 3)
        return doc


# -- loading -----------------------------------------------------------------

class Workspace:
    """Algebras known to a run: built-ins, plus any files passed with ``--algebra-file``."""

    def __init__(self, algebra_files=()):
        self.by_name: dict[str, FiniteAlgebra] = {}
        for make in BUILTINS.values():
            A = make()
            self.by_name.setdefault(A.name, A)
        for path in algebra_files:
            A = self.load_algebra(path)
            self.by_name[A.name] = A

    def load_algebra(self, ref: str) -> FiniteAlgebra:
        if os.path.exists(ref):
            A = algebra_from_json(load_json(ref))
        elif ref in BUILTINS:
            A = BUILTINS[ref]()
        elif ref.startswith("builtin:") and ref[8:] in BUILTINS:
            A = BUILTINS[ref[8:]]()
        else:
            raise FormatError(f"{ref}: no such algebra file or built-in "
                              f"(built-ins: {', '.join(BUILTINS)})")
        self.by_name.setdefault(A.name, A)
        return A

    def _inline(self, doc):
        # pair and point documents may embed their algebras
        for a in doc.get("algebras", []) if isinstance(doc, dict) else []:
            A = algebra_from_json(a)
            self.by_name[A.name] = A

    def hom(self, path: str) -> Homomorphism:
        doc = load_json(path)
        self._inline(doc)
        return hom_from_json(doc, self.by_name, path)

    def pair(self, path: str) -> ParallelPair:
        doc = load_json(path)
        self._inline(doc)
        u, v = pair_from_json(doc, self.by_name, path)
        try:
            return ParallelPair(u, v)
        except AlgebraError as e:
            raise FormatError(f"{path}: {e}") from None

    def point(self, doc, where: str) -> Point:
        self._inline(doc)
        return point_from_json(doc, self.by_name, where)

    def point_pair(self, path: str) -> tuple:
        doc = load_json(path)
        self._inline(doc)
        if not isinstance(doc, dict) or not {"source", "target", "u", "v"} <= set(doc):
            raise FormatError(f"{path}: point pair needs fields 'source', 'target', 'u', 'v'")
        src = self.point(doc["source"], f"{path}: source")
        tgt = self.point(doc["target"], f"{path}: target")
        out = []
        for key in ("u", "v"):
            try:
                f = Homomorphism(src.total, tgt.total, doc[key])
                out.append(PointMorphism(src, tgt, f))
            except (AlgebraError, TypeError) as e:
                raise FormatError(f"{path}: field {key!r}: {e}") from None
        return tuple(out)


# -- witness documents --------------------------------------------------------

def _algebra_list(*algebras: FiniteAlgebra) -> list:
    out, seen = [], {}
    for A in algebras:
        if A.name in seen:
            if seen[A.name] != A:
                raise AlgebraError(f"two different algebras are both named {A.name!r}")
            continue
        seen[A.name] = A
        out.append(algebra_to_json(A))
    return out


def _pair_doc(pair: ParallelPair) -> dict:
    return {"source": pair.source.name, "target": pair.target.name,
            "u": list(pair.u.map), "v": list(pair.v.map)}


def p_instance_doc(pair1: ParallelPair, pair2: ParallelPair, verdict: Verdict) -> dict:
    m = pair2.target.size
    i, j = verdict.witness
    X, Y = pair1.target, pair2.target
    return {"type": "p-instance",
            "algebras": _algebra_list(pair1.source, X, pair2.source, Y),
            "pair1": _pair_doc(pair1), "pair2": _pair_doc(pair2), "pair": [i, j],
            "labels": [f"({X.label(i // m)},{Y.label(i % m)})",
                       f"({X.label(j // m)},{Y.label(j % m)})"]}


def local_instance_doc(pair1: tuple, pair2: tuple, verdict: Verdict) -> dict:
    (u1, v1), (u2, v2) = pair1, pair2
    pts = {"C1": u1.source, "A1": u1.target, "C2": u2.source, "A2": u2.target}
    algs = [p.total for p in pts.values()] + [u1.source.base]
    return {"type": "local-instance", "algebras": _algebra_list(*algs),
            "points": {k: point_to_json(p) for k, p in pts.items()},
            "pair1": {"source": "C1", "target": "A1", "u": list(u1.f.map), "v": list(v1.f.map)},
            "pair2": {"source": "C2", "target": "A2", "u": list(u2.f.map), "v": list(v2.f.map)},
            "pair": [list(verdict.witness[0]), list(verdict.witness[1])]}


def terms_doc(A: FiniteAlgebra, decision: Decision) -> dict:
    w = decision.witness
    doc = {"type": "terms", "algebras": _algebra_list(A), "algebra": A.name, "terms": w.to_json()}
    names = w.p_names()
    doc["readable"] = {
        "b": [format_term(t, ("x", "y")) for t in w.b],
        "c": [format_term(t, w.c_names()) for t in w.c],
        "p": [format_term(t, names) for t in w.p],
    }
    return doc


def _point_result(P: Point) -> dict:
    return {"total": algebra_to_json(P.total), "base": P.base.name,
            "p": list(P.p.map), "s": list(P.s.map)}


# -- commands -----------------------------------------------------------------

def _cmd_coeq(args, cfg, ws):
    pair = ws.pair(args.pair)
    res = coequalizer(pair)
    result = {"quotient": algebra_to_json(res.quotient), "q": list(res.q.map),
              "congruence": congruence_to_json(res.congruence),
              "identifies_nothing": res.quotient.size == pair.target.size}
    sizes = {"source": pair.source.size, "target": pair.target.size, "quotient": res.quotient.size}
    if args.check_universal:
        targets = [A for A in ws.by_name.values() if A.signature == pair.target.signature]
        bad = universal_property_violations(res.q, pair, targets, cfg.max_enumeration_size)
        result["universal_property_violations"] = [list(map(str, b)) for b in bad]
        if bad:
            return EXIT_FAIL, result, None, sizes
    return EXIT_OK, result, None, sizes


def _cmd_is_normal(args, cfg, ws):
    f = ws.hom(args.map)
    v = is_normal_epi(f)
    sizes = {"source": f.source.size, "target": f.target.size}
    if v:
        return EXIT_OK, "normal", None, sizes
    a, b = v.witness
    witness = {"type": "normal-epi", "algebras": _algebra_list(f.source, f.target),
               "map": hom_to_json(f), "pair": [a, b],
               "labels": [f.source.label(a), f.source.label(b)]}
    return EXIT_FAIL, "not normal", witness, sizes


def _cmd_cokernel(args, cfg, ws):
    f = ws.hom(args.map)
    res = cokernel(f)
    K, inc = kernel_inclusion(f)
    result = {"cokernel": algebra_to_json(res.quotient), "q": list(res.q.map),
              "congruence": congruence_to_json(res.congruence), "kernel": list(inc.map)}
    return EXIT_OK, result, None, {"source": f.source.size, "target": f.target.size,
                                   "kernel": K.size, "cokernel": res.quotient.size}


def _cmd_check_p_instance(args, cfg, ws):
    p1, p2 = ws.pair(args.pair1), ws.pair(args.pair2)
    v = check_P_instance(p1, p2)
    sizes = {"product_source": p1.source.size * p2.source.size,
             "product_target": p1.target.size * p2.target.size}
    if v:
        return EXIT_OK, "coequalizer", None, sizes
    return EXIT_FAIL, "not a coequalizer", p_instance_doc(p1, p2, v), sizes


def _cmd_pt_product(args, cfg, ws):
    P1 = ws.point(load_json(args.point1), args.point1)
    P2 = ws.point(load_json(args.point2), args.point2)
    prod, pi1, pi2 = pt_product(P1, P2)
    result = {"product": _point_result(prod), "carrier": [list(c) for c in prod.pullback.carrier],
              "pi1": list(pi1.f.map), "pi2": list(pi2.f.map)}
    return EXIT_OK, result, None, {"product": prod.total.size}


def _cmd_pt_coeq(args, cfg, ws):
    u, v = ws.point_pair(args.pair)
    Q, q = pt_coequalizer(u, v)
    return EXIT_OK, {"quotient": _point_result(Q), "q": list(q.f.map)}, None, {
        "target": u.target.total.size, "quotient": Q.total.size}


def _cmd_check_local(args, cfg, ws):
    pair1, pair2 = ws.point_pair(args.pair1), ws.point_pair(args.pair2)
    v = check_local_P_instance(pair1, pair2)
    sizes = {"target_1": pair1[0].target.total.size, "target_2": pair2[0].target.total.size}
    if v:
        return EXIT_OK, "coequalizer", None, sizes
    return EXIT_FAIL, "not a coequalizer", local_instance_doc(pair1, pair2, v), sizes


def _emit_terms(args, A, d: Decision):
    if args.emit_terms and d.witness is not None:
        Path(args.emit_terms).write_text(json.dumps(terms_doc(A, d), indent=2) + "\n",
                                         encoding="utf-8")


def _cmd_decide_p(args, cfg, ws):
    A = ws.load_algebra(args.algebra)
    d = decide_P(A, cfg.max_free_size)
    _emit_terms(args, A, d)
    if d.holds:
        return EXIT_OK, "holds", None, d.sizes, terms_doc(A, d)
    c = d.counterexample
    return EXIT_FAIL, "fails", p_instance_doc(c.pair1, c.pair2, c.verdict), d.sizes


def _cmd_decide_local(args, cfg, ws):
    A = ws.load_algebra(args.algebra)
    d = decide_local_NP(A, cfg.max_free_size)
    _emit_terms(args, A, d)
    if d.holds:
        return EXIT_OK, "holds", None, d.sizes, terms_doc(A, d)
    c = d.counterexample
    return EXIT_FAIL, "fails", local_instance_doc(c.pair1, c.pair2, c.verdict), d.sizes


def _cmd_find_term(args, cfg, ws):
    A = ws.load_algebra(args.algebra)
    t = FINDERS[args.kind](A, cfg.max_free_size)
    names = ("x", "y") if args.kind == "subtraction" else ("x", "y", "z")
    if t is not None:
        return EXIT_OK, {"found": True, "term": to_prefix(t, names),
                         "readable": format_term(t, names)}, None, {"algebra": A.size}
    witness = {"type": "term-absent", "algebras": _algebra_list(A), "algebra": A.name,
               "kind": args.kind}
    return EXIT_FAIL, {"found": False}, witness, {"algebra": A.size}


def _parse_pairs(args, A):
    raw = args.pairs if args.pairs is not None else (load_json(args.pairs_file)
                                                      if args.pairs_file else [])
    if isinstance(raw, str):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as e:
            raise FormatError(f"--pairs: invalid JSON ({e.msg})") from None
    if not isinstance(raw, list) or any(
            not isinstance(p, list) or len(p) != 2
            or not all(isinstance(x, int) and 0 <= x < A.size for x in p) for p in raw):
        raise FormatError(f"--pairs: expected [[a, b], ...] with indices below {A.size}")
    return [tuple(p) for p in raw]


def _cmd_congruence(args, cfg, ws):
    A = ws.load_algebra(args.algebra)
    pairs = _parse_pairs(args, A)
    theta, tr = congruence_generated(A, pairs, trace=args.trace)
    result = {"blocks": congruence_to_json(theta)}
    if args.trace:
        result["trace"] = tr.to_json()
    return EXIT_OK, result, None, {"algebra": A.size, "classes": theta.partition.num_blocks()}


def _perm(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise FormatError(f"permutation {text!r}: expected comma-separated integers") from None


def _cmd_counterexample(args, cfg, ws):
    px, py = _perm(args.permute_x), _perm(args.permute_y)
    for p, n in ((px, 3), (py, 2)):
        if p is not None and sorted(p) != list(range(n)):
            raise FormatError(f"permutation {p} is not a permutation of 0..{n - 1}")
    r = verify_subtraction_counterexample(px, py)
    result = {"assertions": [{"name": a.name, "passed": a.passed, "detail": a.detail}
                             for a in r.assertions],
              "corrected_instance": {"name": r.corrected.name, "passed": r.corrected.passed,
                                     "detail": r.corrected.detail},
              "witness_pair": list(r.witness),
              "all_passed": r.passed}
    p1, p2, v = r.p_instance
    witness = p_instance_doc(p1, p2, v) if not v.holds else None
    return (EXIT_OK if r.passed else EXIT_FAIL), result, witness, r.sizes


def _cmd_validate(args, cfg, ws):
    ok, why = validate_witness(load_json(args.file))
    return (EXIT_OK if ok else EXIT_FAIL), {"confirmed": ok, "detail": why}, None, {}


COMMANDS = {
    "coeq": _cmd_coeq,
    "is-normal": _cmd_is_normal,
    "cokernel": _cmd_cokernel,
    "check-p-instance": _cmd_check_p_instance,
    "pt-product": _cmd_pt_product,
    "pt-coeq": _cmd_pt_coeq,
    "check-local-instance": _cmd_check_local,
    "decide-p": _cmd_decide_p,
    "decide-local-np": _cmd_decide_local,
    "find-term": _cmd_find_term,
    "congruence": _cmd_congruence,
    "verify-paper-counterexample": _cmd_counterexample,
    "validate-witness": _cmd_validate,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _parallelism(text):
    return text if text == "auto" else _positive(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="write the JSON report here instead of stdout")
    common.add_argument("--max-free-size", type=_positive, default=DEFAULT_MAX_FREE_SIZE)
    common.add_argument("--max-enumeration-size", type=_positive, default=5)
    common.add_argument("--parallelism", type=_parallelism, default="auto")
    common.add_argument("-a", "--algebra-file", action="append", default=[], metavar="FILE",
                        help="algebra file whose name maps and points may refer to")

    p = _Parser(prog="prodcoeq", description="Finite algebras, coequalizers and property (P).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def verb(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = verb("coeq", "coequalizer of a parallel pair")
    s.add_argument("--pair", required=True)
    s.add_argument("--check-universal", action="store_true",
                   help="enumerate the universal property over known algebras up to the size bound")
    verb("is-normal", "is a surjection a normal epimorphism").add_argument("--map", required=True)
    verb("cokernel", "cokernel of a homomorphism").add_argument("--map", required=True)
    s = verb("check-p-instance", "is the product of two coequalizers a coequalizer")
    s.add_argument("--pair1", required=True)
    s.add_argument("--pair2", required=True)
    s = verb("pt-product", "product of two points over a common base")
    s.add_argument("--point1", required=True)
    s.add_argument("--point2", required=True)
    verb("pt-coeq", "coequalizer of a pair of point morphisms").add_argument("--pair", required=True)
    s = verb("check-local-instance", "local version of check-p-instance")
    s.add_argument("--pair1", required=True)
    s.add_argument("--pair2", required=True)
    for name in ("decide-p", "decide-local-np"):
        s = verb(name, f"decide {'(P)' if name == 'decide-p' else 'local normal projections'} "
                       "for the variety generated by an algebra")
        s.add_argument("algebra", help="algebra file or built-in name")
        s.add_argument("--emit-terms", metavar="PATH")
    s = verb("find-term", "search the clone for a Mal'tsev, majority or subtraction term")
    s.add_argument("--kind", required=True, choices=sorted(FINDERS))
    s.add_argument("algebra")
    s = verb("congruence", "congruence generated by pairs")
    s.add_argument("algebra")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--pairs", help="JSON array of index pairs")
    g.add_argument("--pairs-file")
    s.add_argument("--trace", action="store_true")
    s = verb("verify-paper-counterexample", "check the subtraction-algebra counterexample")
    s.add_argument("--permute-x", help="relabel X, e.g. 2,0,1")
    s.add_argument("--permute-y", help="relabel Y, e.g. 1,0")
    verb("validate-witness", "re-verify a report's witness independently").add_argument("file")
    return p


def _inputs(args) -> dict:
    skip = {"command", "report", "max_free_size", "max_enumeration_size", "parallelism"}
    out = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v not in (None, [], False)}
    out["config"] = {"max_free_size": args.max_free_size,
                     "max_enumeration_size": args.max_enumeration_size}
    return out


def run(argv=None) -> tuple[int, Report | None]:
    """Parse, dispatch and build the report; returns ``(exit code, report)``."""
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.max_free_size, args.max_enumeration_size, args.report, args.parallelism)
    start = time.perf_counter()
    try:
        ws = Workspace(args.algebra_file)
        out = COMMANDS[args.command](args, cfg, ws)
    except (AlgebraError, FileNotFoundError, IsADirectoryError, CapExceededError) as e:
        print(f"prodcoeq {args.command}: error: {e}", file=sys.stderr)
        return EXIT_ERROR, None
    code, result, witness, sizes, *rest = out
    report = Report(args.command, _inputs(args), result, witness, rest[0] if rest else None, sizes,
                    (time.perf_counter() - start) * 1000)
    text = json.dumps(report.to_json(), indent=2)
    if cfg.report_path:
        Path(cfg.report_path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return code, report


def main(argv=None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
