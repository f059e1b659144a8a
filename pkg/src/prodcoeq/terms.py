"""Terms over a signature: syntax trees, evaluation and the prefix JSON form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import TermError


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()


Term = Union[Var, App]


def var(i: int) -> Var:
    return Var(i)


def app(symbol: str, *args: Term) -> App:
    return App(symbol, tuple(args))


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return out


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max((depth(a) for a in t.args), default=0)


def substitute(t: Term, mapping) -> Term:
    """Replace each variable ``i`` by ``mapping[i]`` (variables missing from a dict stay)."""
    if isinstance(t, Var):
        if isinstance(mapping, Mapping):
            return mapping.get(t.index, t)
        return mapping[t.index]
    return App(t.symbol, tuple(substitute(a, mapping) for a in t.args))


def check_term(t: Term, signature, nvars: int | None = None) -> None:
    arities = signature.arities
    if isinstance(t, Var):
        if t.index < 0 or (nvars is not None and t.index >= nvars):
            raise TermError(f"variable {t.index} out of range")
        return
    if t.symbol not in arities:
        raise TermError(f"unknown symbol {t.symbol!r}")
    if arities[t.symbol] != len(t.args):
        raise TermError(
            f"symbol {t.symbol!r} has arity {arities[t.symbol]}, got {len(t.args)} arguments")
    for a in t.args:
        check_term(a, signature, nvars)


def eval_term(alg, t: Term, env) -> int:
    """Value of the term operation of ``t`` in ``alg`` at ``env``.

    ``env`` maps variable indices to elements; a sequence is indexed positionally.
    """
    if isinstance(t, Var):
        try:
            return int(env[t.index])
        except (KeyError, IndexError):
            raise TermError(f"unbound variable {t.index}") from None
    arity = alg.signature.arities.get(t.symbol)
    if arity is None:
        raise TermError(f"unknown symbol {t.symbol!r}")
    if arity != len(t.args):
        raise TermError(f"symbol {t.symbol!r} has arity {arity}, got {len(t.args)} arguments")
    return alg.op(t.symbol, *(eval_term(alg, a, env) for a in t.args))


def eval_vectorized(alg, t: Term, env: Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate ``t`` on arrays of elements, one array per variable (broadcast together)."""
    shape = np.broadcast_shapes(*(np.shape(e) for e in env)) if env else ()
    cache: dict = {}

    def go(s):
        if s in cache:
            return cache[s]
        if isinstance(s, Var):
            if s.index >= len(env):
                raise TermError(f"unbound variable {s.index}")
            out = np.broadcast_to(env[s.index], shape)
        else:
            table = alg.table(s.symbol)
            if table.ndim != len(s.args):
                raise TermError(f"symbol {s.symbol!r} has arity {table.ndim}, got {len(s.args)} arguments")
            if not s.args:
                out = np.full(shape, int(table), dtype=np.int64)
            else:
                out = table[tuple(go(a) for a in s.args)]
        cache[s] = out
        return out

    return np.asarray(go(t))


def to_prefix(t: Term, names: Sequence[str]) -> list:
    """Nested prefix form, e.g. ``["+", ["x"], ["y"]]``."""
    if isinstance(t, Var):
        return [names[t.index]]
    return [t.symbol, *(to_prefix(a, names) for a in t.args)]


def from_prefix(expr, names: Sequence[str], signature=None) -> Term:
    """Inverse of :func:`to_prefix`. One-element lists name a variable unless the
    name is not a variable and is a constant of ``signature``."""
    if not isinstance(expr, (list, tuple)) or not expr or not isinstance(expr[0], str):
        raise TermError(f"malformed term {expr!r}")
    head, rest = expr[0], expr[1:]
    if not rest and head in names:
        return Var(list(names).index(head))
    if signature is not None and head not in signature.arities:
        raise TermError(f"unknown symbol or variable {head!r}")
    return App(head, tuple(from_prefix(e, names, signature) for e in rest))


def format_term(t: Term, names: Sequence[str]) -> str:
    if isinstance(t, Var):
        return names[t.index]
    if not t.args:
        return t.symbol
    if len(t.args) == 2 and not t.symbol.isidentifier():
        return f"({format_term(t.args[0], names)} {t.symbol} {format_term(t.args[1], names)})"
    return f"{t.symbol}({', '.join(format_term(a, names) for a in t.args)})"
