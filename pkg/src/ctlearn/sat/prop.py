"""Propositional formulas as nested tuples.

A formula is either a non-zero int (a DIMACS-style literal, negative for
negation) or a tuple whose first item is the connective:
``("and", (f, ...))``, ``("or", (f, ...))``, ``("not", f)``,
``("iff", f, g)`` or ``("imp", f, g)``.  Tuples hash structurally, which
lets the CNF conversion share identical subformulas.
"""

from __future__ import annotations

from typing import Iterable, Union

Prop = Union[int, tuple]

TRUE: Prop = ("and", ())
FALSE: Prop = ("or", ())

__all__ = ["Prop", "TRUE", "FALSE", "conj", "disj", "neg", "iff", "implies", "evaluate", "variables"]


def conj(parts: Iterable[Prop]) -> Prop:
    parts = tuple(parts)
    if len(parts) == 1:
        return parts[0]
    return ("and", parts)


def disj(parts: Iterable[Prop]) -> Prop:
    parts = tuple(parts)
    if len(parts) == 1:
        return parts[0]
    return ("or", parts)


def neg(f: Prop) -> Prop:
    if isinstance(f, int):
        return -f
    if f[0] == "not":
        return f[1]
    return ("not", f)


def iff(f: Prop, g: Prop) -> Prop:
    return ("iff", f, g)


def implies(f: Prop, g: Prop) -> Prop:
    return ("imp", f, g)


def evaluate(f: Prop, model) -> bool:
    """Truth of ``f`` under ``model``, which maps variable ids to bools."""
    if isinstance(f, int):
        v = bool(model[abs(f)])
        return v if f > 0 else not v
    op = f[0]
    if op == "and":
        return all(evaluate(g, model) for g in f[1])
    if op == "or":
        return any(evaluate(g, model) for g in f[1])
    if op == "not":
        return not evaluate(f[1], model)
    if op == "iff":
        return evaluate(f[1], model) == evaluate(f[2], model)
    if op == "imp":
        return not evaluate(f[1], model) or evaluate(f[2], model)
    raise ValueError(f"unknown connective {op!r}")


def variables(f: Prop, out: set[int] | None = None) -> set[int]:
    if out is None:
        out = set()
    if isinstance(f, int):
        out.add(abs(f))
    elif f[0] in ("and", "or"):
        for g in f[1]:
            variables(g, out)
    else:
        for g in f[1:]:
            variables(g, out)
    return out
