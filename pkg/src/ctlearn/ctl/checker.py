"""Two CTL model checkers.

``satisfying_states`` is the classic labelling algorithm: until and
finally operators are least fixpoints, globally operators greatest
fixpoints.  ``bounded_satisfying_states`` reads every finally, globally
and until operator through its rank-``u`` unfolding instead, with the
rank of a state capped by an upper bound on its recurrence diameter.
Both agree whenever that bound really is an upper bound.
"""

from __future__ import annotations

from typing import Sequence

from ..diameter import DiameterBound
from ..kripke import KripkeStructure
from .formula import RANKED, Formula, subformulas

__all__ = [
    "satisfying_states",
    "check",
    "check_bounded",
    "bounded_satisfying_states",
    "rank_table",
    "is_consistent",
    "UnknownAtom",
]


class UnknownAtom(ValueError):
    """The formula mentions an atom the structure does not declare."""


def _atom_index(ks: KripkeStructure, name: str) -> int:
    try:
        return ks.atoms.index(name)
    except ValueError:
        raise UnknownAtom(f"unknown atom {name!r}") from None


def _local(ks: KripkeStructure, node: Formula, truth: dict[Formula, list[bool]]) -> list[bool] | None:
    """Truth of the non-fixpoint operators; None for ranked ones."""
    n = ks.size
    op = node.op
    if op == "true":
        return [True] * n
    if op == "atom":
        a = _atom_index(ks, node.atom)
        return [a in ks.labels[q] for q in range(n)]
    if op == "not":
        return [not v for v in truth[node.right]]
    if op == "and":
        return [x and y for x, y in zip(truth[node.left], truth[node.right])]
    if op == "or":
        return [x or y for x, y in zip(truth[node.left], truth[node.right])]
    if op == "AX":
        r = truth[node.right]
        return [all(r[t] for t in ks.succ[q]) for q in range(n)]
    if op == "EX":
        r = truth[node.right]
        return [any(r[t] for t in ks.succ[q]) for q in range(n)]
    return None


def _fixpoint(ks: KripkeStructure, node: Formula, truth: dict[Formula, list[bool]],
              pred: list[list[int]]) -> list[bool]:
    op = node.op
    psi = truth[node.right]
    sat = list(psi)
    if op == "AG":
        stack = [q for q in range(ks.size) if not sat[q]]
        while stack:
            t = stack.pop()
            for p in pred[t]:
                if sat[p]:
                    sat[p] = False
                    stack.append(p)
        return sat
    if op == "EG":
        alive = [sum(sat[t] for t in ks.succ[q]) for q in range(ks.size)]
        stack = [q for q in range(ks.size) if sat[q] and alive[q] == 0]
        for q in stack:
            sat[q] = False
        while stack:
            t = stack.pop()
            for p in pred[t]:
                if sat[p]:
                    alive[p] -= 1
                    if alive[p] == 0:
                        sat[p] = False
                        stack.append(p)
        return sat
    # AF/EF behave as AU/EU with a True left operand
    phi = truth[node.left] if node.left is not None else None
    universal = op[0] == "A"
    missing = [len(s) for s in ks.succ]
    stack = [q for q in range(ks.size) if sat[q]]
    while stack:
        t = stack.pop()
        for p in pred[t]:
            missing[p] -= 1
            if sat[p] or (phi is not None and not phi[p]):
                continue
            if not universal or missing[p] == 0:
                sat[p] = True
                stack.append(p)
    return sat


def satisfying_states(ks: KripkeStructure, f: Formula) -> list[bool]:
    truth: dict[Formula, list[bool]] = {}
    pred = ks.predecessors()
    for node in subformulas(f):
        val = _local(ks, node, truth)
        if val is None:
            val = _fixpoint(ks, node, truth, pred)
        truth[node] = [not v for v in val] if node.neg else val
    return truth[f]


def check(ks: KripkeStructure, state: int, f: Formula) -> bool:
    return satisfying_states(ks, f)[state]


def rank_table(ks: KripkeStructure, node: Formula, child_truth: dict[Formula, list[bool]],
               bound: Sequence[int]) -> list[list[bool]]:
    """``table[q][u]`` is the rank-``u`` truth of ``node`` (ignoring its own negation flag)."""
    op = node.op
    n = ks.size
    psi = child_truth[node.right]
    phi = child_truth[node.left] if node.left is not None else None
    quant = all if op[0] == "A" else any
    table: list[list[bool]] = [[psi[q]] for q in range(n)]
    for u in range(1, max(bound, default=0) + 1):
        for q in range(n):
            if u > bound[q]:
                continue
            succ_ok = quant(table[t][min(bound[t], u - 1)] for t in ks.succ[q])
            if op in ("AF", "EF"):
                val = psi[q] or succ_ok
            elif op in ("AG", "EG"):
                val = psi[q] and succ_ok
            else:
                val = psi[q] or (phi[q] and succ_ok)
            table[q].append(val)
    for q in range(n):
        row = table[q]
        for u in range(len(row) - 1):
            if op in ("AG", "EG"):
                assert not row[u + 1] or row[u], "globally ranks must descend"
            else:
                assert not row[u] or row[u + 1], "finally/until ranks must ascend"
    return table


def bounded_satisfying_states(ks: KripkeStructure, f: Formula, bound: DiameterBound | Sequence[int]) -> list[bool]:
    bound = list(bound)
    if len(bound) != ks.size:
        raise ValueError("bound does not match the structure")
    truth: dict[Formula, list[bool]] = {}
    for node in subformulas(f):
        val = _local(ks, node, truth)
        if val is None:
            assert node.op in RANKED
            table = rank_table(ks, node, truth, bound)
            val = [table[q][bound[q]] for q in range(ks.size)]
        truth[node] = [not v for v in val] if node.neg else val
    return truth[f]


def check_bounded(ks: KripkeStructure, state: int, f: Formula, bound: DiameterBound | Sequence[int]) -> bool:
    return bounded_satisfying_states(ks, f, bound)[state]


def is_consistent(ks: KripkeStructure, positives, negatives, f: Formula) -> bool:
    truth = satisfying_states(ks, f)
    return all(truth[q] for q in positives) and not any(truth[q] for q in negatives)
