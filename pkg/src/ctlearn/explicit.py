"""Explicit separating formulas built from the bisimulation refinement history.

``distinguish(q1, q2)`` follows the refinement round that first splits
the two states: a label difference yields a literal, a successor of
``q1`` unmatched by every successor of ``q2`` yields an ``EX`` formula,
and the mirrored situation yields ``AX !(...)``.
"""

from __future__ import annotations

from functools import reduce

from .bisim import BisimResult, check_sample, refine
from .ctl.formula import AX, EX, And, Atom, Formula, Not, Or, tree_size
from .kripke import KripkeStructure, Sample, SampleError

__all__ = [
    "Distinguisher",
    "distinguish",
    "separating_formula",
    "separating_tree_size",
    "tree_size_bound",
]


def _conj(parts: list[Formula]) -> Formula:
    return reduce(And, parts)


class Distinguisher:
    """Memoized construction of pairwise distinguishing formulas."""

    def __init__(self, ks: KripkeStructure, history: BisimResult | None = None):
        self.ks = ks
        self.history = history if history is not None else refine(ks)
        self.memo: dict[tuple[int, int], Formula] = {}
        # (pair, round) of every recursive call, for inspecting the induction
        self.calls: list[tuple[int, int, int, int, int]] = []

    def _split(self, x: int, y: int, i: int) -> bool:
        return not self.history.equivalent(x, y, i)

    def __call__(self, q1: int, q2: int) -> Formula:
        key = (q1, q2)
        if key in self.memo:
            return self.memo[key]
        c = self.history.separation_round(q1, q2)
        if c is None:
            raise SampleError(f"states {q1} and {q2} are bisimilar")
        ks = self.ks
        if c == 0:
            only1 = ks.labels[q1] - ks.labels[q2]
            if only1:
                f = Atom(ks.atoms[min(only1)])
            else:
                f = Not(Atom(ks.atoms[min(ks.labels[q2] - ks.labels[q1])]))
        else:
            f = self._successor_case(q1, q2, c)
        self.memo[key] = f
        return f

    def _successor_case(self, q1: int, q2: int, c: int) -> Formula:
        ks = self.ks
        for s1 in ks.succ[q1]:
            if all(self._split(s1, s2, c - 1) for s2 in ks.succ[q2]):
                parts = [self._recurse(q1, q2, c, s1, s2) for s2 in ks.succ[q2]]
                return EX(_conj(parts))
        for s2 in ks.succ[q2]:
            if all(self._split(s1, s2, c - 1) for s1 in ks.succ[q1]):
                parts = [self._recurse(q1, q2, c, s2, s1) for s1 in ks.succ[q1]]
                return AX(Not(_conj(parts)))
        raise AssertionError(f"round {c} splits {q1} and {q2} without a witness successor")

    def _recurse(self, q1: int, q2: int, c: int, a: int, b: int) -> Formula:
        self.calls.append((q1, q2, c, a, b))
        return self(a, b)


def distinguish(ks: KripkeStructure, q1: int, q2: int, history: BisimResult | None = None) -> Formula:
    """A formula true in ``q1`` and false in ``q2``."""
    return Distinguisher(ks, history)(q1, q2)


def separating_formula(sample: Sample, history: BisimResult | None = None) -> Formula:
    """Disjunction over positives of the conjunction of their distinguishers from every negative."""
    if history is None:
        history = refine(sample.structure)
    check_sample(sample, history)
    d = Distinguisher(sample.structure, history)
    negatives = sorted(sample.negatives)
    disjuncts = [_conj([d(qp, qn) for qn in negatives]) for qp in sorted(sample.positives)]
    return reduce(Or, disjuncts)


def tree_size_bound(sample: Sample, history: BisimResult | None = None) -> int:
    """Size bound on the separating formula in terms of degree and characteristic number."""
    c = check_sample(sample, history)
    k = sample.structure.degree
    pairs = len(sample.positives) * len(sample.negatives)
    if k == 1:
        return (2 * c + 3) * pairs
    return (5 * k ** c + 1) * pairs


def separating_tree_size(sample: Sample) -> int:
    return tree_size(separating_formula(sample))

