"""Bisimulation by partition refinement.

The refinement keeps every round ``~_i`` so that later stages can ask
whether two states are still equivalent after ``i`` rounds; the
explicit separating formula needs exactly that query.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .kripke import KripkeStructure, Sample, SampleError

__all__ = [
    "Partition",
    "BisimResult",
    "InconsistentSample",
    "refine",
    "check_sample",
    "quotient",
    "minimize",
]


class InconsistentSample(SampleError):
    def __init__(self, positive: int, negative: int, message: str | None = None):
        self.positive = positive
        self.negative = negative
        super().__init__(message or f"positive state {positive} is bisimilar to negative state {negative}")


@dataclass(frozen=True)
class Partition:
    class_of: tuple[int, ...]
    round: int

    @property
    def num_classes(self) -> int:
        return max(self.class_of) + 1 if self.class_of else 0

    @property
    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for q, c in enumerate(self.class_of):
            out[c].append(q)
        return out


@dataclass(frozen=True)
class BisimResult:
    history: tuple[Partition, ...]

    @property
    def final(self) -> Partition:
        return self.history[-1]

    @property
    def characteristic_number(self) -> int:
        return len(self.history) - 1

    def at(self, i: int) -> Partition:
        return self.history[min(i, len(self.history) - 1)]

    def equivalent(self, q1: int, q2: int, i: int | None = None) -> bool:
        part = self.final if i is None else self.at(i)
        return part.class_of[q1] == part.class_of[q2]

    def separation_round(self, q1: int, q2: int) -> int | None:
        """Smallest ``i`` with ``q1`` and ``q2`` split by ``~_i``; None if bisimilar."""
        for part in self.history:
            if part.class_of[q1] != part.class_of[q2]:
                return part.round
        return None


def _canonical(keys) -> tuple[int, ...]:
    ids: dict = {}
    return tuple(ids.setdefault(k, len(ids)) for k in keys)


def refine(ks: KripkeStructure) -> BisimResult:
    classes = _canonical(ks.labels)
    history = [Partition(classes, 0)]
    while True:
        nxt = _canonical(
            (classes[q], frozenset(classes[t] for t in ks.succ[q])) for q in range(ks.size)
        )
        # refinement only splits classes, so equal class counts mean a fixed point
        if max(nxt) == max(classes):
            return BisimResult(tuple(history))
        classes = nxt
        history.append(Partition(classes, len(history)))


def check_sample(sample: Sample, result: BisimResult | None = None) -> int:
    """Characteristic number of the sample; raises InconsistentSample on a bisimilar pair."""
    if result is None:
        result = refine(sample.structure)
    c = 0
    for qp, qn in product(sorted(sample.positives), sorted(sample.negatives)):
        r = result.separation_round(qp, qn)
        if r is None:
            raise InconsistentSample(
                qp, qn,
                f"positive state {sample.state_name(qp)} is bisimilar to "
                f"negative state {sample.state_name(qn)}")
        c = max(c, r)
    return c


def quotient(ks: KripkeStructure, partition: Partition) -> KripkeStructure:
    """Quotient structure; class ``c`` is represented by its smallest state."""
    reps = [members[0] for members in partition.classes]
    succ = [{partition.class_of[t] for t in ks.succ[r]} for r in reps]
    labels = [ks.labels[r] for r in reps]
    return KripkeStructure.build(succ, labels, ks.atoms)


def minimize(sample: Sample, result: BisimResult | None = None) -> Sample:
    if result is None:
        result = refine(sample.structure)
    check_sample(sample, result)
    cls = result.final.class_of
    return Sample(
        quotient(sample.structure, result.final),
        frozenset(cls[q] for q in sample.positives),
        frozenset(cls[q] for q in sample.negatives),
    )
