"""Random k-mutants of Kripke structures, paired with their originals as samples."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal

from .bisim import InconsistentSample, check_sample
from .kripke import InputInstance, KripkeStructure, Sample, coalesce

__all__ = ["MutationOp", "MutationError", "BisimilarMutant", "mutate", "make_sample", "mutant_instances"]

Kind = Literal["relabel", "reroute", "spawn"]
KINDS: tuple[Kind, ...] = ("relabel", "reroute", "spawn")
MAX_TRIES = 200


class MutationError(ValueError):
    pass


@dataclass(frozen=True)
class MutationOp:
    kind: Kind
    state: int
    # relabel: new label; reroute: (removed, added or None); spawn: (target, new state, its label)
    detail: tuple

    def __str__(self) -> str:
        if self.kind == "relabel":
            return f"relabel {self.state} to {{{', '.join(map(str, sorted(self.detail)))}}}"
        if self.kind == "reroute":
            old, new = self.detail
            return f"reroute {self.state}->{old} to {self.state}->{new}" if new is not None \
                else f"drop {self.state}->{old}"
        target, fresh, _ = self.detail
        return f"spawn {fresh} between {self.state} and {target}"


@dataclass(frozen=True)
class BisimilarMutant:
    """The mutant cannot be told apart from the original."""
    mutant: KripkeStructure
    ops: tuple[MutationOp, ...]


def _random_label(rng: random.Random, atoms: int) -> frozenset[int]:
    return frozenset(a for a in range(atoms) if rng.random() < 0.5)


def _apply(kind: Kind, q: int, succ: list[set[int]], labels: list[frozenset[int]],
           atoms: int, rng: random.Random) -> MutationOp | None:
    if kind == "relabel":
        if atoms == 0:
            return None
        while True:
            new = _random_label(rng, atoms)
            if new != labels[q]:
                labels[q] = new
                return MutationOp(kind, q, tuple(sorted(new)))
    old = rng.choice(sorted(succ[q]))
    if kind == "reroute":
        free = [t for t in range(len(succ)) if t not in succ[q]]
        if free:
            new = rng.choice(free)
            succ[q].discard(old)
            succ[q].add(new)
            return MutationOp(kind, q, (old, new))
        if len(succ[q]) < 2:
            return None  # dropping the edge would leave a deadlock
        succ[q].discard(old)
        return MutationOp(kind, q, (old, None))
    fresh = len(succ)
    label = _random_label(rng, atoms)
    succ[q].discard(old)
    succ[q].add(fresh)
    succ.append({old})
    labels.append(label)
    return MutationOp(kind, q, (old, fresh, tuple(sorted(label))))


def mutate(ks: KripkeStructure, k: int, seed: int) -> tuple[KripkeStructure, list[MutationOp]]:
    """Apply ``k`` random mutation rules to a copy of ``ks``.

    A rule drawn at a place where it cannot apply is redrawn.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = random.Random(seed)
    succ = [set(s) for s in ks.succ]
    labels = list(ks.labels)
    atoms = len(ks.atoms)
    ops: list[MutationOp] = []
    for _ in range(k):
        for _ in range(MAX_TRIES):
            op = _apply(rng.choice(KINDS), rng.randrange(len(succ)), succ, labels, atoms, rng)
            if op is not None:
                ops.append(op)
                break
        else:
            raise MutationError("no mutation rule applies to this structure")
    return KripkeStructure.build(succ, labels, ks.atoms), ops


def mutant_instances(ks: KripkeStructure, k: int, seed: int, initial: int = 0,
                     name: str = "orig") -> tuple[list[InputInstance], list[MutationOp]]:
    mutant, ops = mutate(ks, k, seed)
    return [InputInstance(ks, initial, True, name),
            InputInstance(mutant, initial, False, f"{name}_mut")], ops


def make_sample(ks: KripkeStructure, k: int, seed: int, initial: int = 0) -> Sample | BisimilarMutant:
    """Original as the positive, its k-mutant as the negative."""
    instances, ops = mutant_instances(ks, k, seed, initial)
    sample = coalesce(instances)
    try:
        check_sample(sample)
    except InconsistentSample:
        return BisimilarMutant(instances[1].structure, tuple(ops))
    return sample
