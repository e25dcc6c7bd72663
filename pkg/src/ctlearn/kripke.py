"""Kripke structures, the sample file format, and coalescing.

A structure is stored as dense tables: state ``q`` has the sorted,
duplicate-free successor tuple ``succ[q]`` and the label ``labels[q]``,
a frozenset of atom indices.  Atom indices follow declaration order in
the input file, which is the total order on atomic propositions used by
every later stage.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "KripkeStructure",
    "InputInstance",
    "Sample",
    "ParseError",
    "SampleError",
    "parse_instances",
    "format_instances",
    "coalesce",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SampleError(ValueError):
    """Raised for malformed or contradictory samples."""


@dataclass(frozen=True)
class KripkeStructure:
    succ: tuple[tuple[int, ...], ...]
    labels: tuple[frozenset[int], ...]
    atoms: tuple[str, ...]

    def __post_init__(self):
        if len(self.succ) != len(self.labels):
            raise ValueError("successor and label tables differ in length")
        n = len(self.succ)
        if n == 0:
            raise ValueError("a structure needs at least one state")
        for q, targets in enumerate(self.succ):
            if not targets:
                raise ValueError(f"state {q} has no successors")
            if list(targets) != sorted(set(targets)):
                raise ValueError(f"successors of state {q} must be sorted and unique")
            if targets[0] < 0 or targets[-1] >= n:
                raise ValueError(f"state {q} has an out-of-range successor")
        for q, label in enumerate(self.labels):
            if any(a < 0 or a >= len(self.atoms) for a in label):
                raise ValueError(f"state {q} carries an undeclared atom")

    @classmethod
    def build(cls, succ: Iterable[Iterable[int]], labels: Iterable[Iterable[int]],
              atoms: Sequence[str]) -> "KripkeStructure":
        return cls(
            tuple(tuple(sorted(set(s))) for s in succ),
            tuple(frozenset(l) for l in labels),
            tuple(atoms),
        )

    @property
    def size(self) -> int:
        return len(self.succ)

    @property
    def degree(self) -> int:
        return max(len(s) for s in self.succ)

    @property
    def num_transitions(self) -> int:
        return sum(len(s) for s in self.succ)

    def atom_index(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            raise KeyError(f"unknown atom {name!r}") from None

    def label_names(self, q: int) -> list[str]:
        return [self.atoms[a] for a in sorted(self.labels[q])]

    def predecessors(self) -> list[list[int]]:
        pred: list[list[int]] = [[] for _ in self.succ]
        for q, targets in enumerate(self.succ):
            for t in targets:
                pred[t].append(q)
        return pred

    def reachable(self, start: int) -> list[int]:
        seen = {start}
        stack = [start]
        while stack:
            q = stack.pop()
            for t in self.succ[q]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return sorted(seen)

    def restrict(self, states: Sequence[int]) -> tuple["KripkeStructure", dict[int, int]]:
        """Sub-structure on a successor-closed state set, renumbered in order."""
        index = {q: i for i, q in enumerate(states)}
        succ = []
        for q in states:
            try:
                succ.append([index[t] for t in self.succ[q]])
            except KeyError:
                raise ValueError("state set is not closed under successors") from None
        labels = [self.labels[q] for q in states]
        return KripkeStructure.build(succ, labels, self.atoms), index


@dataclass(frozen=True)
class InputInstance:
    structure: KripkeStructure
    initial: int
    positive: bool
    name: str

    def __post_init__(self):
        if not 0 <= self.initial < self.structure.size:
            raise ValueError("initial state out of range")


@dataclass(frozen=True)
class Sample:
    structure: KripkeStructure
    positives: frozenset[int]
    negatives: frozenset[int]
    # state ranges of the coalesced source instances, for reporting
    origins: tuple[tuple[str, int, int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.positives & self.negatives:
            raise SampleError("a state is both positive and negative")
        n = self.structure.size
        if any(not 0 <= q < n for q in self.positives | self.negatives):
            raise SampleError("sample state out of range")

    def state_name(self, q: int) -> str:
        for name, start, stop in self.origins:
            if start <= q < stop:
                return f"{name}:{q - start}"
        return str(q)


_STATE_RE = re.compile(r"^state\s+(\d+)\s*\{([^}]*)\}\s*->\s*(.*)$")


def parse_instances(text: str) -> list[InputInstance]:
    """Parse a sample file into its instances, in file order."""
    atoms: list[str] | None = None
    blocks: list[tuple[str, bool, int, list[tuple[int, list[str], list[int], int]]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword = line.split(None, 1)[0]
        if keyword == "atoms":
            if atoms is not None:
                raise ParseError("duplicate atoms declaration", lineno)
            if blocks:
                raise ParseError("atoms must be declared before any structure", lineno)
            atoms = line.split()[1:]
            if len(set(atoms)) != len(atoms):
                raise ParseError("atom declared twice", lineno)
            for a in atoms:
                if not _is_ident(a):
                    raise ParseError(f"invalid atom name {a!r}", lineno)
        elif keyword == "ks":
            parts = line.split()
            if len(parts) != 3 or parts[2] not in ("positive", "negative"):
                raise ParseError("expected 'ks <name> <positive|negative>'", lineno)
            blocks.append((parts[1], parts[2] == "positive", lineno, []))
        elif keyword == "state":
            if not blocks:
                raise ParseError("state outside of a ks block", lineno)
            m = _STATE_RE.match(line)
            if m is None:
                raise ParseError("expected 'state <id> {<atoms>} -> <ids>'", lineno)
            targets = m.group(3).split()
            if not targets:
                raise ParseError("state has no successors", lineno)
            try:
                succ = [int(t) for t in targets]
            except ValueError:
                raise ParseError("successor ids must be naturals", lineno) from None
            if any(t < 0 for t in succ):
                raise ParseError("successor ids must be naturals", lineno)
            names = m.group(2).replace(",", " ").split()
            blocks[-1][3].append((int(m.group(1)), names, succ, lineno))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno)

    if atoms is None:
        atoms = []
    atom_index = {a: i for i, a in enumerate(atoms)}
    instances = []
    for name, positive, block_line, states in blocks:
        if not states:
            raise ParseError(f"structure {name!r} has no states", block_line)
        ids = [s[0] for s in states]
        seen: set[int] = set()
        for sid, _, _, lineno in states:
            if sid in seen:
                raise ParseError(f"duplicate state id {sid}", lineno)
            seen.add(sid)
        if sorted(ids) != list(range(len(ids))):
            raise ParseError(f"state ids of {name!r} must be 0..{len(ids) - 1}", block_line)
        succ: list[list[int]] = [[] for _ in ids]
        labels: list[set[int]] = [set() for _ in ids]
        for sid, names, targets, lineno in states:
            for a in names:
                if a not in atom_index:
                    raise ParseError(f"undeclared atom {a!r}", lineno)
                labels[sid].add(atom_index[a])
            for t in targets:
                if t >= len(ids):
                    raise ParseError(f"unknown successor state {t}", lineno)
            succ[sid] = targets
        ks = KripkeStructure.build(succ, labels, atoms)
        instances.append(InputInstance(ks, 0, positive, name))
    return instances


# words reserved by the formula syntax cannot name atoms
_RESERVED = frozenset({"True", "False", "A", "E", "U", "AX", "AF", "AG", "EX", "EF", "EG",
                       "ATrue", "ETrue", "AFalse", "EFalse"})


def _is_ident(s: str) -> bool:
    return re.fullmatch(r"[A-Za-z_][A-Za-z0-9_.']*", s) is not None and s not in _RESERVED


def format_instances(instances: Sequence[InputInstance]) -> str:
    """Serialize instances; the initial state of each is renumbered to 0."""
    if not instances:
        return ""
    atoms = instances[0].structure.atoms
    out = ["atoms " + " ".join(atoms)] if atoms else ["atoms"]
    for inst in instances:
        if inst.structure.atoms != atoms:
            raise ValueError("instances disagree on the atom table")
        ks = inst.structure
        order = [inst.initial] + [q for q in range(ks.size) if q != inst.initial]
        index = {q: i for i, q in enumerate(order)}
        out.append(f"ks {inst.name} {'positive' if inst.positive else 'negative'}")
        for q in order:
            label = " ".join(ks.label_names(q))
            targets = " ".join(str(t) for t in sorted(index[t] for t in ks.succ[q]))
            out.append(f"state {index[q]} {{{label}}} -> {targets}")
    return "\n".join(out) + "\n"


def coalesce(instances: Sequence[InputInstance]) -> Sample:
    """Disjoint union of all instances; initial states form the sample."""
    if not any(i.positive for i in instances):
        raise SampleError("sample has no positive structure")
    if not any(not i.positive for i in instances):
        raise SampleError("sample has no negative structure")
    atoms = instances[0].structure.atoms
    succ: list[list[int]] = []
    labels: list[frozenset[int]] = []
    pos, neg, origins = set(), set(), []
    for inst in instances:
        ks = inst.structure
        if ks.atoms != atoms:
            raise SampleError("instances disagree on the atom table")
        offset = len(succ)
        succ.extend([t + offset for t in s] for s in ks.succ)
        labels.extend(ks.labels)
        (pos if inst.positive else neg).add(inst.initial + offset)
        origins.append((inst.name, offset, offset + ks.size))
    return Sample(KripkeStructure.build(succ, labels, atoms),
                  frozenset(pos), frozenset(neg), tuple(origins))
