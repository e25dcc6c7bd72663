"""Tseitin conversion of propositional formulas to CNF."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .prop import Prop

__all__ = ["CnfInstance", "Tseitin", "tseitin"]


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    # variables 1..atlas_size are the encoder's own; the rest are Tseitin auxiliaries
    atlas_size: int = 0

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, model) -> bool:
        """``model[v]`` is the truth of variable ``v`` (index 0 unused)."""
        return all(any(model[l] if l > 0 else not model[-l] for l in c) for c in self.clauses)


class Tseitin:
    """Incremental converter; fresh variables are numbered after ``first_free - 1``."""

    def __init__(self, first_free: int):
        self.atlas_size = first_free - 1
        self.next_var = first_free
        self.clauses: list[tuple[int, ...]] = []
        self._defs: dict[tuple, int] = {}
        self._true: int | None = None

    def fresh(self) -> int:
        v = self.next_var
        self.next_var += 1
        return v

    def _emit(self, lits: Iterable[int]) -> None:
        seen: set[int] = set()
        out = []
        for l in lits:
            if -l in seen:
                return
            if l not in seen:
                seen.add(l)
                out.append(l)
        self.clauses.append(tuple(out))

    def _const_true(self) -> int:
        if self._true is None:
            self._true = self.fresh()
            self.clauses.append((self._true,))
        return self._true

    def lit(self, f: Prop) -> int:
        """A literal equivalent to ``f``, defining auxiliaries as needed."""
        if isinstance(f, int):
            return f
        op = f[0]
        if op == "not":
            return -self.lit(f[1])
        if op == "imp":
            return self.lit(("or", (("not", f[1]), f[2])))
        t = self._defs.get(f)
        if t is not None:
            return t
        if op == "and" or op == "or":
            kids = [self.lit(g) for g in f[1]]
            if not kids:
                t = self._const_true() if op == "and" else -self._const_true()
            elif len(kids) == 1:
                t = kids[0]
            else:
                t = self.fresh()
                if op == "and":
                    for k in kids:
                        self._emit((-t, k))
                    self._emit([t] + [-k for k in kids])
                else:
                    for k in kids:
                        self._emit((t, -k))
                    self._emit([-t] + kids)
        elif op == "iff":
            a, b = self.lit(f[1]), self.lit(f[2])
            t = self.fresh()
            self._emit((-t, -a, b))
            self._emit((-t, a, -b))
            self._emit((t, a, b))
            self._emit((t, -a, -b))
        else:
            raise ValueError(f"unknown connective {op!r}")
        self._defs[f] = t
        return t

    def _disjuncts(self, f: Prop, out: list[int]) -> None:
        if isinstance(f, int):
            out.append(f)
            return
        op = f[0]
        if op == "or":
            for g in f[1]:
                self._disjuncts(g, out)
        elif op == "imp":
            self._disjuncts(("not", f[1]), out)
            self._disjuncts(f[2], out)
        elif op == "not" and not isinstance(f[1], int) and f[1][0] == "and":
            for g in f[1][1]:
                self._disjuncts(("not", g), out)
        elif op == "not" and not isinstance(f[1], int) and f[1][0] == "not":
            self._disjuncts(f[1][1], out)
        else:
            out.append(self.lit(f))

    def require(self, f: Prop, guard: tuple[int, ...] = ()) -> None:
        """Add clauses forcing ``f`` whenever every literal of ``guard`` is false."""
        if isinstance(f, int):
            self._emit(guard + (f,))
            return
        op = f[0]
        if op == "and":
            for g in f[1]:
                self.require(g, guard)
        elif op == "imp":
            lits: list[int] = []
            self._disjuncts(("not", f[1]), lits)
            self.require(f[2], guard + tuple(lits))
        elif op == "iff":
            a, b = self.lit(f[1]), self.lit(f[2])
            self._emit(guard + (-a, b))
            self._emit(guard + (a, -b))
        elif op == "not" and not isinstance(f[1], int) and f[1][0] == "or":
            for g in f[1][1]:
                self.require(("not", g), guard)
        elif op == "not" and not isinstance(f[1], int) and f[1][0] == "not":
            self.require(f[1][1], guard)
        else:
            lits = []
            self._disjuncts(f, lits)
            self._emit(guard + tuple(lits))

    def instance(self) -> CnfInstance:
        return CnfInstance(self.next_var - 1, tuple(self.clauses), self.atlas_size)


def tseitin(formulas: Iterable[Prop], num_vars: int) -> CnfInstance:
    """Equisatisfiable CNF of the conjunction of ``formulas`` over variables ``1..num_vars``."""
    conv = Tseitin(num_vars + 1)
    for f in formulas:
        conv.require(f)
    return conv.instance()
