"""Hash-consed CTL formulas.

Every node is interned, so structurally equal subterms are the same
object and the size of a formula is simply the number of distinct nodes
reachable from its root.  A node may carry an embedded negation flag
(``neg``), which denotes the negation of the node without costing an
extra node.  Unary operators keep their operand in ``right``.
"""

from __future__ import annotations

import threading
import weakref
from enum import Enum
from typing import Iterator

__all__ = [
    "Formula",
    "Fragment",
    "TRUE",
    "FALSE",
    "Atom",
    "Not",
    "And",
    "Or",
    "AX", "AF", "AG", "AU", "EX", "EF", "EG", "EU",
    "UNARY", "BINARY", "TEMPORAL", "RANKED",
    "size", "tree_size", "normalize", "embed", "subformulas", "atoms_of", "operators_of",
]

UNARY = frozenset({"not", "AX", "AF", "AG", "EX", "EF", "EG"})
BINARY = frozenset({"and", "or", "AU", "EU"})
TEMPORAL = frozenset({"AX", "AF", "AG", "AU", "EX", "EF", "EG", "EU"})
# operators evaluated through ranked (bounded) semantics
RANKED = frozenset({"AF", "AG", "AU", "EF", "EG", "EU"})
UNIVERSAL = frozenset({"AF", "AU"})


class Formula:
    __slots__ = ("op", "atom", "left", "right", "neg", "_hash", "__weakref__")

    _table: "weakref.WeakValueDictionary[tuple, Formula]" = weakref.WeakValueDictionary()
    _lock = threading.Lock()

    op: str
    atom: str | None
    left: "Formula | None"
    right: "Formula | None"
    neg: bool

    def __new__(cls, op: str, atom: str | None = None, left: "Formula | None" = None,
                right: "Formula | None" = None, neg: bool = False):
        if op == "atom":
            if atom is None or left is not None or right is not None:
                raise ValueError("atoms carry a name and no children")
        elif op == "true":
            if atom is not None or left is not None or right is not None:
                raise ValueError("True has no children")
        elif op in UNARY:
            if right is None or left is not None or atom is not None:
                raise ValueError(f"{op} takes exactly one (right) child")
        elif op in BINARY:
            if left is None or right is None or atom is not None:
                raise ValueError(f"{op} takes two children")
        else:
            raise ValueError(f"unknown operator {op!r}")
        key = (op, atom, left, right, neg)
        with cls._lock:
            node = cls._table.get(key)
            if node is None:
                node = object.__new__(cls)
                object.__setattr__(node, "op", op)
                object.__setattr__(node, "atom", atom)
                object.__setattr__(node, "left", left)
                object.__setattr__(node, "right", right)
                object.__setattr__(node, "neg", neg)
                object.__setattr__(node, "_hash", hash(key))
                cls._table[key] = node
        return node

    def __setattr__(self, name, value):
        raise AttributeError("Formula nodes are immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        # interning makes identity the structural equality
        return self is other

    def __reduce__(self):
        return (Formula, (self.op, self.atom, self.left, self.right, self.neg))

    @property
    def child(self) -> "Formula":
        return self.right

    def children(self) -> tuple["Formula", ...]:
        return tuple(c for c in (self.left, self.right) if c is not None)

    def negated(self) -> "Formula":
        """Toggle the embedded negation flag."""
        return Formula(self.op, self.atom, self.left, self.right, not self.neg)

    def __str__(self) -> str:
        from .syntax import format_formula
        return format_formula(self)

    def __repr__(self) -> str:
        return f"Formula({str(self)!r})"

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


TRUE = Formula("true")
FALSE = Formula("true", neg=True)


def Atom(name: str) -> Formula:
    return Formula("atom", atom=name)


def Not(f: Formula) -> Formula:
    return Formula("not", right=f)


def And(f: Formula, g: Formula) -> Formula:
    return Formula("and", left=f, right=g)


def Or(f: Formula, g: Formula) -> Formula:
    return Formula("or", left=f, right=g)


def AX(f: Formula) -> Formula:
    return Formula("AX", right=f)


def AF(f: Formula) -> Formula:
    return Formula("AF", right=f)


def AG(f: Formula) -> Formula:
    return Formula("AG", right=f)


def AU(f: Formula, g: Formula) -> Formula:
    return Formula("AU", left=f, right=g)


def EX(f: Formula) -> Formula:
    return Formula("EX", right=f)


def EF(f: Formula) -> Formula:
    return Formula("EF", right=f)


def EG(f: Formula) -> Formula:
    return Formula("EG", right=f)


def EU(f: Formula, g: Formula) -> Formula:
    return Formula("EU", left=f, right=g)


class Fragment(Enum):
    CTL_UNIV = "ctl-univ"
    CTL = "ctl"
    CTL_U = "ctl-u"

    @property
    def operators(self) -> frozenset[str]:
        return _FRAGMENT_OPS[self]

    def contains(self, f: Formula, embedded: bool = False) -> bool:
        ops = operators_of(f) - {"atom", "true"}
        if embedded:
            ops -= {"not"}
        return ops <= self.operators


_FRAGMENT_OPS = {
    Fragment.CTL_UNIV: frozenset({"not", "and", "or", "AX", "AF", "AG", "AU"}),
    Fragment.CTL: frozenset({"not", "and", "or", "AX", "AF", "AG", "AU", "EX", "EF", "EG", "EU"}),
    Fragment.CTL_U: frozenset({"not", "or", "EX", "EG", "EU"}),
}


def subformulas(f: Formula) -> list[Formula]:
    """Distinct nodes reachable from ``f``, children before parents."""
    seen: set[Formula] = set()
    order: list[Formula] = []
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        for c in reversed(node.children()):
            if c not in seen:
                stack.append((c, False))
    return order


def size(f: Formula) -> int:
    """Number of nodes of the smallest syntactic DAG."""
    return len(subformulas(f))


def tree_size(f: Formula) -> int:
    """Number of nodes of the syntax tree, without any sharing."""
    memo: dict[Formula, int] = {}
    for node in subformulas(f):
        memo[node] = 1 + sum(memo[c] for c in node.children())
    return memo[f]


def _iter_nodes(f: Formula) -> Iterator[Formula]:
    return iter(subformulas(f))


def atoms_of(f: Formula) -> set[str]:
    return {n.atom for n in _iter_nodes(f) if n.op == "atom"}


def operators_of(f: Formula) -> set[str]:
    ops = {n.op for n in _iter_nodes(f)}
    if any(n.neg for n in _iter_nodes(f)):
        ops.add("not")
    return ops


def normalize(f: Formula) -> Formula:
    """Replace embedded negation flags with explicit negation nodes."""
    memo: dict[Formula, Formula] = {}
    for node in subformulas(f):
        left = memo[node.left] if node.left is not None else None
        right = memo[node.right] if node.right is not None else None
        plain = Formula(node.op, node.atom, left, right)
        memo[node] = Not(plain) if node.neg else plain
    return memo[f]


def embed(f: Formula) -> Formula:
    """Fold explicit negation nodes into the embedded flag of their operand."""
    memo: dict[Formula, Formula] = {}
    for node in subformulas(f):
        if node.op == "not":
            inner = memo[node.right]
            out = inner.negated()
        else:
            left = memo[node.left] if node.left is not None else None
            right = memo[node.right] if node.right is not None else None
            out = Formula(node.op, node.atom, left, right)
        memo[node] = out.negated() if node.neg else out
    return memo[f]


def _neg(f: Formula) -> Formula:
    return f.right if f.op == "not" else Not(f)


def translate(f: Formula, fragment: Fragment) -> Formula:
    """An equivalent formula using only ``fragment``'s operators.

    Rewrites with the usual dualities; double negations created along the
    way are cancelled.
    """
    memo: dict[Formula, Formula] = {}
    ops = fragment.operators
    for node in subformulas(normalize(f)):
        g = memo.get(node.left) if node.left is not None else None
        h = memo.get(node.right) if node.right is not None else None
        op = node.op
        if op in ("atom", "true"):
            out = node
        elif op == "not":
            out = _neg(h)
        elif op in ops:
            out = Formula(op, left=g, right=h)
        elif op == "and":
            out = _neg(Or(_neg(g), _neg(h)))
        elif op in ("AX", "AF", "AG") and fragment is Fragment.CTL_U:
            if op == "AX":
                out = _neg(EX(_neg(h)))
            elif op == "AF":
                out = _neg(EG(_neg(h)))
            else:
                out = _neg(EU(TRUE, _neg(h)))
        elif op == "AU" and fragment is Fragment.CTL_U:
            both = _neg(Or(g, h))  # !g & !h
            out = _neg(Or(EU(_neg(h), both), EG(_neg(h))))
        elif op == "EF" and fragment is Fragment.CTL_U:
            out = EU(TRUE, h)
        elif op == "EX":
            out = _neg(AX(_neg(h)))
        elif op == "EF":
            out = _neg(AG(_neg(h)))
        elif op == "EG":
            out = _neg(AF(_neg(h)))
        elif op == "EU":
            both = And(_neg(g), _neg(h))
            out = _neg(Or(AU(_neg(h), both), AG(_neg(h))))
        else:
            raise ValueError(f"cannot express {op} in {fragment.value}")
        memo[node] = out
    return memo[normalize(f)]
