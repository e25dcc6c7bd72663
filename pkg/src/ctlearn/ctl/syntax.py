"""Text syntax for CTL formulas.

Grammar, loosest binding first::

    expr  := conj ('|' conj)*
    conj  := unary ('&' unary)*
    unary := '!' unary | ('AX'|'AF'|'AG'|'EX'|'EF'|'EG') unary
           | ('A'|'E') expr 'U' unary
           | 'True' | 'False' | IDENT | '(' expr ')'

``&`` and ``|`` associate to the left.
"""

from __future__ import annotations

import re

from .formula import (
    FALSE, TRUE, Formula, Atom, Not, And, Or, AF, EF, normalize,
)

__all__ = ["FormulaSyntaxError", "parse_formula", "format_formula", "KEYWORDS"]

KEYWORDS = frozenset({"True", "False", "A", "E", "U", "AX", "AF", "AG", "EX", "EF", "EG"})
_PREFIX = {"AX", "AF", "AG", "EX", "EF", "EG"}
_TOKEN = re.compile(r"(\s+)|([A-Za-z_][A-Za-z0-9_.']*)|(.)")


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            continue
        tok = m.group(0)
        if m.group(3) and tok not in "!&|()":
            raise FormulaSyntaxError(f"unexpected character {tok!r}", m.start())
        if tok in ("ATrue", "ETrue", "AFalse", "EFalse"):
            # quantifier glued to a constant, as in "ETrue U a"
            tokens.append((tok[0], m.start()))
            tokens.append((tok[1:], m.start() + 1))
            continue
        tokens.append((tok, m.start()))
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, fold_aliases: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.fold = fold_aliases

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if expected is not None and tok != expected:
            shown = repr(tok) if tok else "end of input"
            raise FormulaSyntaxError(f"expected {expected!r}, found {shown}", self.pos())
        self.i += 1
        return tok

    def expr(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok in _PREFIX:
            self.take()
            return Formula(tok, right=self.unary())
        if tok in ("A", "E"):
            self.take()
            left = self.expr()
            self.take("U")
            right = self.unary()
            if self.fold and left is TRUE:
                return (AF if tok == "A" else EF)(right)
            return Formula(tok + "U", left=left, right=right)
        if tok == "(":
            self.take()
            f = self.expr()
            self.take(")")
            return f
        if tok == "True":
            self.take()
            return TRUE
        if tok == "False":
            self.take()
            return FALSE
        if tok and tok not in KEYWORDS and tok not in "!&|()":
            self.take()
            return Atom(tok)
        shown = repr(tok) if tok else "end of input"
        raise FormulaSyntaxError(f"unexpected {shown}", self.pos())


def parse_formula(text: str, fold_aliases: bool = False) -> Formula:
    """Parse ``text``; with ``fold_aliases``, ``A True U f`` reads as ``AF f`` (same for E)."""
    p = _Parser(text, fold_aliases)
    f = p.expr()
    if p.peek():
        raise FormulaSyntaxError(f"trailing input {p.peek()!r}", p.pos())
    return f


_PREC = {"or": 1, "and": 2}


def format_formula(f: Formula) -> str:
    return _fmt(normalize(f), 0)


def _fmt(f: Formula, ctx: int) -> str:
    op = f.op
    if op == "atom":
        return f.atom
    if op == "true":
        return "True"
    if op == "not":
        return "!" + _fmt(f.right, 3)
    if op in _PREFIX:
        return f"{op} {_fmt(f.right, 3)}"
    if op in ("AU", "EU"):
        return f"{op[0]} {_fmt(f.left, 0)} U {_fmt(f.right, 3)}"
    prec = _PREC[op]
    sym = " & " if op == "and" else " | "
    text = _fmt(f.left, prec) + sym + _fmt(f.right, prec + 1)
    return f"({text})" if prec < ctx else text
