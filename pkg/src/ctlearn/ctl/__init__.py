from .formula import (
    TRUE, FALSE, Formula, Fragment, Atom, Not, And, Or,
    AX, AF, AG, AU, EX, EF, EG, EU,
    size, tree_size, normalize, embed, subformulas, atoms_of, operators_of, translate,
)
from .syntax import FormulaSyntaxError, parse_formula, format_formula
from .checker import (
    satisfying_states, check, check_bounded, bounded_satisfying_states, rank_table, is_consistent, UnknownAtom,
)

__all__ = [
    "TRUE", "FALSE", "Formula", "Fragment", "Atom", "Not", "And", "Or",
    "AX", "AF", "AG", "AU", "EX", "EF", "EG", "EU",
    "size", "tree_size", "normalize", "embed", "subformulas", "atoms_of", "operators_of", "translate",
    "FormulaSyntaxError", "parse_formula", "format_formula",
    "satisfying_states", "check", "check_bounded", "bounded_satisfying_states", "rank_table",
    "is_consistent", "UnknownAtom",
]
