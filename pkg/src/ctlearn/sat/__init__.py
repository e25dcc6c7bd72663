from .prop import TRUE, FALSE, Prop, conj, disj, neg, iff, implies, evaluate
from .cnf import CnfInstance, Tseitin, tseitin
from .dimacs import SolverError, emit_dimacs, parse_dimacs, parse_solver_output, run_external
from .solver import BACKEND, SolverVerdict, backend_solve, solve_cnf

__all__ = [
    "TRUE", "FALSE", "Prop", "conj", "disj", "neg", "iff", "implies", "evaluate",
    "CnfInstance", "Tseitin", "tseitin",
    "SolverError", "emit_dimacs", "parse_dimacs", "parse_solver_output", "run_external",
    "BACKEND", "SolverVerdict", "backend_solve", "solve_cnf",
]
