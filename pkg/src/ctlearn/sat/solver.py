"""Solver front end: in-process CDCL (compiled when available) or an external DIMACS solver."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cnf import CnfInstance
from .dimacs import SolverError, run_external

try:
    from ._cdcl import solve as _native_solve
except ImportError:  # extension not built
    _native_solve = None
from ._cdcl_py import solve as _python_solve

__all__ = ["SolverVerdict", "BACKEND", "solve_cnf", "backend_solve"]

BACKEND = "cython" if _native_solve is not None else "python"


@dataclass
class SolverVerdict:
    status: str  # "sat", "unsat" or "unknown"
    model: list[bool] | None = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.status == "sat") != (self.model is not None):
            raise ValueError("a model accompanies exactly the sat verdicts")

    @property
    def sat(self) -> bool:
        return self.status == "sat"


def backend_solve(num_vars: int, clauses, timeout: float | None = None,
                  max_conflicts: int | None = None, backend: str | None = None):
    """Dispatch to the compiled or pure-Python CDCL core."""
    backend = backend or BACKEND
    if backend == "cython":
        if _native_solve is None:
            raise RuntimeError("compiled solver core is not built")
        return _native_solve(num_vars, clauses, timeout, max_conflicts)
    if backend == "python":
        return _python_solve(num_vars, clauses, timeout, max_conflicts)
    raise ValueError(f"unknown backend {backend!r}")


def solve_cnf(cnf: CnfInstance, command: str | None = None, timeout: float | None = None,
              backend: str | None = None) -> SolverVerdict:
    """Solve ``cnf``; a returned model is always checked against every clause."""
    start = time.monotonic()
    if command:
        status, model, _ = run_external(cnf, command, timeout)
        used = command
    else:
        result, model = backend_solve(cnf.num_vars, cnf.clauses, timeout, backend=backend)
        status = {True: "sat", False: "unsat", None: "unknown"}[result]
        used = f"internal-{backend or BACKEND}"
    elapsed = time.monotonic() - start
    if status == "sat" and not cnf.satisfied_by(model):
        raise SolverError(f"solver {used!r} returned a model violating the instance")
    stats = {"solver": used, "time": elapsed, "variables": cnf.num_vars, "clauses": cnf.num_clauses}
    return SolverVerdict(status, model, stats)
