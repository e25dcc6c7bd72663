"""DIMACS CNF text and the competition solver output format."""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
import time

from .cnf import CnfInstance

__all__ = [
    "SolverError",
    "emit_dimacs",
    "parse_dimacs",
    "parse_solver_output",
    "format_solver_output",
    "run_external",
]


class SolverError(RuntimeError):
    """The solver crashed or printed something we cannot trust."""


def emit_dimacs(cnf: CnfInstance) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines.extend(" ".join(map(str, c)) + " 0" if c else "0" for c in cnf.clauses)
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    num_vars = num_clauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or num_vars is not None:
                raise ValueError(f"line {lineno}: bad problem line")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise ValueError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise ValueError(f"line {lineno}: variable {abs(lit)} exceeds header")
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        raise ValueError("missing problem line")
    if len(clauses) != num_clauses:
        raise ValueError(f"header announces {num_clauses} clauses, found {len(clauses)}")
    return CnfInstance(num_vars, tuple(clauses))


def parse_solver_output(text: str, num_vars: int) -> tuple[str, list[bool] | None]:
    """Read ``s``/``v`` lines; returns (status, model) with status sat, unsat or unknown."""
    status = None
    values: dict[int, bool] = {}
    for line in text.splitlines():
        if line.startswith("s "):
            word = line[2:].strip()
            found = {"SATISFIABLE": "sat", "UNSATISFIABLE": "unsat", "UNKNOWN": "unknown"}.get(word)
            if found is None:
                raise SolverError(f"unrecognised status line {line!r}")
            if status is not None and status != found:
                raise SolverError("conflicting status lines")
            status = found
        elif line.startswith("v ") or line == "v":
            for tok in line[1:].split():
                try:
                    lit = int(tok)
                except ValueError:
                    raise SolverError(f"bad value token {tok!r}") from None
                if lit != 0:
                    if abs(lit) > num_vars:
                        raise SolverError(f"value for unknown variable {abs(lit)}")
                    values[abs(lit)] = lit > 0
    if status is None:
        raise SolverError("solver printed no status line")
    if status != "sat":
        return status, None
    if not values:
        raise SolverError("satisfiable verdict without a model")
    return status, [False] + [values.get(v, False) for v in range(1, num_vars + 1)]


def format_solver_output(status: str, model: list[bool] | None) -> str:
    word = {"sat": "SATISFIABLE", "unsat": "UNSATISFIABLE", "unknown": "UNKNOWN"}[status]
    lines = [f"s {word}"]
    if model is not None:
        lits = [v if model[v] else -v for v in range(1, len(model))]
        for k in range(0, len(lits), 16):
            lines.append("v " + " ".join(map(str, lits[k:k + 16])))
        lines.append("v 0")
    return "\n".join(lines) + "\n"


def run_external(cnf: CnfInstance, command: str, timeout: float | None = None) -> tuple[str, list[bool] | None, float]:
    """Run ``command <file.cnf>``; the exit status is ignored in favour of the ``s`` line."""
    fd, path = tempfile.mkstemp(suffix=".cnf")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(emit_dimacs(cnf))
        argv = shlex.split(command) + [path]
        start = time.monotonic()
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            return "unknown", None, time.monotonic() - start
        except OSError as exc:
            raise SolverError(f"cannot run solver {command!r}: {exc}") from exc
        elapsed = time.monotonic() - start
        try:
            status, model = parse_solver_output(proc.stdout, cnf.num_vars)
        except SolverError as exc:
            detail = proc.stderr.strip().splitlines()[-1:] if proc.stderr else []
            raise SolverError(f"{exc} (exit status {proc.returncode}{', ' + detail[0] if detail else ''})") from None
        return status, model, elapsed
    finally:
        os.unlink(path)
