"""Standalone DIMACS solver: ``python -m ctlearn.sat FILE [--timeout S] [--backend NAME]``.

Prints competition-format ``s``/``v`` lines and exits 10 (SAT), 20 (UNSAT)
or 0 (unknown), so it can stand in for any external solver.
"""

import argparse
import sys

from .dimacs import format_solver_output, parse_dimacs
from .solver import backend_solve


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="python -m ctlearn.sat")
    parser.add_argument("file")
    parser.add_argument("--timeout", type=float, default=None)
    parser.add_argument("--backend", choices=["cython", "python"], default=None)
    args = parser.parse_args(argv)
    with open(args.file) as fh:
        cnf = parse_dimacs(fh.read())
    result, model = backend_solve(cnf.num_vars, cnf.clauses, args.timeout, backend=args.backend)
    status = {True: "sat", False: "unsat", None: "unknown"}[result]
    sys.stdout.write(format_solver_output(status, model))
    return {"sat": 10, "unsat": 20, "unknown": 0}[status]


if __name__ == "__main__":
    sys.exit(main())
