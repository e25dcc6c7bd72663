"""Compare the compiled and pure-Python CDCL cores on a few fixed workloads.

    python3 benchmarks/bench_solver.py [--repeat N]
"""

import argparse
import itertools
import random
import statistics
import time

from ctlearn.ctl import Fragment
from ctlearn.encoder import build
from ctlearn.kripke import InputInstance, KripkeStructure, coalesce
from ctlearn.sat import BACKEND, backend_solve


def pigeonhole(p, h):
    var = lambda i, j: i * h + j + 1
    clauses = [tuple(var(i, j) for j in range(h)) for i in range(p)]
    for j in range(h):
        for i1, i2 in itertools.combinations(range(p), 2):
            clauses.append((-var(i1, j), -var(i2, j)))
    return p * h, clauses


def random_3sat(n, ratio, seed):
    rng = random.Random(seed)
    return n, [tuple(v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), 3))
               for _ in range(int(n * ratio))]


def learning_instance(n):
    # positive: a turns true after three steps; negative: it never does
    pos = KripkeStructure.build([[1], [2], [3], [3]], [[], [], [], [0]], ["a", "b"])
    neg = KripkeStructure.build([[1], [2], [0]], [[], [1], []], ["a", "b"])
    sample = coalesce([InputInstance(pos, 0, True, "p"), InputInstance(neg, 0, False, "n")])
    cnf = build(sample, n, Fragment.CTL).to_cnf()
    return cnf.num_vars, list(cnf.clauses)


WORKLOADS = {
    "pigeonhole 7/6 (unsat)": lambda: pigeonhole(7, 6),
    "pigeonhole 8/7 (unsat)": lambda: pigeonhole(8, 7),
    "random 3-sat n=150 r=4.26": lambda: random_3sat(150, 4.26, 1),
    "random 3-sat n=200 r=4.0": lambda: random_3sat(200, 4.0, 2),
    "learning encoding n=4": lambda: learning_instance(4),
    "learning encoding n=6": lambda: learning_instance(6),
}


def timed(backend, num_vars, clauses, repeat):
    times, verdict = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        verdict, _ = backend_solve(num_vars, clauses, backend=backend)
        times.append(time.perf_counter() - t)
    return statistics.median(times), verdict


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = ["python"] + (["cython"] if BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled core not built; timing the Python core only")
    print(f"{'workload':<28} {'vars':>6} {'clauses':>8} {'result':>7}"
          + "".join(f" {b + ' (s)':>12}" for b in backends) + ("   speedup" if len(backends) == 2 else ""))
    for name, make in WORKLOADS.items():
        num_vars, clauses = make()
        row, verdicts = [], set()
        for b in backends:
            sec, verdict = timed(b, num_vars, clauses, args.repeat)
            row.append(sec)
            verdicts.add(verdict)
        if len(verdicts) != 1:
            raise SystemExit(f"backends disagree on {name}")
        result = {True: "sat", False: "unsat"}[verdicts.pop()]
        line = f"{name:<28} {num_vars:>6} {len(clauses):>8} {result:>7}" + "".join(f" {s:>12.4f}" for s in row)
        if len(row) == 2:
            line += f"   {row[0] / row[1]:>6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
