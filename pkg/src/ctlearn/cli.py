"""Command-line entry point: ``ctlearn {learn,explicit,check,mutate,encode} ...``.

Exit status: 0 success, 1 inconsistent sample, 2 timeout or exhausted
search, 3 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .benchgen import MutationError, mutant_instances
from .bisim import InconsistentSample, check_sample, minimize
from .ctl.checker import satisfying_states
from .ctl.formula import Fragment, normalize, size, tree_size
from .ctl.syntax import FormulaSyntaxError, format_formula, parse_formula
from .diameter import diameter_bound
from .encoder import build
from .explicit import separating_formula
from .kripke import ParseError, SampleError, coalesce, format_instances, parse_instances
from .learner import LearnerConfig, LearnerError, SearchExhausted, SolverTimeout, learn
from .sat.dimacs import SolverError, emit_dimacs

EXIT_OK, EXIT_INCONSISTENT, EXIT_RESOURCES, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return parse_instances(_read(path))


def _encoding_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fragment", choices=[f.value for f in Fragment], default="ctl-univ")
    p.add_argument("--diameter", choices=["coarse", "scc"], default="scc")
    p.add_argument("--embed-negations", action="store_true")
    p.add_argument("--no-ascent-descent", action="store_true")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctlearn", description="Learn minimal CTL formulas separating Kripke structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="learn a minimal separating formula")
    p.add_argument("sample")
    _encoding_flags(p)
    p.add_argument("--solver", help="external DIMACS solver command (default: built-in)")
    p.add_argument("--timeout", type=float, help="overall time budget in seconds")
    p.add_argument("--max-size", type=int, help="largest formula size to try")

    p = sub.add_parser("explicit", help="print the explicit separating formula")
    p.add_argument("sample")

    p = sub.add_parser("check", help="model-check a formula on every structure of a sample file")
    p.add_argument("sample")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula")
    g.add_argument("--formula-file")

    p = sub.add_parser("mutate", help="pair a structure with a random k-mutant")
    p.add_argument("sample")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--structure", help="name of the structure to mutate (default: first)")

    p = sub.add_parser("encode", help="emit the DIMACS encoding for one size bound")
    p.add_argument("sample")
    p.add_argument("--n", type=int, required=True)
    _encoding_flags(p)
    return parser


def _cmd_learn(args) -> int:
    sample = coalesce(_load(args.sample))
    config = LearnerConfig(
        fragment=Fragment(args.fragment),
        diameter=args.diameter,
        embed_negations=args.embed_negations,
        max_n=args.max_size,
        solver=args.solver,
        timeout=args.timeout,
        ascent_descent=not args.no_ascent_descent,
    )
    try:
        out = learn(sample, config)
    except LearnerError as exc:
        _print_iterations(exc.iterations, sys.stderr)
        raise
    print(format_formula(out.formula))
    metric = "embedded" if out.embedded_metric else "plain"
    print(f"# size {out.size} ({metric} metric)")
    print("# options " + " ".join(f"{k}={v}" for k, v in config.axes().items()))
    print(f"# states {sample.structure.size} minimized {out.minimized_states} cap {out.cap}")
    _print_iterations(out.iterations, sys.stdout)
    return EXIT_OK


def _print_iterations(iterations, stream) -> None:
    for it in iterations:
        print(f"# n={it.n} vars={it.variables} clauses={it.clauses} "
              f"encode={it.encode_time:.3f}s solve={it.solve_time:.3f}s {it.status}", file=stream)


def _cmd_explicit(args) -> int:
    sample = coalesce(_load(args.sample))
    small = minimize(sample)
    f = separating_formula(small)
    print(format_formula(f))
    print(f"# size {size(f)} tree-size {tree_size(f)}")
    return EXIT_OK


def _cmd_check(args) -> int:
    text = args.formula if args.formula is not None else _read(args.formula_file).strip()
    f = normalize(parse_formula(text))
    instances = _load(args.sample)
    ok = True
    width = max(len(i.name) for i in instances) if instances else 0
    for inst in instances:
        holds = satisfying_states(inst.structure, f)[inst.initial]
        expected = holds == inst.positive
        ok &= expected
        role = "positive" if inst.positive else "negative"
        print(f"{inst.name:<{width}}  {role:<8}  {'holds' if holds else 'fails'}"
              f"{'' if expected else '  (mismatch)'}")
    print(f"# {'consistent' if ok else 'inconsistent'} with the sample")
    return EXIT_OK


def _cmd_mutate(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    instances = _load(args.sample)
    if args.structure is not None:
        chosen = [i for i in instances if i.name == args.structure]
        if not chosen:
            raise UsageError(f"no structure named {args.structure!r}")
    else:
        chosen = instances[:1]
    if not chosen:
        raise UsageError("the file holds no structure")
    src = chosen[0]
    pair, ops = mutant_instances(src.structure, args.k, args.seed, src.initial, src.name)
    for op in ops:
        print(f"mutation: {op}", file=sys.stderr)
    try:
        check_sample(coalesce(pair))
    except InconsistentSample:
        print("error: the mutant is bisimilar to the original; try another seed", file=sys.stderr)
        return EXIT_INCONSISTENT
    sys.stdout.write(format_instances(pair))
    return EXIT_OK


def _cmd_encode(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    sample = minimize(coalesce(_load(args.sample)))
    bound = diameter_bound(sample.structure, args.diameter)
    ctx = build(sample, args.n, Fragment(args.fragment), bound, args.embed_negations,
                not args.no_ascent_descent)
    cnf = ctx.to_cnf()
    sys.stdout.write(f"c size bound {args.n}, encoder variables 1..{ctx.num_vars}\n")
    sys.stdout.write(emit_dimacs(cnf))
    return EXIT_OK


COMMANDS = {
    "learn": _cmd_learn,
    "explicit": _cmd_explicit,
    "check": _cmd_check,
    "mutate": _cmd_mutate,
    "encode": _cmd_encode,
}


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except InconsistentSample as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (SearchExhausted, SolverTimeout, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCES
    except ParseError as exc:
        print(f"error: {args.sample}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormulaSyntaxError, SampleError, UsageError, MutationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
