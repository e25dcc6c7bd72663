"""Minimal formula learning: solve the encoding for n = 1, 2, ... until SAT."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .bisim import check_sample, minimize, refine
from .ctl.checker import is_consistent
from .ctl.formula import Formula, Fragment, embed, normalize, size, translate
from .diameter import BoundKind, diameter_bound
from .encoder import build
from .explicit import separating_formula
from .kripke import Sample
from .sat.solver import solve_cnf

__all__ = [
    "LearnerConfig",
    "Iteration",
    "LearnOutcome",
    "LearnerError",
    "SearchExhausted",
    "SolverTimeout",
    "VerificationError",
    "learn",
    "size_cap",
]


class LearnerError(RuntimeError):
    def __init__(self, message: str, iterations: list | None = None):
        super().__init__(message)
        self.iterations = iterations or []


class SearchExhausted(LearnerError):
    """Every bound up to the cap was UNSAT."""


class SolverTimeout(LearnerError):
    """The solver answered unknown before a SAT bound was reached."""


class VerificationError(LearnerError):
    """A decoded formula failed the model check; indicates a bug."""


@dataclass(frozen=True)
class LearnerConfig:
    fragment: Fragment = Fragment.CTL_UNIV
    diameter: BoundKind = "scc"
    embed_negations: bool = False
    max_n: int | None = None
    solver: str | None = None  # external command; None uses the built-in CDCL
    timeout: float | None = None  # overall budget in seconds
    ascent_descent: bool = True
    backend: str | None = None

    def __post_init__(self):
        if self.max_n is not None and self.max_n < 1:
            raise ValueError("max_n must be at least 1")

    def axes(self) -> dict:
        return {
            "fragment": self.fragment.value,
            "diameter": self.diameter,
            "embed_negations": self.embed_negations,
            "ascent_descent": self.ascent_descent,
            "solver": self.solver or "internal",
        }


@dataclass(frozen=True)
class Iteration:
    n: int
    variables: int
    clauses: int
    encode_time: float
    solve_time: float
    status: str


@dataclass
class LearnOutcome:
    formula: Formula
    size: int
    embedded_metric: bool
    iterations: list[Iteration] = field(default_factory=list)
    config: LearnerConfig = field(default_factory=LearnerConfig)
    minimized_states: int = 0
    cap: int = 0

    @property
    def plain_formula(self) -> Formula:
        return normalize(self.formula)


def size_cap(sample: Sample, fragment: Fragment, embedded: bool, history=None) -> int:
    """Size of the explicit separating formula rewritten into ``fragment``.

    A consistent formula of that size exists, so the search never needs
    to go further.
    """
    f = translate(separating_formula(sample, history), fragment)
    return size(embed(f)) if embedded else size(f)


def learn(sample: Sample, config: LearnerConfig | None = None) -> LearnOutcome:
    config = config or LearnerConfig()
    start = time.monotonic()
    check_sample(sample)  # raises InconsistentSample
    small = minimize(sample)
    history = refine(small.structure)
    cap = config.max_n or size_cap(small, config.fragment, config.embed_negations, history)
    bound = diameter_bound(small.structure, config.diameter)
    iterations: list[Iteration] = []
    for n in range(1, cap + 1):
        remaining = None
        if config.timeout is not None:
            remaining = config.timeout - (time.monotonic() - start)
            if remaining <= 0:
                raise SolverTimeout(f"time budget spent before bound {n}", iterations)
        t0 = time.monotonic()
        ctx = build(small, n, config.fragment, bound, config.embed_negations, config.ascent_descent)
        cnf = ctx.to_cnf()
        t1 = time.monotonic()
        verdict = solve_cnf(cnf, config.solver, remaining, config.backend)
        iterations.append(Iteration(n, cnf.num_vars, cnf.num_clauses, t1 - t0,
                                    verdict.stats["time"], verdict.status))
        if verdict.status == "unknown":
            raise SolverTimeout(f"solver gave no answer at bound {n}", iterations)
        if verdict.sat:
            f = ctx.decode(verdict.model)
            plain = normalize(f)
            ks = sample.structure
            if not is_consistent(ks, sample.positives, sample.negatives, plain):
                raise VerificationError(f"learnt formula {plain} fails the model check", iterations)
            return LearnOutcome(f, n, config.embed_negations, iterations, config,
                                small.structure.size, cap)
    raise SearchExhausted(f"no consistent formula of size at most {cap}", iterations)
