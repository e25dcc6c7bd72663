"""Learning minimal CTL formulas that separate positive from negative Kripke structures."""

from .kripke import (
    KripkeStructure, InputInstance, Sample, ParseError, SampleError,
    parse_instances, format_instances, coalesce,
)
from .bisim import BisimResult, InconsistentSample, Partition, check_sample, minimize, refine
from .diameter import DiameterBound, coarse_bound, diameter_bound, scc_bound
from .ctl import Formula, Fragment, check, check_bounded, format_formula, parse_formula, size
from .explicit import distinguish, separating_formula
from .encoder import EncodingContext, build
from .learner import LearnerConfig, LearnOutcome, learn
from .benchgen import MutationOp, make_sample, mutate

__all__ = [
    "KripkeStructure", "InputInstance", "Sample", "ParseError", "SampleError",
    "parse_instances", "format_instances", "coalesce",
    "BisimResult", "InconsistentSample", "Partition", "check_sample", "minimize", "refine",
    "DiameterBound", "coarse_bound", "diameter_bound", "scc_bound",
    "Formula", "Fragment", "check", "check_bounded", "format_formula", "parse_formula", "size",
    "distinguish", "separating_formula",
    "EncodingContext", "build",
    "LearnerConfig", "LearnOutcome", "learn",
    "MutationOp", "make_sample", "mutate",
]
