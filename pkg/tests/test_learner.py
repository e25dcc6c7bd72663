import random
import sys

import pytest
from hypothesis import given, settings, strategies as st

from ctlearn.bisim import InconsistentSample, check_sample
from ctlearn.ctl import TRUE, Atom, Fragment, format_formula, size, tree_size
from ctlearn.encoder import EncodingContext
from ctlearn.kripke import InputInstance, KripkeStructure, Sample, coalesce
from ctlearn.learner import (
    LearnerConfig, SearchExhausted, SolverTimeout, VerificationError, learn, size_cap,
)

from oracles import MaskEvaluator, three_cycle, minimal_size, random_sample, separates

a = Atom("a")
FRAGMENTS = list(Fragment)


def _pair(pos: KripkeStructure, neg: KripkeStructure) -> Sample:
    return coalesce([InputInstance(pos, 0, True, "p"), InputInstance(neg, 0, False, "n")])


def _loop(labels, atoms=("a",)):
    return KripkeStructure.build([[0]], [labels], list(atoms))


def _reach_a():
    """q0 -> q1, a only on q1, versus a bare self-loop."""
    return _pair(KripkeStructure.build([[1], [1]], [[], [0]], ["a"]), _loop([]))


def test_atom_separates():
    s = _pair(_loop([0], ("a", "b")), _loop([1], ("a", "b")))
    out = learn(s)
    assert out.formula is a and out.size == 1
    assert [it.status for it in out.iterations] == ["sat"]


@pytest.mark.parametrize("fragment", FRAGMENTS)
@pytest.mark.parametrize("embedded", [False, True])
def test_reachability_needs_two(fragment, embedded):
    s = _reach_a()
    out = learn(s, LearnerConfig(fragment=fragment, embed_negations=embedded))
    assert out.size == 2
    assert [it.status for it in out.iterations] == ["unsat", "sat"]
    assert fragment.contains(out.formula, embedded=embedded)
    assert separates(MaskEvaluator(s.structure), out.plain_formula, s)
    if not embedded:
        assert format_formula(out.formula) in {"AF a", "EF a", "AX a", "EX a"}


def test_three_cycle_cycle_atom():
    s = _pair(three_cycle(), _loop([]))
    out = learn(s, LearnerConfig(fragment=Fragment.CTL_UNIV))
    assert out.formula is a and out.size == 1


def test_inconsistent_rejected():
    s = _pair(_loop([0]), _loop([0]))
    with pytest.raises(InconsistentSample):
        learn(s)


def test_search_exhausted():
    with pytest.raises(SearchExhausted) as info:
        learn(_reach_a(), LearnerConfig(max_n=1))
    assert [it.status for it in info.value.iterations] == ["unsat"]


def test_timeout():
    with pytest.raises(SolverTimeout):
        learn(_reach_a(), LearnerConfig(timeout=1e-9))


def test_max_n_validated():
    with pytest.raises(ValueError):
        LearnerConfig(max_n=0)


def test_verification_gate(monkeypatch):
    monkeypatch.setattr(EncodingContext, "decode", lambda self, model: TRUE)
    with pytest.raises(VerificationError):
        learn(_reach_a())


def test_external_solver():
    cfg = LearnerConfig(solver=f"{sys.executable} -m ctlearn.sat", timeout=120)
    out = learn(_reach_a(), cfg)
    assert out.size == 2
    assert out.config.axes()["solver"].endswith("-m ctlearn.sat")


def test_verifies_against_original_sample():
    # duplicated bisimilar positives collapse before encoding
    ks = KripkeStructure.build([[1], [1], [3], [3], [4]], [[], [0], [], [0], []], ["a"])
    s = Sample(ks, frozenset({0, 2}), frozenset({4}))
    out = learn(s)
    assert out.minimized_states < ks.size
    assert separates(MaskEvaluator(ks), out.plain_formula, s)


def _consistent(rng, **kw):
    while True:
        s = random_sample(rng, **kw)
        try:
            check_sample(s)
        except InconsistentSample:
            continue
        return s


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_minimal_against_enumeration(seed):
    s = _consistent(random.Random(seed), max_states=3)
    want = minimal_size(s, Fragment.CTL_UNIV)
    out = learn(s, LearnerConfig(fragment=Fragment.CTL_UNIV))
    assert separates(MaskEvaluator(s.structure), out.formula, s)
    if want is not None:
        assert out.size == want[0]
    else:
        assert out.size > 4


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_fragment_monotone(seed):
    # CTL contains the universal fragment, so its minimum can only be smaller
    s = _consistent(random.Random(seed), max_states=3)
    univ = learn(s, LearnerConfig(fragment=Fragment.CTL_UNIV)).size
    full = learn(s, LearnerConfig(fragment=Fragment.CTL)).size
    assert full <= univ


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(FRAGMENTS), st.booleans())
def test_within_cap(seed, fragment, embedded):
    s = _consistent(random.Random(seed), max_states=3)
    out = learn(s, LearnerConfig(fragment=fragment, embed_negations=embedded))
    assert out.size <= out.cap
    assert out.cap <= size_cap(s, fragment, embedded)
    assert size(out.formula) <= out.size
    assert tree_size(out.formula) >= size(out.formula)
