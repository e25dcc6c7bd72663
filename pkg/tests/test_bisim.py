import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ctlearn.bisim import InconsistentSample, check_sample, minimize, refine
from ctlearn.ctl.checker import satisfying_states
from ctlearn.kripke import InputInstance, KripkeStructure, Sample, coalesce

from oracles import (
    MaskEvaluator, three_cycle, is_bisimulation, naive_rounds, random_formula, random_structure,
)


def test_three_cycle_single_class():
    r = refine(three_cycle())
    assert r.final.num_classes == 1
    assert r.characteristic_number == 0


def test_label_split():
    ks = KripkeStructure.build([[0], [1]], [[0], []], ["a"])
    r = refine(ks)
    assert r.final.classes == [[0], [1]]
    assert r.characteristic_number == 0


def test_chain_collapses():
    # q0 -> q1 -> q2 (loop) and an extra loop state, all unlabelled
    ks = KripkeStructure.build([[1], [2], [2], [3]], [[], [], [], []], ["a"])
    r = refine(ks)
    assert r.final.num_classes == 1
    assert len(naive_rounds(ks)[-1]) == 16


def _one_step_sample():
    # positive 0 -> 1 {a}; negative 2 -> 3 {}
    ks = KripkeStructure.build([[1], [1], [3], [3]], [[], [0], [], []], ["a"])
    return Sample(ks, frozenset({0}), frozenset({2}))


def test_check_sample_values():
    ks = KripkeStructure.build([[0], [1]], [[0], []], ["a"])
    assert check_sample(Sample(ks, frozenset({0}), frozenset({1}))) == 0
    assert check_sample(_one_step_sample()) == 1


def test_check_sample_violation():
    ks = KripkeStructure.build([[0], [1]], [[0], [0]], ["a"])
    with pytest.raises(InconsistentSample) as info:
        check_sample(Sample(ks, frozenset({0}), frozenset({1})))
    assert (info.value.positive, info.value.negative) == (0, 1)


def test_minimize_fig6_plus_fresh():
    ks = KripkeStructure.build([[1], [2], [0], [3]], [[0], [0], [0], [1]], ["a", "b"])
    small = minimize(Sample(ks, frozenset({0}), frozenset({3})))
    assert small.structure.size == 2


def test_minimize_idempotent():
    ks = KripkeStructure.build([[0], [1]], [[0], []], ["a"])
    s = Sample(ks, frozenset({0}), frozenset({1}))
    once = minimize(s)
    assert once.structure.size == 2
    assert minimize(once).structure == once.structure


def test_minimize_dedups_copies():
    pos = KripkeStructure.build([[1], [0]], [[0], []], ["a"])
    neg = KripkeStructure.build([[0]], [[]], ["a"])
    s = coalesce([InputInstance(pos, 0, True, "p1"), InputInstance(pos, 0, True, "p2"),
                  InputInstance(neg, 0, False, "n")])
    small = minimize(s)
    assert len(small.positives) == 1
    assert small.structure.size == 3


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 12))
def test_rounds_match_naive(seed, n):
    ks = random_structure(random.Random(seed), n, atoms=2)
    r = refine(ks)
    rounds = naive_rounds(ks)
    assert r.characteristic_number == len(rounds) - 1
    for i, rel in enumerate(rounds):
        got = {(p, q) for p in range(n) for q in range(n) if r.equivalent(p, q, i)}
        assert got == rel


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 12))
def test_coarsest(seed, n):
    ks = random_structure(random.Random(seed), n, atoms=2)
    classes = refine(ks).final.classes
    rel = {(p, q) for c in classes for p in c for q in c}
    assert is_bisimulation(ks, rel)
    for c1, c2 in itertools.combinations(classes, 2):
        merged = rel | {(p, q) for p in c1 + c2 for q in c1 + c2}
        assert not is_bisimulation(ks, merged)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 10))
def test_history_strictly_refines(seed, n):
    r = refine(random_structure(random.Random(seed), n))
    counts = [p.num_classes for p in r.history]
    assert all(a < b for a, b in zip(counts, counts[1:]))
    assert r.at(len(counts) + 3) == r.final


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 8))
def test_quotient_preserves_formulas(seed, n):
    rng = random.Random(seed)
    ks = random_structure(rng, n)
    s = Sample(ks, frozenset({0}), frozenset())
    small = minimize(s)
    cls = refine(ks).final.class_of
    for _ in range(5):
        f = random_formula(rng, ks.atoms, 4)
        big = MaskEvaluator(ks)
        mini = satisfying_states(small.structure, f)
        assert all(big.holds(f, q) == mini[cls[q]] for q in range(n))
