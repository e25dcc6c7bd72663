import random

from hypothesis import given, settings, strategies as st

from ctlearn.diameter import coarse_bound, diameter_bound, scc_bound
from ctlearn.kripke import KripkeStructure

from oracles import SEVEN_ALPHA, SEVEN_BETA, brute_alpha, seven_state, three_cycle, random_structure


def test_single_loop():
    ks = KripkeStructure.build([[0]], [[]], [])
    assert coarse_bound(ks).values == (0,)
    assert scc_bound(ks).values == (0,)


def test_seven_state():
    ks = seven_state()
    assert coarse_bound(ks).values == (6,) * 7
    assert scc_bound(ks).values == SEVEN_BETA
    assert brute_alpha(ks) == SEVEN_ALPHA


def test_chain_and_cycle():
    chain = KripkeStructure.build([[1], [2], [2]], [[], [], []], [])
    assert scc_bound(chain).values == (2, 1, 0)
    assert coarse_bound(three_cycle()).values == (2, 2, 2)
    assert scc_bound(three_cycle()).values == (2, 2, 2) == brute_alpha(three_cycle())


def test_dispatch():
    assert diameter_bound(seven_state(), "coarse").kind == "coarse"
    assert diameter_bound(seven_state(), "scc").values == SEVEN_BETA


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 10))
def test_sound_and_below_coarse(seed, n):
    ks = random_structure(random.Random(seed), n)
    alpha = brute_alpha(ks)
    beta = scc_bound(ks).values
    assert all(a <= b <= n - 1 for a, b in zip(alpha, beta))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 10))
def test_exact_on_dags(seed, n):
    # edges only go forward; the last state loops on itself
    rng = random.Random(seed)
    succ = [sorted(rng.sample(range(q + 1, n), rng.randint(1, min(2, n - q - 1)))) if q < n - 1 else [q]
            for q in range(n)]
    ks = KripkeStructure.build(succ, [[]] * n, [])
    assert scc_bound(ks).values == brute_alpha(ks)
