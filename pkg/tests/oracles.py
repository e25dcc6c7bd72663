"""Independent reference implementations and generators used across the tests.

Nothing here calls the production algorithms it is meant to check.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from ctlearn.ctl.formula import BINARY, Formula, Fragment
from ctlearn.kripke import InputInstance, KripkeStructure, Sample, coalesce


# -- small fixed structures ---------------------------------------------------

def seven_state() -> KripkeStructure:
    succ = [[1, 4], [2], [3, 6], [1], [5, 6], [4], [6]]
    return KripkeStructure.build(succ, [[]] * 7, ["a"])


# the quoted vector has alpha(q2) = 1, but q2 -> q3 -> q1 is a simple path of length 2
SEVEN_ALPHA_PRINTED = (3, 2, 1, 3, 1, 2, 0)
SEVEN_ALPHA = (3, 2, 2, 3, 1, 2, 0)
SEVEN_BETA = (4, 3, 3, 3, 2, 2, 0)


def three_cycle() -> KripkeStructure:
    """Three-state cycle, every state labelled a."""
    return KripkeStructure.build([[1], [2], [0]], [[0]] * 3, ["a"])


def three_cycle_sample() -> Sample:
    """The cycle as positive, a fresh state without a as negative."""
    ks = KripkeStructure.build([[1], [2], [0], [3]], [[0], [0], [0], []], ["a"])
    return Sample(ks, frozenset({0}), frozenset({3}))


# -- recurrence diameter ---------------------------------------------------

def brute_alpha(ks: KripkeStructure) -> tuple[int, ...]:
    """Longest simple path (in edges) from each state, by exhaustive DFS."""
    def longest(q: int, seen: frozenset) -> int:
        best = 0
        for t in ks.succ[q]:
            if t not in seen:
                best = max(best, 1 + longest(t, seen | {t}))
        return best
    return tuple(longest(q, frozenset({q})) for q in range(ks.size))


# -- bisimulation -----------------------------------------------------------

def _step(ks: KripkeStructure, rel: set) -> set:
    out = set()
    for p, q in rel:
        fwd = all(any((s, t) in rel for t in ks.succ[q]) for s in ks.succ[p])
        bwd = all(any((s, t) in rel for s in ks.succ[p]) for t in ks.succ[q])
        if fwd and bwd:
            out.add((p, q))
    return out


def naive_rounds(ks: KripkeStructure) -> list[set]:
    """Relations ~_0, ~_1, ... as explicit pair sets, until stable."""
    rel = {(p, q) for p in range(ks.size) for q in range(ks.size) if ks.labels[p] == ks.labels[q]}
    rounds = [rel]
    while True:
        nxt = _step(ks, rel)
        if nxt == rel:
            return rounds
        rounds.append(nxt)
        rel = nxt


def naive_bisimilar(ks: KripkeStructure) -> set:
    return naive_rounds(ks)[-1]


def is_bisimulation(ks: KripkeStructure, rel: set) -> bool:
    return all(ks.labels[p] == ks.labels[q] for p, q in rel) and _step(ks, rel) == rel


# -- CTL semantics on bitmasks -------------------------------------------------

class MaskEvaluator:
    """Plain least/greatest fixpoint iteration over state bitmasks."""

    def __init__(self, ks: KripkeStructure):
        self.ks = ks
        self.full = (1 << ks.size) - 1
        self.succ = [sum(1 << t for t in ts) for ts in ks.succ]
        self.memo: dict[Formula, int] = {}

    def ex(self, m: int) -> int:
        return sum(1 << q for q, s in enumerate(self.succ) if s & m)

    def ax(self, m: int) -> int:
        return sum(1 << q for q, s in enumerate(self.succ) if s & ~m == 0)

    def lfp(self, f) -> int:
        z = 0
        while True:
            nz = f(z)
            if nz == z:
                return z
            z = nz

    def gfp(self, f) -> int:
        z = self.full
        while True:
            nz = f(z)
            if nz == z:
                return z
            z = nz

    def __call__(self, f: Formula) -> int:
        if f in self.memo:
            return self.memo[f]
        op = f.op
        g = self(f.left) if f.left is not None else 0
        h = self(f.right) if f.right is not None else 0
        if op == "true":
            m = self.full
        elif op == "atom":
            a = self.ks.atoms.index(f.atom)
            m = sum(1 << q for q, lab in enumerate(self.ks.labels) if a in lab)
        elif op == "not":
            m = self.full & ~h
        elif op == "and":
            m = g & h
        elif op == "or":
            m = g | h
        elif op == "EX":
            m = self.ex(h)
        elif op == "AX":
            m = self.ax(h)
        elif op == "EF":
            m = self.lfp(lambda z: h | self.ex(z))
        elif op == "AF":
            m = self.lfp(lambda z: h | self.ax(z))
        elif op == "EG":
            m = self.gfp(lambda z: h & self.ex(z))
        elif op == "AG":
            m = self.gfp(lambda z: h & self.ax(z))
        elif op == "EU":
            m = self.lfp(lambda z: h | (g & self.ex(z)))
        elif op == "AU":
            m = self.lfp(lambda z: h | (g & self.ax(z)))
        else:
            raise ValueError(op)
        if f.neg:
            m = self.full & ~m
        self.memo[f] = m
        return m

    def holds(self, f: Formula, q: int) -> bool:
        return bool(self(f) >> q & 1)


def separates(ev: MaskEvaluator, f: Formula, sample: Sample) -> bool:
    m = ev(f)
    return all(m >> q & 1 for q in sample.positives) and not any(m >> q & 1 for q in sample.negatives)


# -- formula enumeration ---------------------------------------------------------

@lru_cache(maxsize=None)
def formulas_by_size(atoms: tuple[str, ...], fragment: Fragment, max_size: int) -> tuple[tuple[Formula, ...], ...]:
    """All plain formulas of DAG size 1..max_size over the fragment, grouped by size.

    The DAG size of an operator node is one plus the size of the union of
    its children's node sets, so children may share nodes.
    """
    ops = sorted(fragment.operators)
    unary = [o for o in ops if o not in BINARY]
    binary = [o for o in ops if o in BINARY]
    nodes: dict[Formula, frozenset] = {}
    leaves = [Formula("atom", atom=a) for a in atoms] + [Formula("true")]
    for f in leaves:
        nodes[f] = frozenset({f})
    groups = [leaves]
    for k in range(2, max_size + 1):
        found: list[Formula] = []

        def add(g: Formula, below: frozenset) -> None:
            if g not in nodes:
                nodes[g] = below | {g}
                found.append(g)

        for f in groups[k - 2]:
            for o in unary:
                add(Formula(o, right=f), nodes[f])
        for o in binary:
            # one child has size k-1: the other must be one of its nodes
            for f in groups[k - 2]:
                sf = nodes[f]
                for h in sf:
                    add(Formula(o, left=f, right=h), sf)
                    add(Formula(o, left=h, right=f), sf)
            # both children smaller
            small = [g for grp in groups[:k - 2] for g in grp]
            for f in small:
                for h in small:
                    u = nodes[f] | nodes[h]
                    if len(u) == k - 1:
                        add(Formula(o, left=f, right=h), u)
        groups.append(found)
    return tuple(tuple(g) for g in groups)


def minimal_size(sample: Sample, fragment: Fragment, max_size: int = 4) -> tuple[int, Formula] | None:
    ev = MaskEvaluator(sample.structure)
    for k, group in enumerate(formulas_by_size(sample.structure.atoms, fragment, max_size), start=1):
        for f in group:
            if separates(ev, f, sample):
                return k, f
    return None


# -- propositional --------------------------------------------------------------

def brute_sat(num_vars: int, clauses) -> bool:
    for bits in itertools.product((False, True), repeat=num_vars):
        model = (False,) + bits
        if all(any(model[l] if l > 0 else not model[-l] for l in c) for c in clauses):
            return True
    return False


# -- generators -------------------------------------------------------------------

def random_structure(rng: random.Random, size: int, atoms: int = 2, max_out: int = 3) -> KripkeStructure:
    succ = [rng.sample(range(size), rng.randint(1, min(max_out, size))) for _ in range(size)]
    labels = [[a for a in range(atoms) if rng.random() < 0.5] for _ in range(size)]
    return KripkeStructure.build(succ, labels, "abcdefgh"[:atoms])


def random_formula(rng: random.Random, atoms: tuple[str, ...], budget: int,
                   ops=Fragment.CTL.operators) -> Formula:
    """Random plain formula whose tree has at most ``budget`` nodes."""
    if budget <= 1 or rng.random() < 0.2:
        if rng.random() < 0.15:
            return Formula("true")
        return Formula("atom", atom=rng.choice(atoms))
    choices = [o for o in ops if o not in BINARY or budget >= 3]
    op = rng.choice(sorted(choices))
    if op in BINARY:
        lb = rng.randint(1, budget - 2)
        return Formula(op, left=random_formula(rng, atoms, lb, ops),
                       right=random_formula(rng, atoms, budget - 1 - lb, ops))
    return Formula(op, right=random_formula(rng, atoms, budget - 1, ops))


def random_sample(rng: random.Random, max_states: int = 3, atoms: int = 2,
                  positives: int = 1, negatives: int = 1) -> Sample:
    """Coalesced sample of small random instances; may be inconsistent."""
    insts = []
    for i in range(positives + negatives):
        ks = random_structure(rng, rng.randint(1, max_states), atoms, max_out=2)
        insts.append(InputInstance(ks, 0, i < positives, f"k{i}"))
    return coalesce(insts)


def _eval3(f, model):
    """Three-valued evaluation; None stands for undetermined."""
    if isinstance(f, int):
        v = model[abs(f)]
        return v if v is None or f > 0 else not v
    op = f[0]
    if op in ("and", "or"):
        unknown = False
        for g in f[1]:
            r = _eval3(g, model)
            if r is None:
                unknown = True
            elif r == (op == "or"):
                return r
        return None if unknown else op == "and"
    if op == "not":
        r = _eval3(f[1], model)
        return None if r is None else not r
    x = _eval3(f[1], model)
    if op == "imp":
        if x is False:
            return True
        y = _eval3(f[2], model)
        if y is True:
            return True
        return None if x is None or y is None else False
    y = _eval3(f[2], model)
    return None if x is None or y is None else x == y


def backtrack_sat(props, num_vars: int) -> bool:
    """Satisfiability of a conjunction of propositional formulas over variables 1..num_vars.

    Chronological backtracking with three-valued evaluation of every
    formula that mentions the variable just assigned.
    """
    from ctlearn.sat.prop import variables

    props = list(props)
    touching: list[list] = [[] for _ in range(num_vars + 1)]
    model: list = [None] * (num_vars + 1)
    for p in props:
        vs = variables(p)
        if not vs and _eval3(p, model) is False:
            return False
        for v in vs:
            touching[v].append(p)

    def go(v: int) -> bool:
        if v > num_vars:
            return True
        for value in (False, True):
            model[v] = value
            if all(_eval3(p, model) is not False for p in touching[v]) and go(v + 1):
                return True
        model[v] = None
        return False

    return go(1)


# -- encoder fixtures -------------------------------------------------------

# the forest of the paper's Fig. 5: node -> (label, left, right); only 7, 5, 3, 2 hang off the root
AU_FOREST = {
    7: ("AU", 5, 3), 6: ("true", 0, 0), 5: ("a", 0, 0), 4: ("AX", 0, 1),
    3: ("not", 0, 2), 2: ("b", 0, 0), 1: ("c", 0, 0),
}


def forest_model(ctx, forest: dict, negated: frozenset = frozenset()) -> list[bool]:
    """Assignment over ctx's atlas that sets only tau/left/right (and nu) from a forest."""
    atoms = ctx.sample.structure.atoms
    model = [False] * (ctx.num_vars + 1)
    for i, (label, lj, rk) in forest.items():
        o = atoms.index(label) if label in atoms else label
        model[ctx.tau(i, o)] = True
        model[ctx.left(i, lj)] = True
        model[ctx.right(i, rk)] = True
        if ctx.embedded:
            model[ctx.nu(i)] = i not in negated
    return model


def naive_encoder_class():
    """The encoder with the fixpoint equation of AG written directly, no ranks.

    phi_i(q) <-> phi_k(q) and all phi_i(q') for successors q'.  On a cycle
    both the all-true and the all-false valuation satisfy it.
    """
    from ctlearn.encoder import Encoder
    from ctlearn.sat.prop import conj, iff, implies

    class NaiveEncoder(Encoder):
        def family_names(self):
            skip = {"sem_rho", "no_rho", "base_rho", "ascent_rho", "descent_rho", "sem_phi"}
            return [f for f in super().family_names() if f not in skip]

        def family_sem_AG(self):
            ctx, ks = self.ctx, self.ks
            for i in range(2, ctx.n + 1):
                for k in range(1, i):
                    yield implies(conj((ctx.tau(i, "AG"), ctx.right(i, k))), conj([
                        iff(ctx.phi(i, q), conj([ctx.phi(k, q)] + [ctx.phi(i, t) for t in ks.succ[q]]))
                        for q in range(ks.size)]))

    return NaiveEncoder
