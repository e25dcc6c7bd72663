"""Propositional encoding of bounded CTL learning.

For a bound ``n`` the encoding describes a forest of syntactic DAGs with
nodes ``1..n`` (children carry smaller indices than their parents) and
the truth of every node on every state of the sample structure.  Its
models are exactly the formulas of size at most ``n`` rooted in node
``n`` that are true on the positive states and false on the negative
ones.

Variable families, in allocation order:

* ``tau(i, o)``   node ``i`` is labelled ``o`` (an atom index or operator name)
* ``left(i, j)``, ``right(i, j)``  node ``j`` is the left/right child of ``i``;
  ``j = 0`` means no child, unary operators use the right child
* ``phi(i, q)``   state ``q`` satisfies the sub-formula rooted in ``i``
* ``rho(i, q, u)`` rank-``u`` truth of the finally/globally/until operator at ``i``
* ``nu(i)``       embedded-negation mode only: false iff node ``i`` is negated

Temporal operators other than next are encoded through their ranked
unfolding, with successor ranks ``min(bound(q'), u - 1)``; reading the
fixpoint equations directly admits spurious solutions on cycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .ctl.formula import BINARY, RANKED, Formula, Fragment
from .diameter import DiameterBound, scc_bound
from .kripke import Sample
from .sat.cnf import CnfInstance, tseitin
from .sat.prop import Prop, conj, disj, iff, implies, neg

__all__ = ["EncodingContext", "Encoder", "DecodeError", "build", "label_set"]

UNARY_OPS = ("not", "AX", "AF", "AG", "EX", "EF", "EG")
BINARY_OPS = ("and", "or", "AU", "EU")
ASCENDING = ("AF", "AU", "EF", "EU")
DESCENDING = ("AG", "EG")


class DecodeError(RuntimeError):
    """The assignment does not describe a well-formed formula."""


def label_set(atom_count: int, fragment: Fragment, embedded: bool) -> list:
    """Node labels: atom indices first, then True and the fragment's operators."""
    ops = [o for o in ("not", "and", "or", "AX", "AF", "AG", "AU", "EX", "EF", "EG", "EU")
           if o in fragment.operators]
    if embedded:
        ops.remove("not")
    return list(range(atom_count)) + ["true"] + ops


@dataclass
class EncodingContext:
    sample: Sample
    n: int
    fragment: Fragment
    bound: DiameterBound
    embedded: bool
    labels: list
    num_vars: int = 0
    tau_vars: dict = field(default_factory=dict)
    left_vars: dict = field(default_factory=dict)
    right_vars: dict = field(default_factory=dict)
    phi_vars: dict = field(default_factory=dict)
    rho_vars: dict = field(default_factory=dict)
    nu_vars: dict = field(default_factory=dict)
    clauses: list[tuple[str, Prop]] = field(default_factory=list)

    def _new(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def tau(self, i: int, o) -> int:
        return self.tau_vars[i, o]

    def left(self, i: int, j: int) -> int:
        return self.left_vars[i, j]

    def right(self, i: int, j: int) -> int:
        return self.right_vars[i, j]

    def phi(self, i: int, q: int) -> int:
        return self.phi_vars[i, q]

    def rho(self, i: int, q: int, u: int) -> int:
        return self.rho_vars[i, q, u]

    def nu(self, i: int) -> int:
        return self.nu_vars[i]

    def has(self, o) -> bool:
        return o in self.labels

    def add(self, family: str, prop: Prop) -> None:
        self.clauses.append((family, prop))

    def family_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for fam, _ in self.clauses:
            out[fam] = out.get(fam, 0) + 1
        return out

    def props(self, family: str) -> list[Prop]:
        return [p for fam, p in self.clauses if fam == family]

    def to_cnf(self) -> CnfInstance:
        return tseitin((p for _, p in self.clauses), self.num_vars)

    def decode(self, model) -> Formula:
        return decode(self, model)


class Encoder:
    """Builds an :class:`EncodingContext` family by family.

    Each ``family_*`` method yields the propositional constraints of one
    clause family; subclasses may override single families.
    """

    def __init__(self, sample: Sample, n: int, fragment: Fragment = Fragment.CTL_UNIV,
                 bound: DiameterBound | None = None, embed_negations: bool = False,
                 ascent_descent: bool = True):
        if n < 1:
            raise ValueError("the size bound must be at least 1")
        ks = sample.structure
        if bound is None:
            bound = scc_bound(ks)
        if len(bound) != ks.size:
            raise ValueError("diameter bound does not match the structure")
        self.ks = ks
        self.ascent_descent = ascent_descent
        self.ctx = EncodingContext(sample, n, fragment, bound, embed_negations,
                                   label_set(len(ks.atoms), fragment, embed_negations))

    # -- variable atlas -------------------------------------------------
    def allocate(self) -> None:
        ctx, n, Q = self.ctx, self.ctx.n, range(self.ks.size)
        for i in range(1, n + 1):
            for o in ctx.labels:
                ctx.tau_vars[i, o] = ctx._new()
        for table in (ctx.left_vars, ctx.right_vars):
            for i in range(1, n + 1):
                for j in range(i):
                    table[i, j] = ctx._new()
        for i in range(1, n + 1):
            for q in Q:
                ctx.phi_vars[i, q] = ctx._new()
        for i in range(1, n + 1):
            for q in Q:
                for u in range(ctx.bound[q] + 1):
                    ctx.rho_vars[i, q, u] = ctx._new()
        if ctx.embedded:
            for i in range(1, n + 1):
                ctx.nu_vars[i] = ctx._new()

    def build(self) -> EncodingContext:
        self.allocate()
        for name in self.family_names():
            for prop in getattr(self, "family_" + name)():
                self.ctx.add(name, prop)
        return self.ctx

    def family_names(self) -> list[str]:
        names = ["xor_tau", "xor_l", "xor_r", "ar_0", "ar_1", "ar_2",
                 "sem_top", "sem_a", "sem_not", "sem_and", "sem_or", "sem_AX", "sem_EX",
                 "sem_rho", "no_rho", "base_rho"]
        if self.ascent_descent:
            names += ["ascent_rho", "descent_rho"]
        names += ["sem_AF", "sem_AG", "sem_AU", "sem_EF", "sem_EG", "sem_EU", "sem_phi"]
        return names

    # -- helpers --------------------------------------------------------
    def defined(self, i: int, q: int) -> Prop:
        """Left side of node ``i``'s semantic equivalence: its value before its own negation."""
        p = self.ctx.phi(i, q)
        if not self.ctx.embedded:
            return p
        v = self.ctx.nu(i)
        return disj((conj((-v, -p)), conj((v, p))))

    def ranked_ops(self) -> list[str]:
        return [o for o in self.ctx.labels if o in RANKED]

    def succ_rank(self, i: int, t: int, u: int) -> int:
        return self.ctx.rho(i, t, min(self.ctx.bound[t], u - 1))

    # -- syntactic DAG --------------------------------------------------
    def family_xor_tau(self) -> Iterator[Prop]:
        ctx = self.ctx
        for i in range(1, ctx.n + 1):
            vs = [ctx.tau(i, o) for o in ctx.labels]
            yield disj(vs)
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    yield disj((-vs[a], -vs[b]))

    def _xor_child(self, table: dict) -> Iterator[Prop]:
        for i in range(1, self.ctx.n + 1):
            vs = [table[i, j] for j in range(i)]
            yield disj(vs)
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    yield disj((-vs[a], -vs[b]))

    def family_xor_l(self) -> Iterator[Prop]:
        return self._xor_child(self.ctx.left_vars)

    def family_xor_r(self) -> Iterator[Prop]:
        return self._xor_child(self.ctx.right_vars)

    def family_ar_0(self) -> Iterator[Prop]:
        ctx = self.ctx
        for i in range(1, ctx.n + 1):
            for o in ctx.labels:
                if isinstance(o, int) or o == "true":
                    yield implies(ctx.tau(i, o), conj((ctx.left(i, 0), ctx.right(i, 0))))

    def family_ar_1(self) -> Iterator[Prop]:
        ctx = self.ctx
        for i in range(1, ctx.n + 1):
            for o in UNARY_OPS:
                if ctx.has(o):
                    yield implies(ctx.tau(i, o), conj((ctx.left(i, 0), -ctx.right(i, 0))))

    def family_ar_2(self) -> Iterator[Prop]:
        ctx = self.ctx
        for i in range(1, ctx.n + 1):
            for o in BINARY_OPS:
                if ctx.has(o):
                    yield implies(ctx.tau(i, o), conj((-ctx.left(i, 0), -ctx.right(i, 0))))

    # -- boolean and next semantics -------------------------------------
    def family_sem_top(self) -> Iterator[Prop]:
        ctx = self.ctx
        for i in range(1, ctx.n + 1):
            for q in range(self.ks.size):
                yield implies(ctx.tau(i, "true"), self.defined(i, q))

    def family_sem_a(self) -> Iterator[Prop]:
        ctx, ks = self.ctx, self.ks
        for i in range(1, ctx.n + 1):
            for q in range(ks.size):
                for a in range(len(ks.atoms)):
                    value = self.defined(i, q)
                    yield implies(ctx.tau(i, a), value if a in ks.labels[q] else neg(value))

    def family_sem_not(self) -> Iterator[Prop]:
        ctx = self.ctx
        if not ctx.has("not"):
            return
        for i in range(2, ctx.n + 1):
            for k in range(1, i):
                yield implies(conj((ctx.tau(i, "not"), ctx.right(i, k))),
                              conj([iff(ctx.phi(i, q), -ctx.phi(k, q)) for q in range(self.ks.size)]))

    def _binary_bool(self, op: str) -> Iterator[Prop]:
        ctx = self.ctx
        if not ctx.has(op):
            return
        combine = conj if op == "and" else disj
        for i in range(2, ctx.n + 1):
            for j in range(1, i):
                for k in range(1, i):
                    yield implies(
                        conj((ctx.tau(i, op), ctx.left(i, j), ctx.right(i, k))),
                        conj([iff(self.defined(i, q), combine((ctx.phi(j, q), ctx.phi(k, q))))
                              for q in range(self.ks.size)]))

    def family_sem_and(self) -> Iterator[Prop]:
        return self._binary_bool("and")

    def family_sem_or(self) -> Iterator[Prop]:
        return self._binary_bool("or")

    def _next(self, op: str) -> Iterator[Prop]:
        ctx, ks = self.ctx, self.ks
        if not ctx.has(op):
            return
        combine = conj if op == "AX" else disj
        for i in range(2, ctx.n + 1):
            for k in range(1, i):
                yield implies(
                    conj((ctx.tau(i, op), ctx.right(i, k))),
                    conj([iff(self.defined(i, q), combine([ctx.phi(k, t) for t in ks.succ[q]]))
                          for q in range(ks.size)]))

    def family_sem_AX(self) -> Iterator[Prop]:
        return self._next("AX")

    def family_sem_EX(self) -> Iterator[Prop]:
        return self._next("EX")

    # -- ranked semantics -----------------------------------------------
    def family_sem_rho(self) -> Iterator[Prop]:
        ctx = self.ctx
        ops = self.ranked_ops()
        if not ops:
            return
        for i in range(2, ctx.n + 1):
            yield implies(disj([ctx.tau(i, o) for o in ops]),
                          conj([iff(self.defined(i, q), ctx.rho(i, q, ctx.bound[q]))
                                for q in range(self.ks.size)]))

    def family_no_rho(self) -> Iterator[Prop]:
        ctx = self.ctx
        ops = self.ranked_ops()
        for i in range(1, ctx.n + 1):
            off = [-ctx.rho(i, q, u) for q in range(self.ks.size) for u in range(ctx.bound[q] + 1)]
            if ops:
                yield implies(conj([-ctx.tau(i, o) for o in ops]), conj(off))
            else:
                yield conj(off)

    def family_base_rho(self) -> Iterator[Prop]:
        ctx = self.ctx
        ops = self.ranked_ops()
        if not ops:
            return
        for i in range(2, ctx.n + 1):
            for k in range(1, i):
                yield implies(conj((disj([ctx.tau(i, o) for o in ops]), ctx.right(i, k))),
                              conj([iff(ctx.rho(i, q, 0), ctx.phi(k, q)) for q in range(self.ks.size)]))

    def _monotone(self, ops: tuple[str, ...], ascending: bool) -> Iterator[Prop]:
        ctx = self.ctx
        ops = [o for o in ops if ctx.has(o)]
        if not ops:
            return
        for i in range(2, ctx.n + 1):
            steps = []
            for q in range(self.ks.size):
                for u in range(1, ctx.bound[q] + 1):
                    lo, hi = ctx.rho(i, q, u - 1), ctx.rho(i, q, u)
                    steps.append(implies(lo, hi) if ascending else implies(hi, lo))
            if steps:
                yield implies(disj([ctx.tau(i, o) for o in ops]), conj(steps))

    def family_ascent_rho(self) -> Iterator[Prop]:
        return self._monotone(ASCENDING, True)

    def family_descent_rho(self) -> Iterator[Prop]:
        return self._monotone(DESCENDING, False)

    def _ranked(self, op: str) -> Iterator[Prop]:
        ctx, ks = self.ctx, self.ks
        if not ctx.has(op):
            return
        combine = conj if op[0] == "A" else disj
        binary = op in BINARY
        for i in range(2, ctx.n + 1):
            for j in (range(1, i) if binary else (None,)):
                for k in range(1, i):
                    steps = []
                    for q in range(ks.size):
                        for u in range(1, ctx.bound[q] + 1):
                            succ = combine([self.succ_rank(i, t, u) for t in ks.succ[q]])
                            if op in ("AF", "EF"):
                                body = disj((ctx.phi(k, q), succ))
                            elif op in ("AG", "EG"):
                                body = conj((ctx.phi(k, q), succ))
                            else:
                                body = disj((ctx.phi(k, q), conj((ctx.phi(j, q), succ))))
                            steps.append(iff(ctx.rho(i, q, u), body))
                    if not steps:
                        continue
                    guard = (ctx.tau(i, op), ctx.left(i, j), ctx.right(i, k)) if binary \
                        else (ctx.tau(i, op), ctx.right(i, k))
                    yield implies(conj(guard), conj(steps))

    def family_sem_AF(self) -> Iterator[Prop]:
        return self._ranked("AF")

    def family_sem_AG(self) -> Iterator[Prop]:
        return self._ranked("AG")

    def family_sem_AU(self) -> Iterator[Prop]:
        return self._ranked("AU")

    def family_sem_EF(self) -> Iterator[Prop]:
        return self._ranked("EF")

    def family_sem_EG(self) -> Iterator[Prop]:
        return self._ranked("EG")

    def family_sem_EU(self) -> Iterator[Prop]:
        return self._ranked("EU")

    # -- sample ---------------------------------------------------------
    def family_sem_phi(self) -> Iterator[Prop]:
        ctx, sample = self.ctx, self.ctx.sample
        yield conj([ctx.phi(ctx.n, q) for q in sorted(sample.positives)]
                   + [-ctx.phi(ctx.n, q) for q in sorted(sample.negatives)])


def build(sample: Sample, n: int, fragment: Fragment = Fragment.CTL_UNIV,
          bound: DiameterBound | None = None, embed_negations: bool = False,
          ascent_descent: bool = True) -> EncodingContext:
    return Encoder(sample, n, fragment, bound, embed_negations, ascent_descent).build()


def decode(ctx: EncodingContext, model) -> Formula:
    """Read the DAG rooted in node ``n`` off a satisfying assignment."""
    atoms = ctx.sample.structure.atoms
    memo: dict[int, Formula] = {}

    def pick(table: dict, i: int, what: str) -> int:
        chosen = [j for j in range(i) if model[table[i, j]]]
        if len(chosen) != 1:
            raise DecodeError(f"node {i} has {len(chosen)} {what} children")
        return chosen[0]

    def node(i: int) -> Formula:
        if i in memo:
            return memo[i]
        chosen = [o for o in ctx.labels if model[ctx.tau(i, o)]]
        if len(chosen) != 1:
            raise DecodeError(f"node {i} carries {len(chosen)} labels")
        o = chosen[0]
        lj, rk = pick(ctx.left_vars, i, "left"), pick(ctx.right_vars, i, "right")
        if isinstance(o, int) or o == "true":
            if lj or rk:
                raise DecodeError(f"leaf node {i} has children")
            f = Formula("atom", atom=atoms[o]) if isinstance(o, int) else Formula("true")
        elif o in BINARY:
            if not lj or not rk:
                raise DecodeError(f"binary node {i} lacks a child")
            f = Formula(o, left=node(lj), right=node(rk))
        else:
            if lj or not rk:
                raise DecodeError(f"unary node {i} must have exactly a right child")
            f = Formula(o, right=node(rk))
        if ctx.embedded and not model[ctx.nu(i)]:
            f = f.negated()
        memo[i] = f
        return f

    return node(ctx.n)
