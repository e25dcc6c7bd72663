"""Upper bounds on the recurrence diameter (longest simple path) of each state."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import networkx as nx

from .kripke import KripkeStructure

__all__ = ["DiameterBound", "coarse_bound", "scc_bound", "diameter_bound"]

BoundKind = Literal["coarse", "scc"]


@dataclass(frozen=True)
class DiameterBound:
    values: tuple[int, ...]
    kind: BoundKind

    def __getitem__(self, q: int) -> int:
        return self.values[q]

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def uniform(cls, size: int, value: int) -> "DiameterBound":
        return cls((value,) * size, "coarse")


def coarse_bound(ks: KripkeStructure) -> DiameterBound:
    return DiameterBound((ks.size - 1,) * ks.size, "coarse")


def scc_bound(ks: KripkeStructure) -> DiameterBound:
    """Heaviest path through the SCC condensation, SCCs weighted by size, minus one.

    A simple path can visit each state of an SCC at most once, so the
    weight of the heaviest condensation path from the SCC of ``q`` bounds
    the number of states on any simple path from ``q``.
    """
    g = nx.DiGraph()
    g.add_nodes_from(range(ks.size))
    g.add_edges_from((q, t) for q, targets in enumerate(ks.succ) for t in targets)
    dag = nx.condensation(g)
    heaviest: dict[int, int] = {}
    for c in reversed(list(nx.topological_sort(dag))):
        below = max((heaviest[d] for d in dag.successors(c)), default=0)
        heaviest[c] = len(dag.nodes[c]["members"]) + below
    scc_of = dag.graph["mapping"]
    return DiameterBound(tuple(heaviest[scc_of[q]] - 1 for q in range(ks.size)), "scc")


def diameter_bound(ks: KripkeStructure, kind: BoundKind) -> DiameterBound:
    if kind == "coarse":
        return coarse_bound(ks)
    if kind == "scc":
        return scc_bound(ks)
    raise ValueError(f"unknown diameter bound {kind!r}")
