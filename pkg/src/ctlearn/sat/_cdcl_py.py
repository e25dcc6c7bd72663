"""Pure-Python CDCL solver; the reference for the compiled ``_cdcl`` module.

Two watched literals, first-UIP clause learning, VSIDS with a binary
heap, phase saving, Luby restarts, and learnt-clause reduction by LBD
at restart boundaries.  Internal literal ``2*v`` is ``v`` and ``2*v+1``
is its negation.
"""

from __future__ import annotations

import time

__all__ = ["solve"]

_UNDEF = -1
_LUBY_UNIT = 100


def _luby(i: int) -> int:
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


class _Solver:
    def __init__(self, num_vars: int):
        n = num_vars
        self.n = n
        self.clauses: list[list[int] | None] = []
        self.learnt_lbd: dict[int, int] = {}
        self.watches: list[list[int]] = [[] for _ in range(2 * n + 2)]
        self.assign = [_UNDEF] * (n + 1)
        self.level = [0] * (n + 1)
        self.reason = [-1] * (n + 1)
        self.phase = [0] * (n + 1)
        self.activity = [0.0] * (n + 1)
        self.var_inc = 1.0
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.ok = True
        self.seen = [False] * (n + 1)
        self.heap: list[int] = []
        self.heap_pos = [-1] * (n + 1)
        for v in range(1, n + 1):
            self._heap_insert(v)
        self.conflicts = 0

    # heap keyed on activity (max at index 0)
    def _heap_up(self, i: int) -> None:
        heap, pos, act = self.heap, self.heap_pos, self.activity
        v = heap[i]
        while i > 0:
            parent = (i - 1) >> 1
            if act[heap[parent]] >= act[v]:
                break
            heap[i] = heap[parent]
            pos[heap[i]] = i
            i = parent
        heap[i] = v
        pos[v] = i

    def _heap_down(self, i: int) -> None:
        heap, pos, act = self.heap, self.heap_pos, self.activity
        v = heap[i]
        size = len(heap)
        while True:
            child = 2 * i + 1
            if child >= size:
                break
            if child + 1 < size and act[heap[child + 1]] > act[heap[child]]:
                child += 1
            if act[heap[child]] <= act[v]:
                break
            heap[i] = heap[child]
            pos[heap[i]] = i
            i = child
        heap[i] = v
        pos[v] = i

    def _heap_insert(self, v: int) -> None:
        if self.heap_pos[v] >= 0:
            return
        self.heap.append(v)
        self.heap_pos[v] = len(self.heap) - 1
        self._heap_up(len(self.heap) - 1)

    def _heap_pop(self) -> int:
        heap, pos = self.heap, self.heap_pos
        top = heap[0]
        last = heap.pop()
        pos[top] = -1
        if heap:
            heap[0] = last
            pos[last] = 0
            self._heap_down(0)
        return top

    def _bump(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for u in range(1, self.n + 1):
                act[u] *= 1e-100
            self.var_inc *= 1e-100
        if self.heap_pos[v] >= 0:
            self._heap_up(self.heap_pos[v])

    def _value(self, lit: int) -> int:
        a = self.assign[lit >> 1]
        if a == _UNDEF:
            return _UNDEF
        return 1 if a == (lit & 1) ^ 1 else 0

    def _enqueue(self, lit: int, reason: int) -> None:
        v = lit >> 1
        self.assign[v] = (lit & 1) ^ 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def add_clause(self, dimacs: list[int]) -> None:
        if not self.ok:
            return
        lits = []
        seen = set()
        for x in dimacs:
            lit = 2 * x if x > 0 else 2 * (-x) + 1
            if lit ^ 1 in seen:
                return
            if lit in seen:
                continue
            val = self._value(lit)
            if val == 1:
                return
            if val == 0:
                continue
            seen.add(lit)
            lits.append(lit)
        if not lits:
            self.ok = False
        elif len(lits) == 1:
            self._enqueue(lits[0], -1)
            if self._propagate() >= 0:
                self.ok = False
        else:
            self._attach(lits)

    def _attach(self, lits: list[int]) -> int:
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.watches[lits[0]].append(ci)
        self.watches[lits[1]].append(ci)
        return ci

    def _propagate(self) -> int:
        trail, watches, clauses, assign = self.trail, self.watches, self.clauses, self.assign
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            i = j = 0
            end = len(ws)
            while i < end:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c is None:
                    continue
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                a = assign[first >> 1]
                if a != _UNDEF and a == (first & 1) ^ 1:
                    ws[j] = ci
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    ak = assign[lk >> 1]
                    if ak == _UNDEF or ak == (lk & 1) ^ 1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(ci)
                        break
                else:
                    ws[j] = ci
                    j += 1
                    if a != _UNDEF:
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        return ci
                    self._enqueue(first, ci)
            del ws[j:]
        return -1

    def _analyze(self, confl: int) -> tuple[list[int], int, int]:
        seen, level, reason, trail = self.seen, self.level, self.reason, self.trail
        cur = len(self.trail_lim)
        learnt = [0]
        path = 0
        p = -1
        idx = len(trail) - 1
        c = confl
        while True:
            clause = self.clauses[c]
            for q in (clause if p == -1 else clause[1:]):
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if level[v] >= cur:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            c = reason[p >> 1]
            seen[p >> 1] = False
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1
        for q in learnt[1:]:
            seen[q >> 1] = False
        if len(learnt) == 1:
            back = 0
        else:
            best = 1
            for k in range(2, len(learnt)):
                if level[learnt[k] >> 1] > level[learnt[best] >> 1]:
                    best = k
            learnt[1], learnt[best] = learnt[best], learnt[1]
            back = level[learnt[1] >> 1]
        lbd = len({level[q >> 1] for q in learnt})
        return learnt, back, lbd

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        stop = self.trail_lim[lvl]
        for k in range(len(self.trail) - 1, stop - 1, -1):
            lit = self.trail[k]
            v = lit >> 1
            self.phase[v] = self.assign[v]
            self.assign[v] = _UNDEF
            self.reason[v] = -1
            self._heap_insert(v)
        del self.trail[stop:]
        del self.trail_lim[lvl:]
        self.qhead = stop

    def _pick(self) -> int:
        while self.heap:
            v = self._heap_pop()
            if self.assign[v] == _UNDEF:
                return 2 * v + (0 if self.phase[v] == 1 else 1)
        return -1

    def _reduce(self, keep: int) -> None:
        """Drop the worse half of learnt clauses; only called at level 0."""
        cands = sorted((lbd, -ci) for ci, lbd in self.learnt_lbd.items() if lbd > 2)
        drop = cands[len(cands) // 2:] if len(cands) > keep else []
        for _, nci in drop:
            ci = -nci
            self.clauses[ci] = None
            del self.learnt_lbd[ci]

    def solve(self, deadline: float | None, max_conflicts: int | None) -> bool | None:
        if not self.ok:
            return False
        if self._propagate() >= 0:
            self.ok = False
            return False
        restart = 0
        max_learnts = max(2000, len(self.clauses) // 3)
        while True:
            budget = _luby(restart) * _LUBY_UNIT
            restart += 1
            status = self._search(budget, deadline, max_conflicts)
            if status is not None:
                return status
            if (deadline is not None and time.monotonic() > deadline) or (
                    max_conflicts is not None and self.conflicts >= max_conflicts):
                return None
            self._cancel_until(0)
            if len(self.learnt_lbd) > max_learnts:
                self._reduce(max_learnts // 2)
                max_learnts = int(max_learnts * 1.1)

    def _search(self, budget: int, deadline: float | None, max_conflicts: int | None) -> bool | None:
        local = 0
        while True:
            confl = self._propagate()
            if confl >= 0:
                self.conflicts += 1
                local += 1
                if not self.trail_lim:
                    return False
                learnt, back, lbd = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    ci = self._attach(learnt)
                    self.learnt_lbd[ci] = lbd
                    self._enqueue(learnt[0], ci)
                self.var_inc /= 0.95
                if self.conflicts & 255 == 0:
                    if deadline is not None and time.monotonic() > deadline:
                        return None
                if max_conflicts is not None and self.conflicts >= max_conflicts:
                    return None
            else:
                if local >= budget:
                    return None
                lit = self._pick()
                if lit < 0:
                    return True
                self.trail_lim.append(len(self.trail))
                self._enqueue(lit, -1)

    def model(self) -> list[bool]:
        return [False] + [self.assign[v] == 1 for v in range(1, self.n + 1)]


def solve(num_vars: int, clauses, timeout: float | None = None,
          max_conflicts: int | None = None) -> tuple[bool | None, list[bool] | None]:
    """Solve a CNF given as DIMACS-style integer clauses.

    Returns ``(True, model)``, ``(False, None)``, or ``(None, None)`` when
    the time or conflict budget runs out.  ``model[v]`` is the value of
    variable ``v``; index 0 is unused.
    """
    deadline = None if timeout is None else time.monotonic() + timeout
    s = _Solver(num_vars)
    for c in clauses:
        s.add_clause(c)
        if not s.ok:
            return False, None
    status = s.solve(deadline, max_conflicts)
    if status:
        return True, s.model()
    return status, None
