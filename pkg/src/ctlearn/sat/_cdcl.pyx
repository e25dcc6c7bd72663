# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled CDCL core; same algorithm and interface as ``_cdcl_py``."""

from libcpp.vector cimport vector

import time

cdef enum:
    UNDEF = -1
    LUBY_UNIT = 100


cdef int luby(int i):
    cdef int size = 1, seq = 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


cdef class _Solver:
    cdef int n
    cdef vector[vector[int]] clauses
    cdef vector[char] deleted
    cdef vector[int] lbd
    cdef vector[char] is_learnt
    cdef int num_learnts
    cdef vector[vector[int]] watches
    cdef vector[int] assign
    cdef vector[int] level
    cdef vector[int] reason
    cdef vector[int] phase
    cdef vector[double] activity
    cdef double var_inc
    cdef vector[int] trail
    cdef vector[int] trail_lim
    cdef int qhead
    cdef bint ok
    cdef vector[char] seen
    cdef vector[int] heap
    cdef vector[int] heap_pos
    cdef long conflicts
    cdef vector[int] level_stamp
    cdef int stamp

    def __init__(self, int num_vars):
        cdef int v
        self.n = num_vars
        self.watches.resize(2 * num_vars + 2)
        self.assign.assign(num_vars + 1, UNDEF)
        self.level.assign(num_vars + 1, 0)
        self.reason.assign(num_vars + 1, -1)
        self.phase.assign(num_vars + 1, 0)
        self.activity.assign(num_vars + 1, 0.0)
        self.seen.assign(num_vars + 1, 0)
        self.heap_pos.assign(num_vars + 1, -1)
        self.level_stamp.assign(num_vars + 2, 0)
        self.stamp = 0
        self.var_inc = 1.0
        self.qhead = 0
        self.ok = True
        self.conflicts = 0
        self.num_learnts = 0
        for v in range(1, num_vars + 1):
            self.heap_insert(v)

    cdef void heap_up(self, int i):
        cdef int v = self.heap[i]
        cdef int parent
        while i > 0:
            parent = (i - 1) >> 1
            if self.activity[self.heap[parent]] >= self.activity[v]:
                break
            self.heap[i] = self.heap[parent]
            self.heap_pos[self.heap[i]] = i
            i = parent
        self.heap[i] = v
        self.heap_pos[v] = i

    cdef void heap_down(self, int i):
        cdef int v = self.heap[i]
        cdef int size = self.heap.size()
        cdef int child
        while True:
            child = 2 * i + 1
            if child >= size:
                break
            if child + 1 < size and self.activity[self.heap[child + 1]] > self.activity[self.heap[child]]:
                child += 1
            if self.activity[self.heap[child]] <= self.activity[v]:
                break
            self.heap[i] = self.heap[child]
            self.heap_pos[self.heap[i]] = i
            i = child
        self.heap[i] = v
        self.heap_pos[v] = i

    cdef void heap_insert(self, int v):
        if self.heap_pos[v] >= 0:
            return
        self.heap.push_back(v)
        self.heap_pos[v] = self.heap.size() - 1
        self.heap_up(self.heap.size() - 1)

    cdef int heap_pop(self):
        cdef int top = self.heap[0]
        cdef int last = self.heap.back()
        self.heap.pop_back()
        self.heap_pos[top] = -1
        if self.heap.size() > 0:
            self.heap[0] = last
            self.heap_pos[last] = 0
            self.heap_down(0)
        return top

    cdef void bump(self, int v):
        cdef int u
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.n + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
        if self.heap_pos[v] >= 0:
            self.heap_up(self.heap_pos[v])

    cdef inline int value(self, int lit):
        cdef int a = self.assign[lit >> 1]
        if a == UNDEF:
            return UNDEF
        return 1 if a == ((lit & 1) ^ 1) else 0

    cdef inline void enqueue(self, int lit, int why):
        cdef int v = lit >> 1
        self.assign[v] = (lit & 1) ^ 1
        self.level[v] = self.trail_lim.size()
        self.reason[v] = why
        self.trail.push_back(lit)

    cdef int attach(self, vector[int]& lits, bint learnt, int lbd):
        cdef int ci = self.clauses.size()
        self.clauses.push_back(lits)
        self.deleted.push_back(0)
        self.is_learnt.push_back(learnt)
        self.lbd.push_back(lbd)
        if learnt:
            self.num_learnts += 1
        self.watches[lits[0]].push_back(ci)
        self.watches[lits[1]].push_back(ci)
        return ci

    def add_clause(self, dimacs):
        cdef vector[int] lits
        cdef int x, lit, val, k
        cdef bint dup
        if not self.ok:
            return
        for x in dimacs:
            lit = 2 * x if x > 0 else 2 * (-x) + 1
            dup = False
            for k in range(lits.size()):
                if lits[k] == (lit ^ 1):
                    return
                if lits[k] == lit:
                    dup = True
                    break
            if dup:
                continue
            val = self.value(lit)
            if val == 1:
                return
            if val == 0:
                continue
            lits.push_back(lit)
        if lits.size() == 0:
            self.ok = False
        elif lits.size() == 1:
            self.enqueue(lits[0], -1)
            if self.propagate() >= 0:
                self.ok = False
        else:
            self.attach(lits, False, 0)

    cdef int propagate(self):
        cdef int p, false_lit, ci, first, a, k, lk, ak, i, j, end
        cdef bint found
        cdef vector[int]* ws
        cdef vector[int]* c
        while self.qhead < <int>self.trail.size():
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = &self.watches[false_lit]
            i = 0
            j = 0
            end = ws.size()
            while i < end:
                ci = ws[0][i]
                i += 1
                if self.deleted[ci]:
                    continue
                c = &self.clauses[ci]
                if c[0][0] == false_lit:
                    c[0][0] = c[0][1]
                    c[0][1] = false_lit
                first = c[0][0]
                a = self.assign[first >> 1]
                if a != UNDEF and a == ((first & 1) ^ 1):
                    ws[0][j] = ci
                    j += 1
                    continue
                found = False
                for k in range(2, c.size()):
                    lk = c[0][k]
                    ak = self.assign[lk >> 1]
                    if ak == UNDEF or ak == ((lk & 1) ^ 1):
                        c[0][1] = lk
                        c[0][k] = false_lit
                        # lk != false_lit, so this never reallocates *ws
                        self.watches[lk].push_back(ci)
                        found = True
                        break
                if found:
                    continue
                ws[0][j] = ci
                j += 1
                if a != UNDEF:
                    while i < end:
                        ws[0][j] = ws[0][i]
                        j += 1
                        i += 1
                    ws.resize(j)
                    self.qhead = self.trail.size()
                    return ci
                self.enqueue(first, ci)
            ws.resize(j)
        return -1

    cdef int analyze(self, int confl, vector[int]& learnt, int* lbd_out):
        cdef int cur = self.trail_lim.size()
        cdef int path = 0
        cdef int p = -1
        cdef int idx = self.trail.size() - 1
        cdef int c = confl
        cdef int start, k, q, v, best, back
        cdef vector[int]* clause
        learnt.clear()
        learnt.push_back(0)
        while True:
            clause = &self.clauses[c]
            start = 0 if p == -1 else 1
            for k in range(start, clause.size()):
                q = clause[0][k]
                v = q >> 1
                if not self.seen[v] and self.level[v] > 0:
                    self.seen[v] = 1
                    self.bump(v)
                    if self.level[v] >= cur:
                        path += 1
                    else:
                        learnt.push_back(q)
            while not self.seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            c = self.reason[p >> 1]
            self.seen[p >> 1] = 0
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1
        for k in range(1, learnt.size()):
            self.seen[learnt[k] >> 1] = 0
        if learnt.size() == 1:
            back = 0
        else:
            best = 1
            for k in range(2, learnt.size()):
                if self.level[learnt[k] >> 1] > self.level[learnt[best] >> 1]:
                    best = k
            q = learnt[1]
            learnt[1] = learnt[best]
            learnt[best] = q
            back = self.level[learnt[1] >> 1]
        self.stamp += 1
        lbd_out[0] = 0
        for k in range(learnt.size()):
            v = self.level[learnt[k] >> 1]
            if self.level_stamp[v] != self.stamp:
                self.level_stamp[v] = self.stamp
                lbd_out[0] += 1
        return back

    cdef void cancel_until(self, int lvl):
        cdef int stop, k, lit, v
        if <int>self.trail_lim.size() <= lvl:
            return
        stop = self.trail_lim[lvl]
        k = self.trail.size() - 1
        while k >= stop:
            lit = self.trail[k]
            v = lit >> 1
            self.phase[v] = self.assign[v]
            self.assign[v] = UNDEF
            self.reason[v] = -1
            self.heap_insert(v)
            k -= 1
        self.trail.resize(stop)
        self.trail_lim.resize(lvl)
        self.qhead = stop

    cdef int pick(self):
        cdef int v
        while self.heap.size() > 0:
            v = self.heap_pop()
            if self.assign[v] == UNDEF:
                return 2 * v + (0 if self.phase[v] == 1 else 1)
        return -1

    cdef void reduce(self, int keep):
        cdef int ci
        cands = []
        for ci in range(self.clauses.size()):
            if self.is_learnt[ci] and not self.deleted[ci] and self.lbd[ci] > 2:
                cands.append((self.lbd[ci], -ci))
        if len(cands) <= keep:
            return
        cands.sort()
        for _, nci in cands[len(cands) // 2:]:
            ci = -nci
            self.deleted[ci] = 1
            self.clauses[ci].clear()
            self.num_learnts -= 1

    cdef object search(self, long budget, double deadline, long max_conflicts):
        cdef long local = 0
        cdef int confl, back, lit, ci, lbd
        cdef vector[int] learnt
        while True:
            confl = self.propagate()
            if confl >= 0:
                self.conflicts += 1
                local += 1
                if self.trail_lim.size() == 0:
                    return False
                back = self.analyze(confl, learnt, &lbd)
                self.cancel_until(back)
                if learnt.size() == 1:
                    self.enqueue(learnt[0], -1)
                else:
                    ci = self.attach(learnt, True, lbd)
                    self.enqueue(learnt[0], ci)
                self.var_inc /= 0.95
                if (self.conflicts & 255) == 0 and deadline > 0 and time.monotonic() > deadline:
                    return None
                if max_conflicts >= 0 and self.conflicts >= max_conflicts:
                    return None
            else:
                if local >= budget:
                    return None
                lit = self.pick()
                if lit < 0:
                    return True
                self.trail_lim.push_back(self.trail.size())
                self.enqueue(lit, -1)

    def solve(self, deadline, max_conflicts):
        cdef double dl = -1.0 if deadline is None else deadline
        cdef long mc = -1 if max_conflicts is None else max_conflicts
        cdef int restart = 0
        cdef int max_learnts
        if not self.ok:
            return False
        if self.propagate() >= 0:
            self.ok = False
            return False
        max_learnts = max(2000, <int>self.clauses.size() // 3)
        while True:
            status = self.search(luby(restart) * LUBY_UNIT, dl, mc)
            restart += 1
            if status is not None:
                return status
            if (dl > 0 and time.monotonic() > dl) or (mc >= 0 and self.conflicts >= mc):
                return None
            self.cancel_until(0)
            if self.num_learnts > max_learnts:
                self.reduce(max_learnts // 2)
                max_learnts = <int>(max_learnts * 1.1)

    def model(self):
        return [False] + [self.assign[v] == 1 for v in range(1, self.n + 1)]

    @property
    def ok_state(self):
        return self.ok


def solve(int num_vars, clauses, timeout=None, max_conflicts=None):
    """Solve a CNF given as DIMACS-style integer clauses; see ``_cdcl_py.solve``."""
    deadline = None if timeout is None else time.monotonic() + timeout
    cdef _Solver s = _Solver(num_vars)
    for c in clauses:
        s.add_clause(c)
        if not s.ok_state:
            return False, None
    status = s.solve(deadline, max_conflicts)
    if status:
        return True, s.model()
    return status, None
