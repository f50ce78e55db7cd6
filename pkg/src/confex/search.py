"""Exact forb(m, r, F, s) by branch and bound over column multisets.

Columns are added in non-decreasing canonical order, so every multiset is
visited once. Each node keeps the list of columns that can still be added
without creating a forbidden configuration; because containment is monotone
under adding columns, a candidate rejected at a node stays rejected in the
whole subtree. Feasibility of a new column only needs witnesses that use the
new column, which the kernel enforces through its ``required`` argument.
"""

from __future__ import annotations

import itertools
import logging
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .containment import CompiledPattern, Mode
from .matrix import AlphMatrix, code_to_column, is_s_simple
from .patterns import ForbiddenFamily, PatternSpec, realize

log = logging.getLogger(__name__)

_PERM_TABLE_LIMIT = 5_000_000


@dataclass
class SearchReport:
    m: int
    r: int
    s: int
    family: ForbiddenFamily | None
    value: int
    witness: AlphMatrix
    nodes_explored: int
    complete: bool
    elapsed: float = 0.0
    optimal_witnesses: list[AlphMatrix] | None = None
    per_m: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        from . import amat

        out = {
            "m": self.m,
            "r": self.r,
            "s": self.s,
            "value": self.value,
            "complete": self.complete,
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 6),
            "witness_rows": self.witness.rows,
            "witness": amat.dumps(self.witness),
        }
        if self.family is not None:
            out["family"] = [spec.to_json() for spec in self.family]
        if self.per_m:
            out["per_m"] = {str(k): v for k, v in self.per_m.items()}
        return out


class _CapReached(Exception):
    pass


def _as_matrices(family) -> tuple[list[AlphMatrix], ForbiddenFamily | None]:
    if isinstance(family, ForbiddenFamily):
        return family.matrices(), family
    mats = []
    for item in family:
        mats.append(realize(item) if isinstance(item, PatternSpec) else item)
    return mats, None


class _Search:
    def __init__(self, m, r, patterns, s, max_nodes, deadline, all_witnesses, row_symmetry):
        self.m, self.r, self.s = m, r, s
        self.patterns = patterns
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.all_witnesses = all_witnesses
        self.ncodes = r ** m
        self.columns = [code_to_column(c, m, r) for c in range(self.ncodes)]
        self.chosen: list[int] = []
        self.counts = [0] * self.ncodes
        self.eq = [0] * (m * r)
        self.nodes = 0
        self.best = -1
        self.best_sets: list[tuple[int, ...]] = []
        self.perm_tables = self._perm_tables() if row_symmetry else None

    def _perm_tables(self):
        m, r = self.m, self.r
        nperm = 1
        for k in range(2, m + 1):
            nperm *= k
        if nperm * self.ncodes > _PERM_TABLE_LIMIT:
            warnings.warn("row-symmetry pruning disabled: permutation table too large")
            return None
        tables = []
        for perm in itertools.permutations(range(m)):
            if perm == tuple(range(m)):
                continue
            table = []
            for col in self.columns:
                v = 0
                for i in range(m):
                    v = v * r + col[perm[i]]
                table.append(v)
            tables.append(table)
        return tables

    def _is_leader(self) -> bool:
        cur = self.chosen
        for table in self.perm_tables:
            if sorted(table[c] for c in cur) < cur:
                return False
        return True

    def _push(self, code):
        n = len(self.chosen)
        bit = 1 << n
        col = self.columns[code]
        r = self.r
        for h in range(self.m):
            self.eq[h * r + col[h]] |= bit
        self.chosen.append(code)
        self.counts[code] += 1

    def _pop(self):
        code = self.chosen.pop()
        self.counts[code] -= 1
        n = len(self.chosen)
        mask = ~(1 << n)
        col = self.columns[code]
        r = self.r
        for h in range(self.m):
            self.eq[h * r + col[h]] &= mask

    def feasible(self, code) -> bool:
        """Whether appending ``code`` keeps the current multiset avoiding."""
        n = len(self.chosen)
        eq = list(self.eq)
        bit = 1 << n
        col = self.columns[code]
        r = self.r
        for h in range(self.m):
            eq[h * r + col[h]] |= bit
        for pat in self.patterns:
            if pat.search(eq, self.m, n + 1, r, n) is not None:
                return False
        return True

    def initial_candidates(self) -> list[int]:
        return [c for c in range(self.ncodes) if self.feasible(c)]

    def _record(self):
        size = len(self.chosen)
        if size > self.best:
            self.best = size
            self.best_sets = [tuple(self.chosen)]
        elif self.all_witnesses and size == self.best:
            self.best_sets.append(tuple(self.chosen))

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _CapReached
        if self.deadline is not None and (self.nodes & 255) == 0 and time.monotonic() > self.deadline:
            raise _CapReached

    def dfs(self, cands: list[int]):
        self._tick()
        if self.perm_tables is not None and self.chosen and not self._is_leader():
            return
        self._record()
        s = self.s
        size = len(self.chosen)
        caps = [s - self.counts[c] for c in cands]
        suffix = [0] * (len(cands) + 1)
        for k in range(len(cands) - 1, -1, -1):
            suffix[k] = suffix[k + 1] + caps[k]
        slack = 0 if self.all_witnesses else 1
        for idx, c in enumerate(cands):
            if size + suffix[idx] < self.best + slack:
                break
            self._push(c)
            nxt = [c2 for c2 in cands[idx:] if self.counts[c2] < s and self.feasible(c2)]
            self.dfs(nxt)
            self._pop()

    def run_branch(self, cands: list[int], idx: int):
        """Explore only multisets whose smallest column is ``cands[idx]``."""
        c = cands[idx]
        self._push(c)
        nxt = [c2 for c2 in cands[idx:] if self.counts[c2] < self.s and self.feasible(c2)]
        self.dfs(nxt)
        self._pop()

    def matrix(self, codes) -> AlphMatrix:
        return AlphMatrix(self.r, self.m, tuple(self.columns[c] for c in codes))


def _compile(mats: list[AlphMatrix], m: int, r: int) -> list[CompiledPattern]:
    active = []
    for F in mats:
        p, q = F.shape
        if q == 0:
            if p <= m:
                raise ValueError("a member with no columns is contained in every matrix")
            continue
        pat = CompiledPattern(F, Mode.CONFIGURATION)
        if p > m or (p > 0 and pat.max_symbol >= r):
            continue
        active.append(pat)
    return active


def _branch_worker(args):
    m, r, mats, s, max_nodes, deadline, row_symmetry, floor, idx = args
    srch = _Search(m, r, _compile(mats, m, r), s, max_nodes, deadline, False, row_symmetry)
    srch.best = floor
    cands = srch.initial_candidates()
    try:
        srch.run_branch(cands, idx)
        complete = True
    except _CapReached:
        complete = False
    sets = srch.best_sets if srch.best > floor else []
    return srch.best, sets, srch.nodes, complete


def forb_exact(m: int, r: int, family, s: int = 1, *, max_nodes: int | None = None,
               timeout: float | None = None, all_witnesses: bool = False,
               row_symmetry: bool = False, threads: int = 1) -> SearchReport:
    """Largest s-simple m-rowed r-matrix avoiding every member of ``family``.

    ``family`` may be a :class:`ForbiddenFamily` or an iterable of pattern
    specs / matrices. With ``all_witnesses`` every extremal multiset is
    returned in ``optimal_witnesses`` (up to row symmetry when
    ``row_symmetry`` is on).
    """
    if m < 0 or r < 1 or s < 1:
        raise ValueError("need m >= 0, r >= 1, s >= 1")
    t0 = time.monotonic()
    mats, fam = _as_matrices(family)
    patterns = _compile(mats, m, r)
    if not patterns:
        cols = tuple(code_to_column(c, m, r) for c in range(r ** m)) * s
        W = AlphMatrix(r, m, tuple(sorted(cols)))
        return SearchReport(m, r, s, fam, len(cols), W, 0, True, time.monotonic() - t0,
                            [W] if all_witnesses else None)
    deadline = None if timeout is None else t0 + timeout
    srch = _Search(m, r, patterns, s, max_nodes, deadline, all_witnesses, row_symmetry)
    complete = True
    try:
        cands = srch.initial_candidates()
        if threads > 1 and not all_witnesses and len(cands) > 1:
            complete = _run_parallel(srch, cands, mats, threads, max_nodes, deadline, row_symmetry)
        else:
            srch.dfs(cands)
    except _CapReached:
        complete = False
    if srch.best < 0:
        srch.best, srch.best_sets = 0, [()]
    W = srch.matrix(srch.best_sets[0])
    assert is_s_simple(W, s) or W.ncols == 0
    optimal = [srch.matrix(b) for b in srch.best_sets] if all_witnesses else None
    rep = SearchReport(m, r, s, fam, srch.best, W, srch.nodes, complete,
                       time.monotonic() - t0, optimal)
    log.debug("forb_exact m=%d r=%d s=%d -> %d (%d nodes, complete=%s)",
              m, r, s, rep.value, rep.nodes_explored, complete)
    return rep


def _run_parallel(srch: _Search, cands, mats, threads, max_nodes, deadline, row_symmetry) -> bool:
    # seed a floor from the leftmost greedy path so branches prune immediately
    floor_search = _Search(srch.m, srch.r, srch.patterns, srch.s, None, None, False, False)
    cur = list(cands)
    while cur:
        c = cur[0]
        floor_search._push(c)
        cur = [c2 for c2 in cur if floor_search.counts[c2] < srch.s and floor_search.feasible(c2)]
    floor = len(floor_search.chosen)
    srch.best, srch.best_sets = floor, [tuple(floor_search.chosen)]
    jobs = [(srch.m, srch.r, mats, srch.s, max_nodes, deadline, row_symmetry, floor, idx)
            for idx in range(len(cands))]
    complete = True
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for best, sets, nodes, ok in pool.map(_branch_worker, jobs):
            srch.nodes += nodes
            complete = complete and ok
            if best > srch.best:
                srch.best, srch.best_sets = best, sets
    return complete


def forbmax_exact(m: int, r: int, family, s: int = 1, **kwargs) -> SearchReport:
    """Maximum of forb_exact over m' = 0..m; the witness has m' rows."""
    t0 = time.monotonic()
    best = None
    per_m = {}
    nodes = 0
    complete = True
    for mm in range(m + 1):
        rep = forb_exact(mm, r, family, s, **kwargs)
        per_m[mm] = rep.value
        nodes += rep.nodes_explored
        complete = complete and rep.complete
        if best is None or rep.value >= best.value:
            best = rep
    return SearchReport(m, r, s, best.family, best.value, best.witness, nodes, complete,
                        time.monotonic() - t0, best.optimal_witnesses, per_m)


def brute_force_forb(m: int, r: int, patterns: Iterable[AlphMatrix], s: int = 1) -> int:
    """Independent oracle: scan every multiset of columns (tiny m, r only)."""
    from .containment import contains_naive

    pats = list(patterns)
    cols = [code_to_column(c, m, r) for c in range(r ** m)]
    best = 0
    for counts in itertools.product(range(s + 1), repeat=len(cols)):
        size = sum(counts)
        if size <= best:
            continue
        A = AlphMatrix(r, m, tuple(c for c, k in zip(cols, counts) for _ in range(k)))
        if all(contains_naive(F, A) is None for F in pats):
            best = size
    return best
