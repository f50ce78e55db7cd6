"""Decide whether a pattern F is contained in a matrix A.

Three containment modes are supported:

* ``CONFIGURATION``: any injective row map and any injective column map;
* ``ROW_FIXED``: the row map is strictly increasing;
* ``SUBMATRIX``: both maps are strictly increasing.

:func:`contains` runs a depth-first search over row maps with compatibility
bitsets and settles the columns by bipartite matching. :func:`contains_naive`
enumerates every map and exists only as an independent oracle.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from . import kernel
from .matrix import AlphMatrix


class Mode(str, enum.Enum):
    CONFIGURATION = "configuration"
    ROW_FIXED = "row_fixed"
    SUBMATRIX = "submatrix"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        key = text.strip().lower().replace("-", "_")
        aliases = {"config": "configuration", "rowfixed": "row_fixed", "sub": "submatrix"}
        return cls(aliases.get(key, key))

    @property
    def rows_ordered(self) -> bool:
        return self is not Mode.CONFIGURATION

    @property
    def cols_ordered(self) -> bool:
        return self is Mode.SUBMATRIX


@dataclass(frozen=True)
class ConfigWitness:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    mode: Mode = Mode.CONFIGURATION

    def to_json(self) -> dict:
        return {"mode": self.mode.value, "rows": list(self.rows), "cols": list(self.cols)}


class CompiledPattern:
    """Pattern-side preprocessing, reusable across many targets."""

    def __init__(self, F: AlphMatrix, mode: Mode = Mode.CONFIGURATION):
        self.F = F
        self.mode = Mode(mode)
        self.p, self.q = F.shape
        if self.mode.cols_ordered:
            groups = [[j] for j in range(self.q)]
        else:
            first: dict = {}
            groups = []
            for j, col in enumerate(F.columns):
                if col in first:
                    groups[first[col]].append(j)
                else:
                    first[col] = len(groups)
                    groups.append([j])
        self.groups = groups
        self.gmult = [len(g) for g in groups]
        self.gsym = [F.columns[g[0]][i] for g in groups for i in range(self.p)]
        self.max_symbol = max((max(c) for c in F.columns if c), default=-1)
        # per-row symbol demand, for target-row filtering
        self.need = []
        for i in range(self.p):
            demand: dict[int, int] = {}
            for col in F.columns:
                demand[col[i]] = demand.get(col[i], 0) + 1
            self.need.append(demand)
        self.distinct = [len(d) for d in self.need]

    def impossible_for(self, m: int, n: int, alphabet: int) -> bool:
        if self.p > m or self.q > n:
            return True
        return self.p > 0 and self.q > 0 and self.max_symbol >= alphabet

    def row_candidates(self, eq: list[int], m: int, nsym: int) -> list[int]:
        counts = [[eq[h * nsym + x].bit_count() for x in range(nsym)] for h in range(m)]
        cands = []
        for demand in self.need:
            mask = 0
            for h in range(m):
                row = counts[h]
                if all(row[x] >= k for x, k in demand.items()):
                    mask |= 1 << h
            cands.append(mask)
        return cands

    def search(self, eq: list[int], m: int, n: int, nsym: int, required: int = -1,
               backend: str | None = None):
        """Run the kernel against precomputed target masks.

        Returns ``(rows, cols)`` tuples mapping pattern indices to target
        indices, or ``None``.
        """
        if self.impossible_for(m, n, nsym):
            return None
        cands = self.row_candidates(eq, m, nsym)
        if any(c == 0 for c in cands):
            return None
        if self.mode.rows_ordered:
            order = list(range(self.p))
        else:
            order = sorted(range(self.p),
                           key=lambda i: (cands[i].bit_count(), -self.distinct[i], i))
        res = kernel.embed(self.p, len(self.groups), self.gsym, self.gmult, order, cands,
                           m, n, eq, nsym, self.mode.rows_ordered, self.mode.cols_ordered,
                           required, backend=backend)
        if res is None:
            return None
        row_assign, slots = res
        cols = [0] * self.q
        k = 0
        for g in self.groups:
            for j in g:
                cols[j] = slots[k]
                k += 1
        return tuple(row_assign), tuple(cols)


def eq_masks(A: AlphMatrix, nsym: int | None = None) -> list[int]:
    """Flat list of column bitmasks, ``[h*nsym + x]`` -> columns with x at row h."""
    nsym = A.alphabet if nsym is None else nsym
    eq = [0] * (A.rows * nsym)
    for j, col in enumerate(A.columns):
        bit = 1 << j
        for h, x in enumerate(col):
            eq[h * nsym + x] |= bit
    return eq


def contains(F: AlphMatrix, A: AlphMatrix, mode: Mode | str = Mode.CONFIGURATION, *,
             required_col: int | None = None, backend: str | None = None) -> ConfigWitness | None:
    """Return a witness that F is contained in A, or None.

    ``required_col`` restricts the search to witnesses whose column map uses
    that column of A.
    """
    mode = Mode(mode)
    pat = CompiledPattern(F, mode)
    m, n = A.shape
    if pat.impossible_for(m, n, A.alphabet):
        return None
    req = -1 if required_col is None else required_col
    if req >= n:
        return None
    res = pat.search(eq_masks(A), m, n, A.alphabet, req, backend=backend)
    if res is None:
        return None
    return ConfigWitness(res[0], res[1], mode)


def contains_naive(F: AlphMatrix, A: AlphMatrix,
                   mode: Mode | str = Mode.CONFIGURATION) -> ConfigWitness | None:
    """Exhaustive oracle. Only for tiny inputs."""
    mode = Mode(mode)
    p, q = F.shape
    m, n = A.shape
    if p > m or q > n:
        return None
    row_maps = (itertools.combinations(range(m), p) if mode.rows_ordered
                else itertools.permutations(range(m), p))
    Frows = F.to_rows()
    for rows in row_maps:
        sub = [A.row(h) for h in rows]
        col_maps = (itertools.combinations(range(n), q) if mode.cols_ordered
                    else itertools.permutations(range(n), q))
        for cols in col_maps:
            if all(sub[i][cols[j]] == Frows[i][j] for i in range(p) for j in range(q)):
                return ConfigWitness(tuple(rows), tuple(cols), mode)
    return None


def verify_witness(F: AlphMatrix, A: AlphMatrix, w: ConfigWitness) -> bool:
    p, q = F.shape
    m, n = A.shape
    rows, cols = tuple(w.rows), tuple(w.cols)
    if len(rows) != p or len(cols) != q:
        return False
    if any(not 0 <= h < m for h in rows) or any(not 0 <= c < n for c in cols):
        return False
    if len(set(rows)) != p or len(set(cols)) != q:
        return False
    mode = Mode(w.mode)
    if mode.rows_ordered and any(rows[i] >= rows[i + 1] for i in range(p - 1)):
        return False
    if mode.cols_ordered and any(cols[j] >= cols[j + 1] for j in range(q - 1)):
        return False
    return all(A.columns[cols[j]][rows[i]] == F.columns[j][i]
               for i in range(p) for j in range(q))


def avoids_all(A: AlphMatrix, patterns, mode: Mode | str = Mode.CONFIGURATION) -> bool:
    return all(contains(F, A, mode) is None for F in patterns)
