"""Lower-bound constructions and the partition-collapse map."""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .matrix import AlphMatrix, concat, is_s_simple, t_copies
from .patterns import identity_pattern


def _pair_order(m: int) -> list[tuple[int, int]]:
    """Row pairs (0,1),(2,3),... then (1,2),(3,4),..., then wrap-around and
    wider offsets; every pair once."""
    out: list[tuple[int, int]] = []
    seen = set()

    def add(pair):
        pair = tuple(sorted(pair))
        if pair[0] != pair[1] and pair not in seen:
            seen.add(pair)
            out.append(pair)

    for d in range(1, m):
        for parity in (0, 1):
            for i in range(parity, m - d, 2):
                add((i, i + d))
        for i in range(m):
            add((i, (i + d) % m))
    return out


def _near_regular_pairs(m: int, npairs: int) -> list[tuple[int, int]]:
    """``npairs`` distinct row pairs whose degrees differ by at most one
    (Havel-Hakimi on the near-regular sequence, which is always graphic)."""
    if npairs == 0:
        return []
    q, rem = divmod(2 * npairs, m)
    need = [q + 1 if i < rem else q for i in range(m)]
    pairs = []
    while True:
        live = sorted((i for i in range(m) if need[i]), key=lambda i: (-need[i], i))
        if not live:
            return pairs
        v, rest = live[0], live[1:]
        if need[v] > len(rest):
            raise AssertionError("degree sequence not graphic")
        for u in rest[:need[v]]:
            pairs.append((min(u, v), max(u, v)))
            need[u] -= 1
        need[v] = 0


def construct_single_pair_avoider(m: int, t: int, a: int = 0, b: int = 1,
                                  e: int | None = None) -> AlphMatrix:
    """Simple m x (floor(tm/2)+1) matrix over {a,b} with every row holding at
    most t-1 copies of ``e``, hence avoiding t.[e].

    Columns: all-f, the single-e columns, then two-e columns listed in
    round-robin pair order. The pair set itself is near-regular so no row
    runs out of budget early.
    """
    if t < 2:
        raise ValueError("need t >= 2")
    if a == b:
        raise ValueError("need a != b")
    e = a if e is None else e
    if e not in (a, b):
        raise ValueError("e must be one of a, b")
    f = b if e == a else a
    target = (t * m) // 2 + 1
    budget = [t - 1] * m
    cols = [tuple([f] * m)]

    def col_with(rows):
        return tuple(e if i in rows else f for i in range(m))

    for i in range(m):
        if len(cols) == target:
            break
        cols.append(col_with({i}))
        budget[i] -= 1
    order = {pair: k for k, pair in enumerate(_pair_order(m))}
    npairs = min(target - len(cols), len(order))
    for pair in sorted(_near_regular_pairs(m, npairs), key=order.__getitem__):
        cols.append(col_with(set(pair)))
        for i in pair:
            budget[i] -= 1
    # only reached when t > m + 1: pairs alone cannot fill the target
    k = 3
    while len(cols) < target and k <= m:
        for rows in combinations(range(m), k):
            if len(cols) == target:
                break
            if all(budget[i] > 0 for i in rows):
                cols.append(col_with(set(rows)))
                for i in rows:
                    budget[i] -= 1
        k += 1
    if len(cols) < target:
        raise ValueError(f"no simple construction with {target} columns for m={m}, t={t}")
    return AlphMatrix(max(a, b) + 1, m, tuple(cols))


def construct_pair_family_lb(m: int, r: int, t: int) -> AlphMatrix:
    """Concatenate the single-pair avoiders over all pairs a < b, dropping
    repeated columns (first occurrence kept)."""
    if r < 2:
        raise ValueError("need r >= 2")
    seen = set()
    cols = []
    for a, b in combinations(range(r), 2):
        for col in construct_single_pair_avoider(m, t, a, b, a).columns:
            if col not in seen:
                seen.add(col)
                cols.append(col)
    return AlphMatrix(r, m, tuple(cols))


def construct_identity_lb(m: int, r: int, t: int) -> AlphMatrix:
    """(t-1) copies of I_m(a,b) for every ordered pair a != b."""
    if r < 2 or m < 1:
        raise ValueError("need r >= 2 and m >= 1")
    if t < 2:
        warnings.warn("t < 2 gives the empty construction")
        return AlphMatrix.empty(m, r)
    blocks = [t_copies(t - 1, identity_pattern(m, a, b))
              for a in range(r) for b in range(r) if a != b]
    return concat(*blocks).with_alphabet(r)


def augment_to_simple(M: AlphMatrix, t: int) -> AlphMatrix:
    """Append ceil(log2(t-1)) binary rows so that equal columns get distinct codes."""
    if t < 2:
        raise ValueError("need t >= 2")
    if not is_s_simple(M, t - 1):
        raise ValueError(f"matrix must be {t - 1}-simple")
    q = math.ceil(math.log2(t - 1)) if t > 2 else 0
    if q == 0:
        return M
    seen: Counter = Counter()
    cols = []
    for col in M.columns:
        code = seen[col]
        seen[col] += 1
        bits = tuple((code >> (q - 1 - k)) & 1 for k in range(q))
        cols.append(col + bits)
    return AlphMatrix(max(M.alphabet, 2), M.rows + q, tuple(cols))


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if any(not b for b in blocks):
            raise ValueError("partition blocks must be non-empty")
        union = set()
        for b in blocks:
            if union & b:
                raise ValueError("partition blocks overlap")
            union |= b
        if union != set(range(len(union))):
            raise ValueError("partition must cover 0..r-1 exactly")

    @property
    def r(self) -> int:
        return sum(len(b) for b in self.blocks)

    def index(self) -> dict[int, int]:
        return {a: i for i, blk in enumerate(self.blocks) for a in blk}

    @classmethod
    def parse(cls, text: str) -> "Partition":
        blocks = []
        for chunk in text.split("|"):
            chunk = chunk.strip()
            blocks.append(frozenset(int(x) for x in chunk.split(",") if x.strip()))
        return cls(tuple(blocks))


def collapse_partition(A: AlphMatrix, pi: Partition) -> AlphMatrix:
    idx = pi.index()
    for col in A.columns:
        for x in col:
            if x not in idx:
                raise ValueError(f"symbol {x} not covered by the partition")
    return AlphMatrix(len(pi.blocks), A.rows,
                      tuple(tuple(idx[x] for x in col) for col in A.columns))


def column_profile(M: AlphMatrix) -> Counter:
    """Multiplicity of every distinct column."""
    return Counter(M.columns)
