"""Pivot-row decomposition of s-simple matrices and the tree it induces.

One step splits the working matrix by the symbol in a pivot row into blocks
``G_0 .. G_{r-1}`` (pivot row removed), then greedily pulls over-represented
columns out in pairs: a column whose multiplicity exceeds ``s`` loses one
copy from each of two different blocks and gains one copy in ``C``. What is
left is ``A1``. Repeating on ``A1`` gives a chain; the non-empty ``C`` blocks
of the chain become the children of the node, and each child is decomposed
again with the bound ``floor(r*s/2)``.

Every column carries its provenance: ``A1`` columns point at a column of the
node matrix, ``C`` columns at the pair of node columns they were built from.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

from .matrix import AlphMatrix, is_s_simple


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class DecompositionStep:
    pivot_row: int
    C: AlphMatrix
    A1: AlphMatrix
    g_sizes: tuple[int, ...]
    c_sources: tuple[tuple[int, int], ...]
    a1_sources: tuple[int, ...]
    pivot_symbols: tuple[tuple[int, int], ...]
    s: int

    @property
    def total(self) -> int:
        return 2 * self.C.ncols + self.A1.ncols


def _delete_row(col, k):
    return col[:k] + col[k + 1:]


def decompose(A: AlphMatrix, s: int, pivot_row: int = 0,
              sources: tuple[int, ...] | None = None) -> DecompositionStep:
    """Split A at ``pivot_row`` and extract the doubled block.

    ``sources`` labels the columns of A (default: their indices); the labels
    are what ``c_sources`` / ``a1_sources`` refer to.
    """
    if A.rows < 1:
        raise DecompositionError("cannot decompose a matrix with no rows")
    if not 0 <= pivot_row < A.rows:
        raise DecompositionError(f"pivot row {pivot_row} out of range")
    if not is_s_simple(A, s):
        raise DecompositionError(f"matrix is not {s}-simple")
    r = A.alphabet
    if sources is None:
        sources = tuple(range(A.ncols))
    # blocks[alpha][x] -> list of source labels of copies of alpha in G_x
    blocks: dict[tuple, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    g_sizes = [0] * r
    for j, col in enumerate(A.columns):
        x = col[pivot_row]
        g_sizes[x] += 1
        blocks[_delete_row(col, pivot_row)][x].append(sources[j])

    c_cols, c_src, c_sym = [], [], []
    a1 = []
    for alpha in sorted(blocks):
        per_block = blocks[alpha]
        total = sum(len(v) for v in per_block.values())
        while total > s:
            # the two blocks holding the most copies, ties to the smaller symbol
            ranked = sorted((x for x in per_block if per_block[x]),
                            key=lambda x: (-len(per_block[x]), x))
            if len(ranked) < 2:
                raise DecompositionError(
                    f"column {alpha} exceeds multiplicity {s} inside a single block")
            x, y = sorted(ranked[:2])
            c_cols.append(alpha)
            c_src.append((per_block[x].pop(0), per_block[y].pop(0)))
            c_sym.append((x, y))
            total -= 2
        for x in sorted(per_block):
            for src in per_block[x]:
                a1.append((alpha, src))
    m1 = A.rows - 1
    C = AlphMatrix(r, m1, tuple(c_cols))
    A1 = AlphMatrix(r, m1, tuple(col for col, _ in a1))
    return DecompositionStep(pivot_row, C, A1, tuple(g_sizes), tuple(c_src),
                             tuple(src for _, src in a1), tuple(c_sym), s)


@dataclass(frozen=True)
class ChainStep:
    """A decomposition step placed in the coordinates of the node matrix."""
    pivot: int                 # row index of the node matrix
    rows_after: tuple[int, ...]  # node rows remaining after this pivot
    step: DecompositionStep


def chain(A: AlphMatrix, s: int, pivot_order: list[int] | None = None) -> list[ChainStep]:
    """Decompose repeatedly until one row remains.

    ``pivot_order`` lists node rows in processing order (default top to
    bottom); the last row is never pivoted.
    """
    if not is_s_simple(A, s):
        raise DecompositionError(f"matrix is not {s}-simple")
    order = list(range(A.rows)) if pivot_order is None else list(pivot_order)
    if sorted(order) != list(range(A.rows)):
        raise DecompositionError("pivot_order must be a permutation of the rows")
    remaining = list(range(A.rows))
    # working columns in the coordinates of `remaining`, labelled by node column index
    work = A
    labels = tuple(range(A.ncols))
    steps = []
    for pivot in order[:-1] if order else []:
        k = remaining.index(pivot)
        step = decompose(work, s, k, labels)
        remaining.pop(k)
        steps.append(ChainStep(pivot, tuple(remaining), step))
        work, labels = step.A1, step.a1_sources
    return steps


def last_block(A: AlphMatrix, steps: list[ChainStep]) -> AlphMatrix:
    return steps[-1].step.A1 if steps else A


@dataclass
class TreeNode:
    matrix: AlphMatrix
    s: int
    rows: tuple[int, ...]          # row ids in the root matrix
    depth: int = 0
    pivot: int | None = None       # root row id of the pivot that produced this node
    sources: tuple[tuple[int, int], ...] = ()  # parent column pairs, per column
    pair_symbols: tuple[tuple[int, int], ...] = ()  # pivot symbols of those pairs
    children: list["TreeNode"] = field(default_factory=list)
    chain_steps: list[ChainStep] = field(default_factory=list)
    parent: "TreeNode | None" = field(default=None, repr=False)


@dataclass
class DecompositionTree:
    root: TreeNode
    depth: int
    max_branching: int
    node_count: int
    partial: bool

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def to_json(self) -> dict:
        def enc(node: TreeNode, index: int | None):
            return {
                "rows": node.matrix.rows,
                "cols": node.matrix.ncols,
                "bound": node.s,
                "childIndex": index,
                "pivot": node.pivot,
                "children": [enc(ch, ch.pivot) for ch in node.children],
            }
        return {"depth": self.depth, "max_branching": self.max_branching,
                "node_count": self.node_count, "partial": self.partial,
                "tree": enc(self.root, None)}


def child_bound(r: int, s: int) -> int:
    """Stored multiplicity bound of a child: floor(r*s/2), at least 1."""
    return max(1, (r * s) // 2)


def tight_child_bound(r: int, s: int) -> int:
    """Multiplicity every C column actually respects: ceil(s*(r-1)/2)."""
    return max(1, math.ceil(s * (r - 1) / 2))


def build_tree(A: AlphMatrix, s: int = 1, node_budget: int = 10_000,
               pivot_order=None) -> DecompositionTree:
    root = TreeNode(A, s, tuple(range(A.rows)))
    count = 1
    partial = False
    stack = [root]
    while stack:
        node = stack.pop()
        M = node.matrix
        if M.rows <= 1 or M.ncols == 0:
            continue
        order = None
        if pivot_order is not None:
            # restrict the global order to this node's rows
            pos = {rid: k for k, rid in enumerate(node.rows)}
            order = [pos[rid] for rid in pivot_order if rid in pos]
        steps = chain(M, node.s, order)
        node.chain_steps = steps
        cb = child_bound(M.alphabet, node.s)
        for cs in steps:
            st = cs.step
            if st.C.ncols == 0:
                continue
            if count >= node_budget:
                partial = True
                break
            child = TreeNode(st.C, cb, tuple(node.rows[k] for k in cs.rows_after),
                             node.depth + 1, node.rows[cs.pivot], st.c_sources,
                             st.pivot_symbols, parent=node)
            node.children.append(child)
            count += 1
        stack.extend(reversed(node.children))
    depth = 0
    branching = 0
    for node in _walk(root):
        depth = max(depth, node.depth)
        branching = max(branching, len(node.children))
    return DecompositionTree(root, depth, branching, count, partial)


def _walk(node):
    yield node
    for ch in node.children:
        yield from _walk(ch)


def lift_column(node: TreeNode, j: int) -> int:
    """Index of a root column agreeing with column j of ``node`` on node.rows."""
    while node.parent is not None:
        j = node.sources[j][0]
        node = node.parent
    return j


def expand_column(node: TreeNode, j: int) -> list[int]:
    """All root columns obtained by following both sources at every level."""
    cur = [j]
    while node.parent is not None:
        cur = [src for k in cur for src in node.sources[k]]
        node = node.parent
    return cur
