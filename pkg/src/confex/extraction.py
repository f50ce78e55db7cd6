"""Constructive extraction of I/T configurations and fixed-order submatrices.

Two strategies are offered. ``DIRECT`` simply searches the family with the
containment kernel. ``PROOF_FOLLOWING`` grows the decomposition tree and
reads a witness off it: a long chain whose edge labels repeat a symbol pair
yields an identity block, and a node with many children yields a square
layout whose monochromatic clique gives an identity or triangular block.
Every witness is verified against the input before it is returned.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .containment import ConfigWitness, Mode, contains, verify_witness
from .decomposition import build_tree, expand_column, lift_column
from .matrix import AlphMatrix
from .patterns import Kind, PatternSpec, family_T, realize
from .ramsey import (DiagonalConstant, FirstColumn, SecondColumn, SquareLayout,
                     colour_edges, find_mono_clique)


class Strategy(str, enum.Enum):
    DIRECT = "direct"
    PROOF_FOLLOWING = "proof"

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        key = text.strip().lower()
        return cls({"proof_following": "proof", "proof-following": "proof"}.get(key, key))


@dataclass
class ExtractionResult:
    kind: Kind | None
    ell: int
    a: int | None
    b: int | None
    witness: ConfigWitness | None
    strategy: Strategy
    trigger: str | None = None        # "chain", "branching" or None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None

    def spec(self) -> PatternSpec:
        return PatternSpec(self.kind, self.ell, self.a, self.b)

    def pattern(self) -> AlphMatrix:
        return realize(self.spec())

    def to_json(self) -> dict:
        out = {"found": self.found, "strategy": self.strategy.value, "trigger": self.trigger,
               "ell": self.ell, "diagnostics": list(self.diagnostics)}
        if self.found:
            out.update(kind=self.kind.value, a=self.a, b=self.b,
                       witness=self.witness.to_json())
        return out


def _result(spec, w, strategy, trigger=None, diagnostics=None):
    return ExtractionResult(spec.kind, spec.ell, spec.a, spec.b, w, strategy,
                            trigger, list(diagnostics or []))


def _absent(ell, strategy, diagnostics):
    return ExtractionResult(None, ell, None, None, None, strategy, None, diagnostics)


def _direct(A, specs, mode):
    for spec in specs:
        w = contains(realize(spec), A, mode)
        if w is not None:
            return spec, w
    return None


def _search_block(A: AlphMatrix, rows, cols, specs, mode):
    """Look for any of ``specs`` inside A restricted to rows x cols and map the
    witness back to A's indices. Rows are taken in increasing order so fixed
    row order survives the restriction."""
    rows = sorted(set(rows))
    cols = sorted(set(cols)) if mode.cols_ordered else list(dict.fromkeys(cols))
    sub = A.select(rows, cols)
    for spec in specs:
        F = realize(spec)
        w = contains(F, sub, mode)
        if w is None:
            continue
        lifted = ConfigWitness(tuple(rows[i] for i in w.rows),
                               tuple(cols[j] for j in w.cols), mode)
        if not verify_witness(F, A, lifted):
            raise AssertionError("lifted witness failed verification")
        return spec, lifted
    return None


def _prefer(first, specs):
    return list(first) + [s for s in specs if s not in first]


def _chain_trigger(A, tree, ell, specs, mode, diag):
    for node in tree.nodes():
        if node.depth < ell:
            continue
        for j in range(node.matrix.ncols):
            labels = []
            cur, k = node, j
            while cur.parent is not None:
                labels.append((cur.pivot, tuple(sorted(cur.pair_symbols[k]))))
                k = cur.sources[k][0]
                cur = cur.parent
            tally = Counter(pair for _, pair in labels)
            pair, hits = min(tally.items(), key=lambda kv: (-kv[1], kv[0]))
            if hits < ell:
                continue
            a, b = pair
            rows = [p for p, pr in labels if pr == pair]
            cols = expand_column(node, j)
            first = [PatternSpec(Kind.IDENTITY, ell, a, b), PatternSpec(Kind.IDENTITY, ell, b, a)]
            got = _search_block(A, rows, cols, _prefer(first, specs), mode)
            if got is not None:
                diag.append(f"chain trigger: depth {node.depth}, pair {{{a},{b}}} "
                            f"on {hits} edges, {len(cols)} expanded columns")
                return got
            diag.append(f"chain at depth {node.depth} with pair {{{a},{b}}} gave no witness")
    return None


def _layout_for(A, node, pick):
    """Pivot rows, column pairs and the square layout for one column per child."""
    pivots, pairs = [], []
    for child in node.children:
        j = pick(child)
        s0, s1 = child.sources[j]
        pivots.append(child.pivot)
        pairs.append((lift_column(node, s0), lift_column(node, s1)))
    cells = tuple(tuple((A.entry(p, c0), A.entry(p, c1)) for c0, c1 in pairs)
                  for p in pivots)
    return pivots, pairs, SquareLayout(cells)


def _branching_trigger(A, tree, ell, specs, mode, budget, diag):
    r = A.alphabet
    for node in tree.nodes():
        if len(node.children) <= budget:
            continue
        for pick_name, pick in (("first", lambda ch: 0),
                                ("last", lambda ch: ch.matrix.ncols - 1)):
            try:
                pivots, pairs, layout = _layout_for(A, node, pick)
            except ValueError as exc:
                diag.append(f"layout rejected at depth {node.depth}: {exc}")
                continue
            coloring = colour_edges(layout)
            targets = {}
            for c in coloring.classes():
                if isinstance(c, DiagonalConstant):
                    targets[c] = (r - 1) * (ell - 1) + 1
                elif isinstance(c, (FirstColumn, SecondColumn)):
                    targets[c] = ell if r == 2 else 2 * ell
            hit = find_mono_clique(coloring, targets)
            if hit is None:
                diag.append(f"{len(node.children)} children at depth {node.depth} "
                            f"({pick_name} columns): no monochromatic clique")
                continue
            colour, verts = hit
            got = _apply_case(A, layout, pivots, pairs, colour, sorted(verts), ell, r,
                              specs, mode)
            if got is not None:
                diag.append(f"branching trigger: {len(node.children)} children at depth "
                            f"{node.depth}, clique colour {colour}")
                return got
            diag.append(f"clique colour {colour} at depth {node.depth} gave no witness")
    return None


def diagonal_pigeonhole(diagonal, a: int, ell: int):
    """Case-1 kernel. ``diagonal`` holds the (lo, hi) diagonal blocks of a
    square whose off-diagonal entries are all ``a``; pick an entry other
    than ``a`` from each block and return a symbol b seen at least ``ell``
    times with the positions carrying it, or None."""
    picks = [hi if hi != a else lo for lo, hi in diagonal]
    tally = Counter(x for x in picks if x != a)
    if not tally:
        return None
    b, hits = min(tally.items(), key=lambda kv: (-kv[1], kv[0]))
    if hits < ell:
        return None
    return b, tuple(k for k, x in enumerate(picks) if x == b)[:ell]


def alternate_deletion(size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Case-2/3 kernel: drop column 1, row 2, column 3, row 4, ... (1-based)
    of a size x size square; returns the kept (rows, cols), 0-based."""
    half = size // 2
    return tuple(range(0, 2 * half, 2)), tuple(range(1, 2 * half, 2))


def _apply_case(A, layout, pivots, pairs, colour, verts, ell, r, specs, mode):
    cells = layout.cells
    if isinstance(colour, DiagonalConstant):
        # off-diagonal entries are all a; take a diagonal entry other than a
        a = colour.a
        diag = [cells[v][v] for v in verts]
        got = diagonal_pigeonhole(diag, a, ell)
        if got is None:
            return None
        b, idx = got
        chosen = [verts[k] for k in idx]
        rows = [pivots[v] for v in chosen]
        cols = [pairs[v][0 if cells[v][v][0] == b else 1] for v in chosen]
        first = [PatternSpec(Kind.IDENTITY, ell, b, a)]
    elif isinstance(colour, (FirstColumn, SecondColumn)):
        side = 0 if isinstance(colour, FirstColumn) else 1
        a, b = colour.a, colour.b
        if r == 2:
            # diagonal is always (0, 1): no alternate deletion needed
            rows = [pivots[v] for v in verts]
            cols = [pairs[v][side] for v in verts]
            first = []
        else:
            # keep rows 1, 3, 5, ... and columns 2, 4, 6, ... of the clique
            keep_r, keep_c = alternate_deletion(len(verts))
            rows = [pivots[verts[i]] for i in keep_r]
            cols = [pairs[verts[j]][side] for j in keep_c]
            first = [PatternSpec(Kind.TRIANGULAR, ell, a, b)]
    else:
        return None
    return _search_block(A, rows, cols, _prefer(first, specs), mode)


def extract_configuration(A: AlphMatrix, ell: int, strategy: Strategy | str = Strategy.DIRECT,
                          mode: Mode | str = Mode.CONFIGURATION, *,
                          branching_budget: int = 8,
                          node_budget: int = 10_000) -> ExtractionResult:
    """Find some I_ell(a,b) or T_ell(a,b) in A.

    Returns a result with ``found == False`` when A avoids the whole family.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    strategy = Strategy(strategy)
    mode = Mode(mode)
    if mode is Mode.SUBMATRIX:
        raise ValueError("use extract_submatrix for fixed row and column order")
    specs = list(family_T(ell, max(A.alphabet, 2)))
    diag: list[str] = []
    if strategy is Strategy.PROOF_FOLLOWING:
        if A.rows == 0 or A.ncols == 0:
            diag.append("empty matrix: nothing to decompose")
        else:
            try:
                tree = build_tree(A, 1, node_budget)
            except ValueError as exc:
                tree = None
                diag.append(f"decomposition failed: {exc}")
            if tree is not None:
                if tree.partial:
                    diag.append("decomposition tree truncated by node budget")
                got = _chain_trigger(A, tree, ell, specs, mode, diag)
                trigger = "chain"
                if got is None:
                    got = _branching_trigger(A, tree, ell, specs, mode, branching_budget, diag)
                    trigger = "branching"
                if got is not None:
                    return _result(got[0], got[1], Strategy.PROOF_FOLLOWING, trigger, diag)
        diag.append("no tree trigger fired; falling back to direct search")
    got = _direct(A, specs, mode)
    if got is None:
        diag.append("matrix avoids every member of the family")
        return _absent(ell, Strategy.DIRECT, diag)
    return _result(got[0], got[1], Strategy.DIRECT, None, diag)


def es_monotone(seq, ell: int):
    """A strictly monotone subsequence of length ``ell``.

    Returns ``(direction, indices)`` with direction ``"increasing"`` or
    ``"decreasing"`` (increasing preferred), or None.
    """
    seq = list(seq)
    if ell <= 0:
        return "increasing", ()
    for direction, better in (("increasing", lambda x, y: x < y),
                              ("decreasing", lambda x, y: x > y)):
        n = len(seq)
        length = [1] * n
        back = [-1] * n
        for i in range(n):
            for j in range(i):
                if better(seq[j], seq[i]) and length[j] + 1 > length[i]:
                    length[i] = length[j] + 1
                    back[i] = j
        ends = [i for i in range(n) if length[i] >= ell]
        if ends:
            i = ends[0]
            chain = []
            while i >= 0:
                chain.append(i)
                i = back[i]
            chain.reverse()
            return direction, tuple(chain[:ell])
    return None


_REVERSED = {Kind.IDENTITY: Kind.IDENTITY_REVERSED, Kind.TRIANGULAR: Kind.TRIANGULAR_REVERSED}


def extract_submatrix(A: AlphMatrix, ell: int = 2) -> ExtractionResult:
    """SUBMATRIX witness of one of I, T, I^R, T^R at size ell.

    Finds an ell^2-scale pattern with the row order fixed, then keeps the
    pattern indices where the column map is monotone.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    big = ell * ell
    r = max(A.alphabet, 2)
    got = _direct(A, family_T(big, r), Mode.ROW_FIXED)
    if got is None:
        # too small for the size-ell^2 route; a direct search may still succeed
        kinds = (Kind.IDENTITY, Kind.TRIANGULAR, Kind.IDENTITY_REVERSED, Kind.TRIANGULAR_REVERSED)
        specs = [PatternSpec(k, ell, a, b) for k in kinds
                 for a in range(r) for b in range(r) if a != b]
        hit = _direct(A, specs, Mode.SUBMATRIX)
        note = f"no fixed-row-order pattern of size {big} present"
        if hit is None:
            return _absent(ell, Strategy.DIRECT, [note])
        return _result(hit[0], hit[1], Strategy.DIRECT,
                       diagnostics=[note, "found by direct submatrix search"])
    spec, w = got
    mono = es_monotone(w.cols, ell)
    if mono is None:  # cannot happen once big >= (ell-1)^2 + 1
        raise AssertionError("monotone subsequence missing")
    direction, idx = mono
    rows = tuple(w.rows[i] for i in idx)
    if direction == "increasing":
        kind = spec.kind
        cols = tuple(w.cols[i] for i in idx)
    else:
        kind = _REVERSED[spec.kind]
        cols = tuple(w.cols[idx[ell - 1 - h]] for h in range(ell))
    out = PatternSpec(kind, ell, spec.a, spec.b)
    wit = ConfigWitness(rows, cols, Mode.SUBMATRIX)
    if not verify_witness(realize(out), A, wit):
        raise AssertionError("submatrix witness failed verification")
    return _result(out, wit, Strategy.DIRECT,
                   diagnostics=[f"size-{big} {spec.label()} with {direction} column map"])
