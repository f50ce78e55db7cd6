"""Multicolour Ramsey upper bounds and the colourings used to extract patterns.

All counts are exact Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence


# bounds

def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(parts!) via a factorial ratio."""
    num = math.factorial(sum(parts))
    den = 1
    for k in parts:
        den *= math.factorial(k)
    return num // den


def multinomial_product(parts: Sequence[int]) -> int:
    """Same value as :func:`multinomial`, built as a product of binomials."""
    out = 1
    running = 0
    for k in parts:
        running += k
        out *= math.comb(running, k)
    return out


def ramsey_upper(*ks: int) -> int:
    """Multinomial upper bound on R(k_1, ..., k_n).

    A single colour returns k_1 itself; any k_i = 1 forces the bound 1.
    """
    if len(ks) == 1 and isinstance(ks[0], (list, tuple)):
        ks = tuple(ks[0])
    if not ks:
        raise ValueError("ramsey_upper needs at least one clique size")
    if any(k < 1 for k in ks):
        raise ValueError("clique sizes must be >= 1")
    if any(k == 1 for k in ks):
        return 1
    if len(ks) == 1:
        return ks[0]
    return multinomial([k - 1 for k in ks])


def u_args(ell: int, r: int) -> list[int]:
    _check_lr(ell, r)
    return [(r - 1) * (ell - 1) + 1] * r + [2 * ell] * (2 * r * (r - 1))


def u_value(ell: int, r: int) -> int:
    return ramsey_upper(*u_args(ell, r))


def u_middle(ell: int, r: int) -> int:
    """(2r^2 - r)^(r(r-1)(5*ell - 3))."""
    _check_lr(ell, r)
    return (2 * r * r - r) ** (r * (r - 1) * (5 * ell - 3))


def u_closed(ell: int, r: int) -> int:
    """r^(15 r (r-1) ell)."""
    _check_lr(ell, r)
    return r ** (15 * r * (r - 1) * ell)


def T_value(r: int, t: int) -> int:
    if r < 2 or t < 1:
        raise ValueError("need r >= 2 and t >= 1")
    return r * (r - 1) * (t - 1) + 1


def v_args(ell: int, r: int, t: int) -> list[int]:
    _check_lr(ell, r)
    T = T_value(r, t)
    return [(r - 1) * (ell - 1) + 1] * (r ** T) + [2 * t * ell] * (2 * T * r * (r - 1))


def v_value(ell: int, r: int, t: int) -> int:
    return ramsey_upper(*v_args(ell, r, t))


def colour_count_main(r: int) -> int:
    return 2 * r * r - r


def colour_count_t(r: int, T: int) -> int:
    return r ** T + r * r * T


def _check_lr(ell, r):
    if r < 2:
        raise ValueError("r must be >= 2")
    if ell < 1:
        raise ValueError("ell must be >= 1")


@dataclass(frozen=True)
class BoundReport:
    ell: int
    r: int
    depth_bound: int
    u: int
    general: int            # r^(30 C(r,2)^2 ell^2)
    product_form: int       # (r^(15r(r-1)ell))^(C(r,2)(ell-1)+2)
    recursion_f0: int       # f(0) from the branching recursion with exact u
    specialized: int | None = None      # r = 2: 6^(6(ell-1)ell)
    specialized_family: int | None = None  # r = 2: 6^(6 ell(ell+1))
    r2_f_init: int | None = None        # r = 2: f(ell-1) <= 2 ell - 1
    r2_recursion_f0: int | None = None

    def to_json(self) -> dict:
        return {k: str(v) if isinstance(v, int) and v > 2**53 else v
                for k, v in self.__dict__.items()}


def depth_bound(ell: int, r: int) -> int:
    return math.comb(r, 2) * (ell - 1) + 1


def f_recursion(ell: int, r: int, u: int | None = None) -> int:
    """Solve f(i) <= 2u f(i+1) + r (r/2)^i downward from the depth bound."""
    u = u_value(ell, r) if u is None else u
    D = depth_bound(ell, r)
    half = Fraction(r, 2)
    f = r * half ** D
    for i in range(D - 1, -1, -1):
        f = 2 * u * f + r * half ** i
    return math.floor(f)


def r2_recursion(ell: int) -> tuple[int, int]:
    """r = 2: f(i) <= 2 R6(ell) f(i+1) + 2 from f(ell-1) <= 2 ell - 1."""
    if ell < 2:
        raise ValueError("the r = 2 recursion needs ell >= 2")
    r6 = ramsey_upper(*([ell] * 6))
    f = 2 * ell - 1
    f_init = f
    for _ in range(ell - 1):
        f = 2 * r6 * f + 2
    return f_init, f


def bound_main(ell: int, r: int) -> BoundReport:
    _check_lr(ell, r)
    c2 = math.comb(r, 2)
    general = r ** (30 * c2 * c2 * ell * ell)
    product_form = u_closed(ell, r) ** (c2 * (ell - 1) + 2)
    rep = dict(ell=ell, r=r, depth_bound=depth_bound(ell, r), u=u_value(ell, r),
               general=general, product_form=product_form,
               recursion_f0=f_recursion(ell, r))
    if r == 2:
        rep["specialized"] = 6 ** (6 * (ell - 1) * ell)
        rep["specialized_family"] = 6 ** (6 * ell * (ell + 1))
        if ell >= 2:
            rep["r2_f_init"], rep["r2_recursion_f0"] = r2_recursion(ell)
    return BoundReport(**rep)


# colourings

# Colour classes are frozen dataclasses rather than tuples so that, e.g.,
# FirstColumn(0, 1) and SecondColumn(0, 1) stay distinct colours.

@dataclass(frozen=True, order=True)
class DiagonalConstant:
    a: int


@dataclass(frozen=True, order=True)
class FirstColumn:
    a: int
    b: int


@dataclass(frozen=True, order=True)
class SecondColumn:
    a: int
    b: int


@dataclass(frozen=True, order=True)
class ConstantBlock:
    alpha: tuple[int, ...]


@dataclass(frozen=True, order=True)
class ColumnClass:
    a: int
    b: int
    i: int  # 0-based column of the 2 x w block


@dataclass(frozen=True)
class SquareLayout:
    """An order x order array of 1 x w symbol blocks.

    Blocks strictly below the diagonal must be doubled (first half equal to
    second half) and every diagonal block must be strictly smaller than its
    second half, entrywise.
    """
    cells: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(tuple(b) for b in row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        n = len(cells)
        if any(len(row) != n for row in cells):
            raise ValueError("layout must be square")
        w = len(cells[0][0]) if n else 2
        if w % 2:
            raise ValueError("block width must be even")
        h = w // 2
        for i in range(n):
            for j in range(n):
                blk = cells[i][j]
                if len(blk) != w:
                    raise ValueError("all blocks must have the same width")
                if i > j and blk[:h] != blk[h:]:
                    raise ValueError(f"block ({i},{j}) below the diagonal is not doubled")
                if i == j and not all(x < y for x, y in zip(blk[:h], blk[h:])):
                    raise ValueError(f"diagonal block {i} is not strictly increasing")

    @property
    def order(self) -> int:
        return len(self.cells)

    @property
    def width(self) -> int:
        return len(self.cells[0][0]) if self.cells else 2


@dataclass(frozen=True)
class EdgeColoring:
    vertex_count: int
    colours: Mapping[tuple[int, int], Hashable]

    def colour(self, i: int, j: int):
        return self.colours[(i, j) if i < j else (j, i)]

    def classes(self) -> set:
        return set(self.colours.values())


def classify_block(top: Sequence[int], bottom: Sequence[int]):
    """Colour of the 2 x w block with ``top`` above ``bottom``."""
    w = len(top)
    if w == 2:
        x = bottom[0]
        y1, y2 = top
        if y1 == x and y2 == x:
            return DiagonalConstant(x)
        if y1 != x:
            return FirstColumn(x, y1)
        return SecondColumn(x, y2)
    if tuple(top) == tuple(bottom):
        return ConstantBlock(tuple(bottom[: w // 2]))
    best = None
    for i in range(w):
        a, b = bottom[i], top[i]
        if a != b:
            cand = ColumnClass(a, b, i)
            if best is None or cand < best:
                best = cand
    return best


def colour_edges(layout: SquareLayout) -> EdgeColoring:
    n = layout.order
    cells = layout.cells
    colours = {}
    for i in range(n):
        for j in range(i + 1, n):
            colours[(i, j)] = classify_block(cells[i][j], cells[j][i])
    return EdgeColoring(n, colours)


def _clique(adj: list[int], cand: int, size: int, chosen: list[int]):
    if len(chosen) == size:
        return list(chosen)
    while cand:
        if len(chosen) + cand.bit_count() < size:
            return None
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        chosen.append(v)
        res = _clique(adj, cand & adj[v], size, chosen)
        if res is not None:
            return res
        chosen.pop()
    return None


def find_mono_clique(coloring: EdgeColoring, targets: Mapping | None = None,
                     default: int | None = None):
    """A clique of some colour reaching that colour's target size.

    Colours missing from ``targets`` use ``default``; with neither, they are
    skipped. Returns ``(colour, vertices)`` or ``None``; a returned clique is
    re-checked edge by edge.
    """
    n = coloring.vertex_count
    targets = dict(targets or {})
    adj: dict = {}
    for (i, j), c in coloring.colours.items():
        a = adj.setdefault(c, [0] * n)
        a[i] |= 1 << j
        a[j] |= 1 << i
    colours = set(adj) | set(targets)
    for c in sorted(colours, key=repr):
        k = targets.get(c, default)
        if k is None:
            continue
        if k <= 1:
            if n >= k:
                return c, tuple(range(k))
            continue
        a = adj.get(c)
        if a is None:
            continue
        res = _clique(a, (1 << n) - 1, k, [])
        if res is not None:
            verts = tuple(res)
            assert all(coloring.colour(x, y) == c
                       for ix, x in enumerate(verts) for y in verts[ix + 1:])
            return c, verts
    return None
