"""Immutable r-coloured matrices with column-multiset semantics.

A matrix is stored column-major as a tuple of equal-length tuples. Columns
are ordered canonically by reading them as base-``r`` numerals with row 0 as
the most significant digit, which for fixed-length columns coincides with
plain lexicographic tuple order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Column = tuple[int, ...]


class DimensionError(ValueError):
    """Raised when matrix shapes are incompatible."""


@dataclass(frozen=True)
class AlphMatrix:
    alphabet: int
    rows: int
    columns: tuple[Column, ...]
    _counts: Counter = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.alphabet < 1:
            raise ValueError(f"alphabet must be >= 1, got {self.alphabet}")
        if self.rows < 0:
            raise ValueError(f"rows must be >= 0, got {self.rows}")
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        for j, col in enumerate(cols):
            if len(col) != self.rows:
                raise DimensionError(
                    f"column {j} has length {len(col)}, expected {self.rows}")
            for x in col:
                if x < 0 or x >= self.alphabet:
                    raise ValueError(
                        f"entry {x} in column {j} outside alphabet {{0..{self.alphabet - 1}}}")
        object.__setattr__(self, "columns", cols)

    # construction helpers

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], alphabet: int | None = None,
                  ncols: int | None = None) -> "AlphMatrix":
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionError("ragged rows")
        else:
            width = ncols or 0
        if alphabet is None:
            alphabet = max([max(r) for r in rows if r] + [1]) + 1
        cols = tuple(tuple(r[j] for r in rows) for j in range(width))
        return cls(alphabet, len(rows), cols)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int | None = None,
                     alphabet: int | None = None) -> "AlphMatrix":
        cols = [tuple(c) for c in columns]
        if rows is None:
            if not cols:
                raise DimensionError("cannot infer row count of an empty column list")
            rows = len(cols[0])
        if alphabet is None:
            alphabet = max([max(c) for c in cols if c] + [1]) + 1
        return cls(alphabet, rows, tuple(cols))

    @classmethod
    def empty(cls, rows: int, alphabet: int = 2) -> "AlphMatrix":
        return cls(alphabet, rows, ())

    # views

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def __len__(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, len(self.columns)

    def entry(self, i: int, j: int) -> int:
        return self.columns[j][i]

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(c[i] for c in self.columns)

    def to_rows(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(self.rows)]

    def counts(self) -> Counter:
        if self._counts is None:
            object.__setattr__(self, "_counts", Counter(self.columns))
        return self._counts

    def with_alphabet(self, alphabet: int) -> "AlphMatrix":
        if alphabet == self.alphabet:
            return self
        return AlphMatrix(alphabet, self.rows, self.columns)

    def select(self, rows: Sequence[int] | None = None,
               cols: Sequence[int] | None = None) -> "AlphMatrix":
        """Submatrix on the given row and column indices, in the given order."""
        rows = range(self.rows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        return AlphMatrix(self.alphabet, len(rows),
                          tuple(tuple(self.columns[j][i] for i in rows) for j in cols))

    def sorted(self) -> "AlphMatrix":
        return AlphMatrix(self.alphabet, self.rows, tuple(sorted(self.columns)))

    def __str__(self) -> str:
        if self.rows == 0:
            return f"<{self.ncols} empty column(s)>"
        return "\n".join(" ".join(str(x) for x in r) for r in self.to_rows())


def column_code(col: Sequence[int], r: int) -> int:
    """Base-r value of a column, row 0 most significant."""
    v = 0
    for x in col:
        v = v * r + x
    return v


def code_to_column(code: int, m: int, r: int) -> Column:
    digits = [0] * m
    for i in range(m - 1, -1, -1):
        code, digits[i] = divmod(code, r)
    return tuple(digits)


def multiplicity(M: AlphMatrix, col: Sequence[int]) -> int:
    col = tuple(col)
    if len(col) != M.rows:
        raise DimensionError(f"column length {len(col)} != rows {M.rows}")
    return M.counts().get(col, 0)


def is_s_simple(M: AlphMatrix, s: int = 1) -> bool:
    if s < 1:
        raise ValueError("s must be >= 1")
    return all(k <= s for k in M.counts().values())


def is_simple(M: AlphMatrix) -> bool:
    return is_s_simple(M, 1)


def max_multiplicity(M: AlphMatrix) -> int:
    return max(M.counts().values(), default=0)


def concat(*Ms: AlphMatrix) -> AlphMatrix:
    if not Ms:
        raise ValueError("concat needs at least one matrix")
    rows = Ms[0].rows
    for M in Ms[1:]:
        if M.rows != rows:
            raise DimensionError(f"row counts differ: {rows} vs {M.rows}")
    alphabet = max(M.alphabet for M in Ms)
    cols: list[Column] = []
    for M in Ms:
        cols.extend(M.columns)
    return AlphMatrix(alphabet, rows, tuple(cols))


def t_copies(t: int, M: AlphMatrix) -> AlphMatrix:
    if t < 1:
        raise ValueError("t must be >= 1")
    return AlphMatrix(M.alphabet, M.rows, M.columns * t)


def support(M: AlphMatrix) -> AlphMatrix:
    """The simple matrix on the distinct columns of M, in canonical order."""
    return AlphMatrix(M.alphabet, M.rows, tuple(sorted(set(M.columns))))


def complete_matrix(m: int, r: int = 2) -> AlphMatrix:
    """All r**m distinct columns in canonical order."""
    return AlphMatrix(r, m, tuple(code_to_column(c, m, r) for c in range(r ** m)))
