"""Reading and writing the ``.amat`` text format.

::

    # optional comments
    amat <rows> <cols> <alphabet>
    0 1 1
    1 0 1

Rows may also be written as contiguous digit strings when the alphabet is at
most 10 (``011``). Writers always emit the space-separated form.
"""

from __future__ import annotations

import os
from typing import TextIO

from .matrix import AlphMatrix


class FormatError(ValueError):
    pass


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line.strip()


def loads(text: str) -> AlphMatrix:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty .amat input")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "amat":
        raise FormatError(f"line {lineno}: expected 'amat <rows> <cols> <alphabet>'")
    try:
        m, n, r = (int(x) for x in parts[1:])
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer header field") from None
    if m < 0 or n < 0 or r < 1:
        raise FormatError(f"line {lineno}: invalid header values")
    body = lines[1:]
    if n == 0:
        # zero-column rows are blank, so no row lines are written or expected
        if body:
            raise FormatError(f"line {body[0][0]}: unexpected data for a matrix with no columns")
        return AlphMatrix(r, m, ())
    if len(body) != m:
        raise FormatError(f"expected {m} row lines, found {len(body)}")
    rows = []
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) == 1 and n > 1:
            if r > 10:
                raise FormatError(f"line {lineno}: compact rows need alphabet <= 10")
            tokens = list(tokens[0])
        if len(tokens) != n:
            raise FormatError(f"line {lineno}: expected {n} entries, found {len(tokens)}")
        try:
            row = [int(x) for x in tokens]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer entry") from None
        if any(x < 0 or x >= r for x in row):
            raise FormatError(f"line {lineno}: entry outside alphabet {r}")
        rows.append(row)
    if m == 0:
        return AlphMatrix(r, 0, ((),) * n)
    return AlphMatrix.from_rows(rows, alphabet=r)


def dumps(M: AlphMatrix, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"amat {M.rows} {M.ncols} {M.alphabet}")
    if M.ncols:
        out.extend(" ".join(str(x) for x in row) for row in M.to_rows())
    return "\n".join(out) + "\n"


def load(path: str | os.PathLike) -> AlphMatrix:
    with open(path) as fh:
        return loads(fh.read())


def dump(M: AlphMatrix, dest: str | os.PathLike | TextIO, comment: str | None = None) -> None:
    text = dumps(M, comment)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)
