"""Identity/triangular pattern generators, forbidden families and the
pattern mini-language used on the command line."""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .matrix import AlphMatrix, t_copies


class Kind(str, enum.Enum):
    IDENTITY = "I"
    TRIANGULAR = "T"
    IDENTITY_REVERSED = "IR"
    TRIANGULAR_REVERSED = "TR"
    LITERAL = "L"


def identity_pattern(ell: int, a: int, b: int) -> AlphMatrix:
    """ell x ell matrix with ``a`` on the diagonal and ``b`` elsewhere."""
    if a == b:
        raise ValueError("identity_pattern needs a != b")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    rows = [[a if i == j else b for j in range(ell)] for i in range(ell)]
    return AlphMatrix.from_rows(rows, alphabet=max(a, b) + 1)


def triangular_pattern(ell: int, a: int, b: int) -> AlphMatrix:
    """ell x ell matrix with ``a`` strictly below the diagonal, ``b`` elsewhere."""
    if a == b:
        raise ValueError("triangular_pattern needs a != b")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    rows = [[a if i > j else b for j in range(ell)] for i in range(ell)]
    return AlphMatrix.from_rows(rows, alphabet=max(a, b) + 1)


def reverse_columns(M: AlphMatrix) -> AlphMatrix:
    return AlphMatrix(M.alphabet, M.rows, M.columns[::-1])


@dataclass(frozen=True)
class PatternSpec:
    kind: Kind
    ell: int = 1
    a: int = 1
    b: int = 0
    t: int = 1
    literal: AlphMatrix | None = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.t < 1:
            raise ValueError("multiplier t must be >= 1")
        if self.kind is Kind.LITERAL:
            if self.literal is None:
                raise ValueError("LITERAL pattern needs a matrix")
        else:
            if self.ell < 1:
                raise ValueError("ell must be >= 1")
            if self.a == self.b:
                raise ValueError("pattern symbols must differ")
            if self.a < 0 or self.b < 0:
                raise ValueError("symbols must be non-negative")

    @property
    def max_symbol(self) -> int:
        if self.kind is Kind.LITERAL:
            return max((max(c) for c in self.literal.columns if c), default=-1)
        return max(self.a, self.b)

    def label(self) -> str:
        prefix = f"{self.t}*" if self.t > 1 else ""
        if self.kind is Kind.LITERAL:
            return f"{prefix}L[{self.literal.rows}x{self.literal.ncols}]"
        return f"{prefix}{self.kind.value}({self.ell};{self.a},{self.b})"

    def scaled(self, t: int) -> "PatternSpec":
        return PatternSpec(self.kind, self.ell, self.a, self.b, self.t * t, self.literal)

    def to_json(self) -> dict:
        d = {"kind": self.kind.name.lower(), "t": self.t}
        if self.kind is Kind.LITERAL:
            d["rows"] = self.literal.to_rows()
            d["alphabet"] = self.literal.alphabet
        else:
            d.update(ell=self.ell, a=self.a, b=self.b)
        return d


def realize(spec: PatternSpec) -> AlphMatrix:
    if spec.kind is Kind.LITERAL:
        base = spec.literal
    elif spec.kind is Kind.IDENTITY:
        base = identity_pattern(spec.ell, spec.a, spec.b)
    elif spec.kind is Kind.TRIANGULAR:
        base = triangular_pattern(spec.ell, spec.a, spec.b)
    elif spec.kind is Kind.IDENTITY_REVERSED:
        base = reverse_columns(identity_pattern(spec.ell, spec.a, spec.b))
    else:
        base = reverse_columns(triangular_pattern(spec.ell, spec.a, spec.b))
    return base if spec.t == 1 else t_copies(spec.t, base)


def literal(M: AlphMatrix, t: int = 1) -> PatternSpec:
    return PatternSpec(Kind.LITERAL, t=t, literal=M)


@dataclass(frozen=True)
class ForbiddenFamily:
    members: tuple[PatternSpec, ...]
    alphabet: int

    def __post_init__(self):
        members = tuple(m if isinstance(m, PatternSpec) else literal(m) for m in self.members)
        object.__setattr__(self, "members", members)
        for spec in members:
            if spec.max_symbol >= self.alphabet:
                raise ValueError(
                    f"member {spec.label()} uses symbol {spec.max_symbol} "
                    f"outside alphabet {self.alphabet}")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[PatternSpec]:
        return iter(self.members)

    def matrices(self) -> list[AlphMatrix]:
        return [realize(s) for s in self.members]

    def scaled(self, t: int) -> "ForbiddenFamily":
        return ForbiddenFamily(tuple(s.scaled(t) for s in self.members), self.alphabet)

    def labels(self) -> list[str]:
        return [s.label() for s in self.members]


def _ordered_pairs(r: int):
    return [(a, b) for a in range(r) for b in range(r) if a != b]


def family_T(ell: int, r: int) -> ForbiddenFamily:
    """All I_ell(a,b) and T_ell(a,b) over ordered pairs a != b."""
    if r < 2:
        raise ValueError("family_T needs r >= 2")
    pairs = _ordered_pairs(r)
    members = [PatternSpec(Kind.IDENTITY, ell, a, b) for a, b in pairs]
    members += [PatternSpec(Kind.TRIANGULAR, ell, a, b) for a, b in pairs]
    return ForbiddenFamily(tuple(members), r)


def family_T_prime(ell: int, r: int) -> ForbiddenFamily:
    """Reduced family: identities over ordered pairs, triangulars with a < b."""
    if r < 2:
        raise ValueError("family_T_prime needs r >= 2")
    members = [PatternSpec(Kind.IDENTITY, ell, a, b) for a, b in _ordered_pairs(r)]
    members += [PatternSpec(Kind.TRIANGULAR, ell, a, b) for a, b in _ordered_pairs(r) if a < b]
    return ForbiddenFamily(tuple(members), r)


# mini-language

_CONST_RE = re.compile(r"^(zero|zeros|one|ones)(\d+)x(\d+)$", re.I)
_TERM_RE = re.compile(r"^(?:(\d+)\*)?(.*)$", re.S)
_CALL_RE = re.compile(r"^(IR|TR|I|T|TFAM|TPRIME)\((\d+)[;,](\d+)(?:,(\d+))?\)$", re.I)
_INLINE_RE = re.compile(r"^L\((.*)\)$", re.I | re.S)


class PatternSyntaxError(ValueError):
    pass


def _inline_literal(body: str) -> AlphMatrix:
    rows = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        toks = chunk.split() if " " in chunk else list(chunk)
        rows.append([int(x) for x in toks])
    return AlphMatrix.from_rows(rows)


def _file_literal(ref: str, base_dir: str | None) -> AlphMatrix:
    from . import amat

    path = ref if base_dir is None or os.path.isabs(ref) else os.path.join(base_dir, ref)
    if os.path.exists(path):
        return amat.load(path)
    m = _CONST_RE.match(os.path.basename(ref))
    if m:
        val = 0 if m.group(1).lower().startswith("zero") else 1
        p, q = int(m.group(2)), int(m.group(3))
        return AlphMatrix.from_rows([[val] * q for _ in range(p)], alphabet=2)
    raise PatternSyntaxError(f"literal file not found: {ref}")


def parse_patterns(text: str, base_dir: str | None = None) -> list[PatternSpec]:
    """Parse one pattern expression into one or more specs.

    ``Tfam``/``Tprime`` expand to whole families; everything else yields a
    single spec.
    """
    src = "".join(text.split())
    m = _TERM_RE.match(src)
    t = int(m.group(1)) if m.group(1) else 1
    body = m.group(2)
    if t < 1:
        raise PatternSyntaxError("multiplier must be >= 1")
    if not body:
        raise PatternSyntaxError(f"empty pattern in {text!r}")
    if body.startswith("@") or body.upper().startswith("L@"):
        ref = body.split("@", 1)[1]
        # whitespace was stripped above; re-read the raw reference for paths with spaces
        raw = text.split("@", 1)[1].strip()
        return [literal(_file_literal(raw or ref, base_dir), t)]
    lm = _INLINE_RE.match(body)
    if lm:
        inner = text[text.index("(") + 1:text.rindex(")")]
        try:
            return [literal(_inline_literal(inner), t)]
        except ValueError as exc:
            raise PatternSyntaxError(f"bad inline literal {text!r}: {exc}") from None
    cm = _CALL_RE.match(body)
    if not cm:
        raise PatternSyntaxError(f"cannot parse pattern {text!r}")
    kind = cm.group(1).upper()
    x, y = int(cm.group(2)), int(cm.group(3))
    z = cm.group(4)
    try:
        if kind in ("TFAM", "TPRIME"):
            if z is not None:
                raise PatternSyntaxError(f"{kind} takes (ell,r)")
            fam = family_T(x, y) if kind == "TFAM" else family_T_prime(x, y)
            return [s.scaled(t) for s in fam]
        if z is None:
            raise PatternSyntaxError(f"{kind} takes (ell;a,b)")
        return [PatternSpec(Kind(kind), x, y, int(z), t)]
    except PatternSyntaxError:
        raise
    except ValueError as exc:
        raise PatternSyntaxError(f"invalid pattern {text!r}: {exc}") from None


def build_family(exprs: Iterable[str], r: int | None = None,
                 base_dir: str | None = None) -> ForbiddenFamily:
    specs: list[PatternSpec] = []
    for e in exprs:
        specs.extend(parse_patterns(e, base_dir))
    if r is None:
        r = max([s.max_symbol for s in specs] + [1]) + 1
    return ForbiddenFamily(tuple(specs), r)
