"""Constant-versus-linear growth of forb for a finite family.

A family has bounded forb exactly when, for every ordered pair (i, j), some
member sits inside the identity structure I_D(i,j) and some member sits
inside a triangular structure T_D(i,j) or T_D(j,i). Otherwise the uncovered
structure itself is an avoiding matrix for every m, so forb grows at least
linearly; that structure is returned as the certificate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .containment import contains
from .matrix import AlphMatrix
from .patterns import ForbiddenFamily, Kind, identity_pattern, realize, triangular_pattern


class Verdict(str, enum.Enum):
    CONSTANT = "constant"
    LINEAR = "linear"


@dataclass(frozen=True)
class Certificate:
    pair: tuple[int, int]
    kind: Kind
    checked: dict[int, bool] = field(default_factory=dict)  # m -> construction avoids all

    def construction(self, m: int) -> AlphMatrix:
        return structure(self.kind, m, *self.pair)

    def to_json(self) -> dict:
        return {"pair": list(self.pair), "kind": self.kind.name.lower(),
                "checked": {str(m): ok for m, ok in self.checked.items()}}


@dataclass
class GrowthClass:
    verdict: Verdict
    D: int
    coverage: dict[tuple[int, int], dict[str, tuple[int, ...]]]
    certificate: Certificate | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value, "D": self.D,
               "coverage": {f"{i},{j}": {k: list(v) for k, v in cov.items()}
                            for (i, j), cov in self.coverage.items()}}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def structure(kind: Kind, m: int, i: int, j: int) -> AlphMatrix:
    if kind is Kind.IDENTITY:
        return identity_pattern(m, i, j)
    if kind is Kind.TRIANGULAR:
        return triangular_pattern(m, i, j)
    raise ValueError(f"no structure of kind {kind}")


def _members(family, r):
    if isinstance(family, ForbiddenFamily):
        return list(family.members), family.alphabet
    fam = ForbiddenFamily(tuple(family), r if r is not None else 2)
    return list(fam.members), fam.alphabet


def classify_family(family, r: int | None = None, *, d_extra: int = 0) -> GrowthClass:
    """Classify ``family`` (a ForbiddenFamily, or specs / matrices with ``r``).

    ``d_extra`` enlarges the structure size beyond D = max(rows + cols),
    which must not change the verdict.
    """
    specs, r = _members(family, r)
    if not specs:
        raise ValueError("family must be nonempty")
    mats = [realize(s) for s in specs]
    D = max(F.rows + F.ncols for F in mats) + d_extra
    D = max(D, 1)

    def covering(S):
        return tuple(k for k, F in enumerate(mats) if contains(F, S) is not None)

    coverage = {}
    missing = None
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            ident = covering(structure(Kind.IDENTITY, D, i, j))
            tri = tuple(sorted(set(covering(structure(Kind.TRIANGULAR, D, i, j)))
                               | set(covering(structure(Kind.TRIANGULAR, D, j, i)))))
            coverage[(i, j)] = {"identity": ident, "triangular": tri}
            if missing is None:
                if not ident:
                    missing = ((i, j), Kind.IDENTITY)
                elif not tri:
                    missing = ((i, j), Kind.TRIANGULAR)
    if missing is None:
        return GrowthClass(Verdict.CONSTANT, D, coverage)
    pair, kind = missing
    checked = {m: all(contains(F, structure(kind, m, *pair)) is None for F in mats)
               for m in (D, D + 2)}
    return GrowthClass(Verdict.LINEAR, D, coverage, Certificate(pair, kind, checked))

