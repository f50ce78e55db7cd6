import pytest

from confex.classify import Verdict, classify_family, structure
from confex.containment import contains
from confex.matrix import AlphMatrix
from confex.patterns import (ForbiddenFamily, Kind, PatternSpec, family_T, family_T_prime, literal,
                             realize)
from confex.search import forb_exact

I21 = PatternSpec(Kind.IDENTITY, 2, 1, 0)


def test_identity_is_linear():
    g = classify_family([I21], 2)
    assert g.verdict is Verdict.LINEAR and g.D == 4
    c = g.certificate
    assert c.pair == (0, 1) and c.kind is Kind.TRIANGULAR
    assert c.checked == {4: True, 6: True}
    for m in (4, 6):
        assert contains(realize(I21), c.construction(m)) is None


def test_row_is_constant():
    g = classify_family([literal(AlphMatrix.from_rows([[0, 1]]))], 2)
    assert g.verdict is Verdict.CONSTANT
    assert all(cov["identity"] == (0,) and cov["triangular"] == (0,) for cov in g.coverage.values())


@pytest.mark.parametrize("fam", [family_T(2, 2), family_T_prime(2, 2), family_T(2, 3), family_T_prime(3, 3)])
def test_families_constant(fam):
    g = classify_family(fam)
    assert g.verdict is Verdict.CONSTANT
    mats = fam.matrices()
    for (i, j), cov in g.coverage.items():
        assert cov["identity"] and cov["triangular"]
        for k in cov["identity"]:
            assert contains(mats[k], structure(Kind.IDENTITY, g.D, i, j))
        for k in cov["triangular"]:
            assert (contains(mats[k], structure(Kind.TRIANGULAR, g.D, i, j))
                    or contains(mats[k], structure(Kind.TRIANGULAR, g.D, j, i)))


@pytest.mark.parametrize("specs,r", [
    ([I21], 2),
    ([PatternSpec(Kind.TRIANGULAR, 2, 0, 1)], 2),
    ([PatternSpec(Kind.IDENTITY, 2, 1, 0), PatternSpec(Kind.TRIANGULAR, 2, 0, 1)], 3),
    (list(family_T(2, 2)), 2),
])
def test_stable_in_D(specs, r):
    base = classify_family(specs, r)
    for extra in (1, 2):
        assert classify_family(specs, r, d_extra=extra).verdict is base.verdict


def test_consistency_with_search():
    for specs in ([I21], list(family_T_prime(2, 2)), [PatternSpec(Kind.TRIANGULAR, 2, 0, 1)]):
        g = classify_family(specs, 2)
        vals = [forb_exact(m, 2, specs).value for m in range(2, 6)]
        assert all(x <= y for x, y in zip(vals, vals[1:]))
        if g.verdict is Verdict.LINEAR:
            assert vals[-1] > vals[0]
        else:
            assert vals[-1] == vals[-2]


def test_errors():
    with pytest.raises(ValueError):
        classify_family([], 2)
    with pytest.raises(ValueError):
        classify_family([PatternSpec(Kind.IDENTITY, 2, 3, 0)], 2)


def test_json():
    js = classify_family(ForbiddenFamily((I21,), 2)).to_json()
    assert js["verdict"] == "linear" and js["certificate"]["kind"] == "triangular"
