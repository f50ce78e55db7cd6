import itertools
import random

import pytest

from confex.containment import Mode, verify_witness
from confex.decomposition import build_tree
from confex.extraction import (Strategy, _branching_trigger, alternate_deletion,
                               diagonal_pigeonhole, es_monotone, extract_configuration,
                               extract_submatrix)
from confex.matrix import AlphMatrix, complete_matrix, concat
from confex.patterns import Kind, family_T, identity_pattern, triangular_pattern
from confex.search import forb_exact

from conftest import random_simple


def verified(A, res, mode=Mode.CONFIGURATION):
    assert res.found
    assert res.witness.mode is mode
    assert verify_witness(res.pattern(), A, res.witness)
    return res


def test_complete_matrix_both_strategies():
    A = complete_matrix(3, 2)
    for st in Strategy:
        verified(A, extract_configuration(A, 2, st))


def test_triangular_input_gives_triangular():
    A = concat(triangular_pattern(5, 1, 0), AlphMatrix.from_rows([[1]] * 5))
    for st in Strategy:
        res = verified(A, extract_configuration(A, 2, st))
        assert res.kind is Kind.TRIANGULAR and (res.a, res.b) in {(1, 0), (0, 1)}


def test_absent():
    res = extract_configuration(AlphMatrix.from_rows([[0, 1]]), 2, "proof")
    assert not res.found and res.witness is None
    assert any("avoids" in d for d in res.diagnostics)


def test_row_fixed_mode():
    A = complete_matrix(3, 2)
    res = verified(A, extract_configuration(A, 2, "direct", "row_fixed"), Mode.ROW_FIXED)
    assert list(res.witness.rows) == sorted(res.witness.rows)
    with pytest.raises(ValueError):
        extract_configuration(A, 2, mode="submatrix")


def test_case2_example():
    rows = [[0 if i > j else 1 for j in range(4)] for i in range(4)]
    rng = random.Random(0)
    for _ in range(10):
        for i in range(4):
            rows[i][i] = rng.randrange(2)
        kr, kc = alternate_deletion(4)
        assert kr == (0, 2) and kc == (1, 3)
        sub = [[rows[i][j] for j in kc] for i in kr]
        assert sub == triangular_pattern(2, 0, 1).to_rows()


@pytest.mark.parametrize("r,ell", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_case1_kernel(r, ell):
    rng = random.Random(r * 10 + ell)
    n = (r - 1) * (ell - 1) + 1
    for _ in range(50):
        a = rng.randrange(r)
        diag = []
        for _ in range(n):
            lo = rng.randrange(r - 1)
            diag.append((lo, rng.randrange(lo + 1, r)))
        b, idx = diagonal_pigeonhole(diag, a, ell)
        assert b != a and len(idx) == ell
        # build the square from the picked diagonal entries and read off I_ell(b, a)
        picks = [hi if hi != a else lo for lo, hi in diag]
        sub = [[picks[i] if i == j else a for j in idx] for i in idx]
        assert sub == identity_pattern(ell, b, a).to_rows()


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_case2_kernel(ell):
    rng = random.Random(ell)
    for _ in range(50):
        a, b = rng.sample(range(3), 2)
        n = 2 * ell
        sq = [[a if i > j else b if i < j else rng.randrange(3) for j in range(n)] for i in range(n)]
        kr, kc = alternate_deletion(n)
        sub = [[sq[i][j] for j in kc] for i in kr]
        assert sub == triangular_pattern(ell, a, b).to_rows()


def test_es_examples():
    assert es_monotone((5, 4, 3, 2, 1), 3) == ("decreasing", (0, 1, 2))
    assert es_monotone((3, 1, 2), 2) == ("increasing", (1, 2))
    assert es_monotone((2, 1), 3) is None
    assert es_monotone((), 0) == ("increasing", ())


@pytest.mark.parametrize("n", range(1, 8))
def test_es_exhaustive(n):
    for ell in (2, 3):
        for perm in itertools.permutations(range(n)):
            got = es_monotone(perm, ell)
            if n >= (ell - 1) ** 2 + 1:
                assert got is not None
            if got is not None:
                d, idx = got
                vals = [perm[i] for i in idx]
                assert len(idx) == ell and list(idx) == sorted(idx)
                assert vals == (sorted(vals) if d == "increasing" else sorted(vals, reverse=True))


def test_submatrix_complete():
    A = complete_matrix(4, 2)
    res = verified(A, extract_submatrix(A, 2), Mode.SUBMATRIX)
    assert res.kind in {Kind.IDENTITY, Kind.TRIANGULAR, Kind.IDENTITY_REVERSED,
                        Kind.TRIANGULAR_REVERSED}


def test_submatrix_identity_order():
    A = identity_pattern(4, 1, 0)
    res = verified(A, extract_submatrix(A, 2), Mode.SUBMATRIX)
    assert res.kind is Kind.IDENTITY and (res.a, res.b) == (1, 0)
    assert res.witness.rows == (0, 1) and res.witness.cols == (0, 1)


def test_submatrix_reversed_branch():
    A = AlphMatrix(2, 4, identity_pattern(4, 1, 0).columns[::-1])
    res = verified(A, extract_submatrix(A, 2), Mode.SUBMATRIX)
    assert res.kind is Kind.IDENTITY_REVERSED


def test_submatrix_absent():
    assert not extract_submatrix(AlphMatrix.from_rows([[0] * 4] * 3), 2).found


def test_submatrix_small_fallback():
    A = complete_matrix(3, 2)
    res = verified(A, extract_submatrix(A, 2), Mode.SUBMATRIX)
    assert "direct submatrix search" in res.diagnostics[-1]
    res = verified(identity_pattern(3, 1, 0), extract_submatrix(identity_pattern(3, 1, 0), 2),
                   Mode.SUBMATRIX)
    assert res.kind is Kind.IDENTITY


@pytest.mark.parametrize("m", [3, 4])
def test_completeness_desk_scale(m):
    threshold = forb_exact(m, 2, family_T(2, 2)).value
    rng = random.Random(m)
    for _ in range(25):
        A = random_simple(rng, m, rng.randint(threshold + 1, 2 ** m), 2)
        for st in Strategy:
            verified(A, extract_configuration(A, 2, st, branching_budget=1))


def test_both_triggers_occur():
    rng = random.Random(1)
    seen = set()
    for _ in range(80):
        m = rng.choice([3, 4])
        A = random_simple(rng, m, rng.randint(5, 2 ** m), 2)
        res = extract_configuration(A, 2, "proof", branching_budget=1)
        verified(A, res)
        seen.add(res.trigger)
    assert {"chain", "branching"} <= seen


def test_branching_trigger_r3():
    rng = random.Random(2)
    hits = 0
    for _ in range(40):
        m = rng.randint(3, 5)
        A = random_simple(rng, m, rng.randint(3 ** m // 2, 3 ** m), 3)
        diag = []
        got = _branching_trigger(A, build_tree(A), 2, list(family_T(2, 3)), Mode.CONFIGURATION,
                                 0, diag)
        if got is not None:
            spec, w = got
            from confex.patterns import realize
            assert verify_witness(realize(spec), A, w)
            hits += 1
    assert hits > 0


def test_result_json():
    res = extract_configuration(complete_matrix(3, 2), 2)
    js = res.to_json()
    assert js["found"] and js["kind"] in {"I", "T"} and js["witness"]["mode"] == "configuration"
