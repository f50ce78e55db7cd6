import itertools
import math
import random

import pytest

from confex.ramsey import (ColumnClass, ConstantBlock, DiagonalConstant, EdgeColoring, FirstColumn,
                           SecondColumn, SquareLayout, T_value, bound_main, classify_block,
                           colour_count_main, colour_count_t, colour_edges, depth_bound,
                           f_recursion, find_mono_clique, multinomial, multinomial_product,
                           r2_recursion, ramsey_upper, u_args, u_closed, u_middle, u_value,
                           v_args, v_value)


def test_ramsey_examples():
    assert ramsey_upper(3, 3) == 6
    assert ramsey_upper(2, 2) == 2
    assert ramsey_upper(3, 3, 3) == 90
    assert ramsey_upper(5) == 5
    assert ramsey_upper(1, 7, 7) == 1
    with pytest.raises(ValueError):
        ramsey_upper()
    with pytest.raises(ValueError):
        ramsey_upper(0, 3)


def test_two_colour_binomial():
    for a in range(2, 7):
        for b in range(2, 7):
            assert ramsey_upper(a, b) == math.comb(a + b - 2, a - 1)


def test_symmetric_monotone():
    rng = random.Random(3)
    for _ in range(50):
        ks = [rng.randint(2, 6) for _ in range(rng.randint(2, 4))]
        perm = ks[:]
        rng.shuffle(perm)
        assert ramsey_upper(*ks) == ramsey_upper(*perm)
        bumped = ks[:]
        bumped[0] += 1
        assert ramsey_upper(*bumped) >= ramsey_upper(*ks)


def test_multinomial_paths():
    for parts in itertools.product(range(0, 5), repeat=3):
        assert multinomial(parts) == multinomial_product(parts)


def test_u():
    assert u_args(2, 2) == [2, 2, 4, 4, 4, 4]
    assert u_value(2, 2) == 67_267_200
    assert multinomial([1, 1, 3, 3, 3, 3]) == 67_267_200
    assert u_closed(2, 2) == 2 ** 60
    assert u_args(2, 3) == [3] * 3 + [4] * 12
    for r in range(2, 5):
        for ell in range(1, 6):
            assert u_value(ell, r) <= u_middle(ell, r) <= u_closed(ell, r)


def test_v_and_T():
    assert T_value(2, 2) == 3
    assert all(T_value(r, 1) == 1 for r in range(2, 6))
    args = v_args(2, 2, 2)
    assert args.count(2) == 8 and args.count(8) == 12 and len(args) == 20
    assert v_value(1, 2, 1) == ramsey_upper(*v_args(1, 2, 1))


def test_colour_counts():
    assert colour_count_main(2) == 6 and colour_count_main(3) == 15
    assert colour_count_t(2, 3) == 20
    # at r = 2 the count equals the number of Ramsey arguments in v
    for t in range(1, 4):
        assert colour_count_t(2, T_value(2, t)) == len(v_args(1, 2, t))


def test_classify_block():
    assert classify_block((0, 0), (0, 0)) == DiagonalConstant(0)
    assert classify_block((1, 0), (0, 0)) == FirstColumn(0, 1)
    assert classify_block((0, 1), (0, 0)) == SecondColumn(0, 1)
    # both columns differ: first column wins
    assert classify_block((1, 2), (0, 0)) == FirstColumn(0, 1)
    assert classify_block((0, 1, 0, 1), (0, 1, 0, 1)) == ConstantBlock((0, 1))
    assert classify_block((0, 2, 0, 1), (0, 1, 0, 1)) == ColumnClass(1, 2, 1)


def test_layout_validation():
    SquareLayout((((0, 1), (1, 1)), ((0, 0), (0, 1))))
    with pytest.raises(ValueError):
        SquareLayout((((0, 1), (1, 1)), ((0, 1), (0, 1))))  # below diagonal not doubled
    with pytest.raises(ValueError):
        SquareLayout((((1, 0),),))  # diagonal not increasing
    with pytest.raises(ValueError):
        SquareLayout((((0, 1, 1),),))


def random_layout(rng, n, r, w=2):
    h = w // 2
    cells = []
    for i in range(n):
        row = []
        for j in range(n):
            if i > j:
                half = tuple(rng.randrange(r) for _ in range(h))
                row.append(half + half)
            elif i == j:
                lo = tuple(rng.randrange(r - 1) for _ in range(h))
                row.append(lo + tuple(rng.randrange(x + 1, r) for x in lo))
            else:
                row.append(tuple(rng.randrange(r) for _ in range(w)))
        cells.append(tuple(row))
    return SquareLayout(tuple(cells))


def test_colour_edges_counts():
    rng = random.Random(11)
    for r in (2, 3):
        for w in (2, 4):
            for _ in range(20):
                L = random_layout(rng, 7, r, w)
                col = colour_edges(L)
                assert len(col.colours) == 21
                if w == 2:
                    assert len(col.classes()) <= colour_count_main(r)
                else:
                    T = w // 2
                    assert len(col.classes()) <= r ** T + 2 * T * r * (r - 1)


def test_cliques():
    rng = random.Random(5)
    for _ in range(100):
        colours = {(i, j): rng.randrange(2) for i in range(6) for j in range(i + 1, 6)}
        hit = find_mono_clique(EdgeColoring(6, colours), default=3)
        assert hit is not None and len(hit[1]) == 3
    c5 = {(i, j): int((j - i) % 5 in (1, 4)) for i in range(5) for j in range(i + 1, 5)}
    assert find_mono_clique(EdgeColoring(5, c5), {0: 3, 1: 3}) is None
    k4 = EdgeColoring(4, {(i, j): "x" for i in range(4) for j in range(i + 1, 4)})
    assert find_mono_clique(k4, {"x": 4}) == ("x", (0, 1, 2, 3))


def test_bounds():
    rep = bound_main(2, 2)
    assert rep.specialized == 6 ** 12 == 2_176_782_336
    assert rep.general == 2 ** 120
    assert rep.r2_f_init == 3
    assert rep.specialized_family == 6 ** 36
    assert depth_bound(2, 2) == 2 and depth_bound(3, 3) == 7
    assert rep.product_form == u_closed(2, 2) ** 3
    f_init, f0 = r2_recursion(2)
    assert f_init == 3 and f0 == 2 * ramsey_upper(*[2] * 6) * 3 + 2
    assert f_recursion(2, 2) >= 1
    assert bound_main(2, 3).specialized is None
    assert "general" in rep.to_json()
