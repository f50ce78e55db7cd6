import random

import pytest
from hypothesis import settings, strategies as st

from confex.matrix import AlphMatrix

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SEED = 20240611


@pytest.fixture
def rng():
    return random.Random(SEED)


@st.composite
def matrices(draw, max_rows=4, max_cols=6, max_alphabet=3, min_rows=0):
    r = draw(st.integers(1, max_alphabet))
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(0, max_cols))
    cols = draw(st.lists(st.tuples(*[st.integers(0, r - 1)] * m), min_size=n, max_size=n))
    return AlphMatrix(r, m, tuple(cols))


def random_matrix(rng, m, n, r):
    return AlphMatrix(r, m, tuple(tuple(rng.randrange(r) for _ in range(m)) for _ in range(n)))


def random_simple(rng, m, n, r):
    from confex.matrix import code_to_column

    codes = sorted(rng.sample(range(r ** m), n))
    return AlphMatrix(r, m, tuple(code_to_column(c, m, r) for c in codes))
