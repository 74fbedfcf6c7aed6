# tests/strategies.py
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from order.poset import validate_poset


@st.composite
def posets(draw, max_n: int = 5, min_n: int = 0):
    n = draw(st.integers(min_n, max_n))
    rel = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            rel[i, j] = draw(st.booleans())
    for _ in range(n):
        rel = rel | (np.matmul(rel.astype(int), rel.astype(int)) > 0)
    return validate_poset(rel)


def grid_points(denominator: int = 16):
    return st.integers(0, denominator).map(lambda k: Fraction(k, denominator))


seeds = st.integers(0, 2**32 - 1)
