import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from fplkit.exact import SingularMatrix, bareiss_det, det, solve


def test_small_determinants():
    assert bareiss_det([]) == 1
    assert bareiss_det([[5]]) == 5
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert det([[Fraction(1, 2), 1], [0, 1]]) == Fraction(1, 2)
    assert bareiss_det([[1, 2], [2, 4]]) == 0


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(st.integers(min_value=1, max_value=6).flatmap(lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert det(rows) == Fraction(str(sympy.Matrix(rows).det()))


def test_solve_matches_sympy():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 7)
        m = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
        b = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
        if det(m) == 0:
            with pytest.raises(SingularMatrix):
                solve(m, b)
            continue
        x = solve(m, b)
        assert [sum(m[i][j] * x[j] for j in range(n)) for i in range(n)] == b
        assert x == [Fraction(str(v)) for v in sympy.Matrix(m).LUsolve(sympy.Matrix(b))]
