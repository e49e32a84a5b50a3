import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from nsdivisor.intlinalg import (clear_denominators, echelon_with_transform, in_lattice,
                                 integer_kernel, lattice_equal, lll_reduce, rank, smith_diagonal,
                                 solve_left, unimodular_completion)


def det(m):
    return int(sp.Matrix(m).det())


def test_clear_denominators():
    assert clear_denominators([Fraction(1, 2), Fraction(-1, 3), 0]) == [3, -2, 0]
    assert clear_denominators([4, 6]) == [2, 3]
    assert clear_denominators([0, 0]) == [0, 0]


def test_smith_diagonal_known():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_diagonal([[0, 0], [0, 0]]) == []


def test_solve_left_outside_span():
    assert solve_left([[1, 0, 0], [0, 1, 0]], [0, 0, 1]) is None
    assert solve_left([[2, 0], [0, 3]], [1, 1]) == [Fraction(1, 2), Fraction(1, 3)]


def test_lattice_equal_is_basis_free():
    a = [[1, 0, 0], [0, 1, 0]]
    b = [[1, 1, 0], [2, 1, 0]]
    assert lattice_equal(a, b)
    assert not lattice_equal(a, [[1, 1, 0], [0, 2, 0]])
    assert not in_lattice([[1, 1, 0], [0, 2, 0]], [0, 1, 0])


def test_unimodular_completion_rejects_imprimitive():
    with pytest.raises(ValueError):
        unimodular_completion([2, 4, 6])


small_rows = st.lists(st.lists(st.integers(-6, 6), min_size=5, max_size=5), min_size=1, max_size=4)


@settings(max_examples=150, deadline=None)
@given(small_rows)
def test_kernel_is_saturated_and_complete(rows):
    ker = integer_kernel(rows, 5)
    assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in rows for v in ker)
    assert len(ker) == 5 - rank(rows)
    if ker:
        assert all(e == 1 for e in smith_diagonal(ker))
        assert sp.Matrix(ker).rank() == len(ker)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6))
def test_unimodular_completion(c):
    from math import gcd
    from functools import reduce
    if reduce(gcd, c, 0) != 1:
        return
    v, w = unimodular_completion(c)
    k = len(c)
    assert w[0] == c
    assert abs(det(v)) == 1
    prod = [[sum(w[i][t] * v[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    assert prod == [[int(i == j) for j in range(k)] for i in range(k)]
    assert [sum(c[t] * v[t][j] for t in range(k)) for j in range(k)] == [int(j == 0) for j in range(k)]


@settings(max_examples=100, deadline=None)
@given(small_rows)
def test_echelon_transform_is_unimodular(rows):
    e, u, r = echelon_with_transform(rows)
    m = len(rows)
    assert abs(det(u)) == 1
    for i in range(m):
        assert e[i] == [sum(u[i][t] * rows[t][j] for t in range(m)) for j in range(5)]
    assert all(not any(row) for row in e[r:])


def test_lll_keeps_lattice():
    rng = random.Random(3)
    for _ in range(30):
        basis = [[rng.randint(-20, 20) for _ in range(4)] for _ in range(3)]
        if sp.Matrix(basis).rank() < 3:
            continue
        red = lll_reduce(basis)
        assert lattice_equal(basis, red)
        # the first reduced vector is within 2^((k-1)/2) of every lattice vector, inputs included
        first = sum(x * x for x in red[0])
        assert first <= 4 * min(sum(x * x for x in r) for r in basis)


@settings(max_examples=100, deadline=None)
@given(small_rows)
def test_smith_diagonal_matches_sympy(rows):
    from sympy.matrices.normalforms import smith_normal_form
    snf = smith_normal_form(sp.Matrix(rows), domain=sp.ZZ)
    expected = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert smith_diagonal(rows) == expected
