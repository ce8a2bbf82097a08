from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klrverify.exactla import (Echelon, ExactMatrix, in_span, inverse, kernel_basis,
                               kernel_matrix, matrix_rank, nullspace, rref, solve, solve_matrix)


def test_rref_identity():
    I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    R, piv, r = rref(I3)
    assert R == I3 and piv == [0, 1, 2] and r == 3


def test_rref_zero_and_rank_one():
    assert rref([[0, 0], [0, 0]])[2] == 0
    R, piv, r = rref([[1, 2], [2, 4]])
    assert r == 1 and piv == [0] and R[0] == [1, 2]


def test_solve_matrix():
    assert solve_matrix([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve_matrix([[1, 2], [2, 4]], [1, 0]) is None


def test_kernel_matrix():
    K = kernel_matrix([[1, 2, 3], [2, 4, 6]])
    assert len(K) == 2
    for v in K:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_in_span_and_solve():
    vs = [{0: 1, 1: 1}, {1: 1, 2: 1}]
    c = in_span(vs, {0: 1, 2: -1})
    assert c == {0: 1, 1: -1}
    assert in_span(vs, {0: 1}) is None
    assert solve(vs, {}) == {}


def test_kernel_basis_and_nullspace():
    ker = kernel_basis([{0: 1}, {0: 2}, {1: 1}])
    assert len(ker) == 1
    x = ker[0]
    assert x.get(0, 0) + 2 * x.get(1, 0) == 0 and not x.get(2)
    ns = nullspace([{0: 1, 1: -1}], 3)
    assert len(ns) == 2


def test_inverse():
    M = [[2, 1], [7, 4]]
    assert inverse(M) == [[4, -1], [-7, 2]]
    with pytest.raises(Exception):
        inverse([[1, 2], [2, 4]])


def test_exact_matrix_roundtrip():
    M = ExactMatrix.from_rows([[1, 0, Fraction(1, 2)], [0, 0, 0]])
    assert M.dense() == [[1, 0, Fraction(1, 2)], [0, 0, 0]]
    assert M.row(0) == {0: 1, 2: Fraction(1, 2)}
    assert matrix_rank(M.dense()) == 1


def test_echelon_tracks_relations():
    e = Echelon(track=True)
    e.add({0: 1, 1: 1}, tag="a")
    e.add({0: 2, 1: 2}, tag="b")
    assert e.rank == 1 and len(e.relations) == 1


small = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    r = rref(rows)[2]
    assert r + len(kernel_matrix(rows)) == 4
    assert r == matrix_rank(rows)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_solutions_satisfy_system(rows, x):
    b = [sum(a * v for a, v in zip(row, x)) for row in rows]
    sol = solve_matrix(rows, b)
    assert sol is not None
    assert [sum(a * v for a, v in zip(row, sol)) for row in rows] == b
