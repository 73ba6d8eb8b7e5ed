import random
from fractions import Fraction as Q

import pytest

from spanlab._linalg import (Mat, as_q, inverse, nullspace,
                             primitive_integer_vector, rank, solve)


def rand_mat(rng, rows, cols, lo=-4, hi=5):
    return Mat.from_rows([[Q(rng.randrange(lo, hi)) for _ in range(cols)]
                          for _ in range(rows)], rows=rows, cols=cols)


def test_mat_shape_and_entry():
    m = Mat.from_rows([[1, 2], [3, 4], [5, 6]])
    assert (m.rows, m.cols) == (3, 2)
    assert m.entry(2, 1) == Q(6)
    assert m.T.entry(1, 2) == Q(6)
    with pytest.raises(ValueError):
        Mat.from_rows([[1, 2], [3]])


def test_mat_arithmetic():
    a = Mat.from_rows([[1, 0], [2, -1]])
    b = Mat.from_rows([[0, 1], [1, 1]])
    assert (a + b - b - a).is_zero()
    assert ((a * b) - Mat.from_rows([[0, 1], [-1, 1]])).is_zero()
    assert (a * Mat.eye(2) - a).is_zero()
    assert (-a + a).is_zero()
    assert a.scale(Q(1, 2)).entry(1, 0) == Q(1)
    assert a.apply((Q(1), Q(1))) == (Q(1), Q(1))


def test_stacking():
    a = Mat.eye(2)
    z = Mat.zero(2, 1)
    h = Mat.hstack([a, z])
    assert (h.rows, h.cols) == (2, 3)
    v = Mat.vstack([a, Mat.zero(1, 2)])
    assert (v.rows, v.cols) == (3, 2)
    bd = Mat.block_diag([a, Mat.from_rows([[7]])])
    assert bd.entry(2, 2) == Q(7) and bd.entry(0, 2) == 0
    blk = Mat.block([[a, z], [Mat.zero(1, 2), Mat.from_rows([[5]])]])
    assert (blk.rows, blk.cols) == (3, 3) and blk.entry(2, 2) == Q(5)


def test_rank_known():
    assert rank(Mat.eye(3)) == 3
    assert rank(Mat.zero(4, 2)) == 0
    assert rank(Mat.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(Mat.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 2


def test_rank_random_vs_product_bound():
    rng = random.Random(11)
    for _ in range(20):
        a = rand_mat(rng, rng.randrange(1, 6), rng.randrange(1, 6))
        b = rand_mat(rng, a.cols, rng.randrange(1, 6))
        assert rank(a * b) <= min(rank(a), rank(b))
        assert rank(a) == rank(a.T)


def test_solve_and_nullspace():
    rng = random.Random(5)
    for _ in range(25):
        a = rand_mat(rng, rng.randrange(1, 5), rng.randrange(1, 5))
        x_true = rand_mat(rng, a.cols, 1)
        b = a * x_true
        x = solve(a, b)
        assert x is not None and (a * x - b).is_zero()
        ns = nullspace(a)
        assert ns.cols == a.cols - rank(a)
        if ns.cols:
            assert (a * ns).is_zero()
    # inconsistent system
    a = Mat.from_rows([[1, 0], [1, 0]])
    b = Mat.from_rows([[0], [1]])
    assert solve(a, b) is None


def test_inverse():
    a = Mat.from_rows([[2, 1], [1, 1]])
    ai = inverse(a)
    assert (a * ai - Mat.eye(2)).is_zero()
    with pytest.raises(ValueError):
        inverse(Mat.from_rows([[1, 2], [2, 4]]))


def test_primitive_integer_vector():
    v = primitive_integer_vector([Q(1, 2), Q(-3, 4), Q(0)])
    assert v == [Q(2), Q(-3), Q(0)]
    v = primitive_integer_vector([Q(-2), Q(4)])
    assert v == [Q(1), Q(-2)]  # leading entry made positive


def test_as_q():
    assert as_q("3/7") == Q(3, 7)
    assert as_q(5) == Q(5)
    assert as_q(Q(2, 3)) == Q(2, 3)
