"""Exact linear algebra: rref, kernels, and the independent Bareiss path."""

import random

from firwb.field import QQ, RatFunc, parse_ratfunc
from firwb.linalg import ExactMatrix, RowReducer, bareiss_rank


def rf(s):
    return parse_ratfunc(s)


def mat(rows):
    parsed = [[rf(v) for v in row] for row in rows]
    return ExactMatrix(QQ, len(parsed), len(parsed[0]), parsed)


def test_rref_identity():
    m = ExactMatrix.identity(QQ, 3)
    rank, pivots, red = m.rref()
    assert rank == 3
    assert pivots == [0, 1, 2]
    assert m.kernel_basis() == []


def test_rref_rank_one_kernel():
    # oracle: 2x2 determinant x1*x1 - x1^2*1 = 0, so rank 1
    m = mat([["x1", "x1^2"], ["1", "x1"]])
    assert m.det() == RatFunc.zero(QQ)
    rank, pivots, _ = m.rref()
    assert rank == 1
    basis = m.kernel_basis()
    assert len(basis) == 1
    # kernel is spanned by (x1, -1), up to the pivot normalization
    v = basis[0]
    assert m.mul_vector(v) == [RatFunc.zero(QQ)] * 2
    scale = v[0] / rf("x1")
    assert [v[0], v[1]] == [rf("x1") * scale, rf("-1") * scale]


def test_rref_zero_matrix():
    m = ExactMatrix(QQ, 2, 2)
    rank, pivots, _ = m.rref()
    assert rank == 0
    assert len(m.kernel_basis()) == 2


def test_kernel_vectors_annihilate():
    rng = random.Random(3)
    for _ in range(20):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        m = ExactMatrix(
            QQ,
            rows,
            cols,
            [
                [RatFunc.const(QQ, rng.randint(-3, 3)) for _ in range(cols)]
                for _ in range(rows)
            ],
        )
        rank, _, _ = m.rref()
        kernel = m.kernel_basis()
        assert rank + len(kernel) == cols
        for v in kernel:
            assert all(e.is_zero for e in m.mul_vector(v))


_DENOMINATOR_POOL = ["x1 + 2", "x2 + 3"]


def _random_funcfield_matrix(rng, rows, cols):
    entries = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            choice = rng.random()
            if choice < 0.35:
                row.append(RatFunc.zero(QQ))
            elif choice < 0.75:
                row.append(RatFunc.const(QQ, rng.randint(-3, 3)))
            else:
                num = rf(f"x{rng.randint(1, 3)}") + RatFunc.const(QQ, rng.randint(-2, 2))
                if rng.random() < 0.4:
                    num = num / rf(rng.choice(_DENOMINATOR_POOL))
                row.append(num)
        entries.append(row)
    return ExactMatrix(QQ, rows, cols, entries)


def test_bareiss_rank_matches_rref():
    rng = random.Random(5)
    for _ in range(25):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = _random_funcfield_matrix(rng, rows, cols)
        assert bareiss_rank(m) == m.rref()[0]


def test_matrix_product_and_identity():
    m = mat([["x1", "0"], ["1", "x2"]])
    i = ExactMatrix.identity(QQ, 2)
    assert m.mul(i) == m
    assert i.mul(m) == m
    sq = m.mul(m)
    assert sq.entries[0][0] == rf("x1^2")
    assert sq.entries[1][0] == rf("x1 + x2")


def test_row_reducer_matches_rank():
    rng = random.Random(9)
    for _ in range(15):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = _random_funcfield_matrix(rng, rows, cols)
        reducer = RowReducer(QQ)
        for row in m.entries:
            reducer.add(row)
        assert reducer.rank == m.rref()[0]
        for row in m.entries:
            assert reducer.contains(row)
