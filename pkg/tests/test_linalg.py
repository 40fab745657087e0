import random

from mforge import linalg
from mforge.scalars import F5, QQ, random_scalar


def mat(field, rows):
    return [[field.scalar(v) for v in row] for row in rows]


def test_rref_pivots():
    m = mat(QQ, [[1, 2, 3], [2, 4, 7], [0, 0, 1]])
    red, pivots = linalg.rref(m)
    assert pivots == [0, 2]
    assert len(red) == 2


def test_solve_and_residual():
    m = mat(QQ, [[2, 1], [1, 3]])
    rhs = [QQ.scalar(5), QQ.scalar(10)]
    x = linalg.solve(m, rhs)
    assert linalg.mat_vec(m, x) == rhs


def test_solve_inconsistent():
    m = mat(QQ, [[1, 1], [1, 1]])
    assert linalg.solve(m, [QQ.scalar(0), QQ.scalar(1)]) is None


def test_invert_round_trip():
    rng = random.Random(3)
    for _ in range(10):
        m = [[random_scalar(QQ, rng, 5) for _ in range(3)] for _ in range(3)]
        inv = linalg.invert(m)
        if inv is None:
            continue
        prod = [[sum((m[i][k] * inv[k][j] for k in range(3)), QQ.zero())
                 for j in range(3)] for i in range(3)]
        assert prod == linalg.identity(QQ, 3)


def test_kernel_orthogonal_to_rows():
    m = mat(F5, [[1, 2, 3, 4], [2, 4, 1, 0]])
    ker = linalg.kernel_basis(m, F5)
    assert len(ker) == 2
    for vec in ker:
        assert all(r.is_zero() for r in linalg.mat_vec(m, vec))


def test_kernel_of_empty_matrix_is_everything():
    ker = linalg.kernel_basis([], QQ, n_cols=3)
    assert len(ker) == 3


def test_in_span():
    m = mat(QQ, [[1, 0, 1], [0, 1, 1]])
    red = linalg.rref(m)
    assert linalg.in_span(red, [QQ.scalar(2), QQ.scalar(3), QQ.scalar(5)])
    assert not linalg.in_span(red, [QQ.scalar(0), QQ.scalar(0), QQ.scalar(1)])


def test_rank_brute_force_oracle():
    # oracle: rank = largest k with an invertible k x k minor
    rng = random.Random(9)
    import itertools
    for _ in range(8):
        m = [[random_scalar(F5, rng) for _ in range(4)] for _ in range(3)]
        got = linalg.rank(m)
        best = 0
        for k in range(1, 4):
            for rows in itertools.combinations(range(3), k):
                for cols in itertools.combinations(range(4), k):
                    minor = [[m[r][c] for c in cols] for r in rows]
                    if linalg.invert(minor) is not None:
                        best = max(best, k)
        assert got == best
