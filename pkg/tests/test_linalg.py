import random
from fractions import Fraction

from dgres.linalg import SliceMatrix, solve_linear
from dgres.scalars import Field

from oracles import dense_rank_oracle


def _from_rows(field, rows):
    M = SliceMatrix(field, len(rows), len(rows[0]) if rows else 0)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v != field.zero:
                M.set(i, j, v)
    return M


def test_rank_examples():
    QQ = Field.rationals()
    assert _from_rows(QQ, [[Fraction(1), Fraction(1)]]).rank() == 1
    assert SliceMatrix(QQ, 3, 4).rank() == 0


def test_rank_against_dense_oracle_fp():
    F = Field.prime(101)
    rng = random.Random(7)
    for _ in range(5):
        rows = [[rng.randrange(0, 101) for _ in range(20)] for _ in range(20)]
        M = _from_rows(F, rows)
        assert M.rank() == dense_rank_oracle(rows, p=101)


def test_rank_against_dense_oracle_qq():
    QQ = Field.rationals()
    rng = random.Random(13)
    for _ in range(5):
        rows = [[Fraction(rng.randrange(-5, 6), rng.randrange(1, 4)) for _ in range(12)]
                for _ in range(9)]
        M = _from_rows(QQ, rows)
        assert M.rank() == dense_rank_oracle(rows)


def test_nullspace_is_kernel():
    QQ = Field.rationals()
    rng = random.Random(3)
    rows = [[Fraction(rng.randrange(-3, 4)) for _ in range(8)] for _ in range(5)]
    M = _from_rows(QQ, rows)
    null = M.nullspace()
    assert len(null) == M.ncols - M.rank()
    for vec in null:
        for row in rows:
            assert sum(a * b for a, b in zip(row, vec)) == 0


def test_solve_consistent_and_certificate():
    QQ = Field.rationals()
    A = _from_rows(QQ, [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    x, cert = solve_linear(A, [Fraction(3), Fraction(6)])
    assert cert is None
    assert x[0] + 2 * x[1] == 3
    x2, cert2 = solve_linear(A, [Fraction(3), Fraction(7)])
    assert x2 is None and cert2 is not None
    # certificate is a genuine dual witness: λᵀA = 0, λᵀb != 0
    lam = cert2.row_combination
    rows = A.to_dense()
    for j in range(A.ncols):
        assert sum(lam.get(i, 0) * rows[i][j] for i in range(A.nrows)) == 0
    b = [Fraction(3), Fraction(7)]
    assert sum(lam.get(i, 0) * b[i] for i in range(A.nrows)) != 0


def test_rank_invariance_permutation_and_base_change():
    QQ = Field.rationals()
    rng = random.Random(29)
    rows = [[Fraction(rng.randrange(-4, 5)) for _ in range(6)] for _ in range(6)]
    M = _from_rows(QQ, rows)
    perm = list(range(6))
    rng.shuffle(perm)
    permuted = _from_rows(QQ, [rows[i] for i in perm])
    assert M.rank() == permuted.rank()
    # invertible upper-triangular base change on the right
    U = [[Fraction(1 if i == j else rng.randrange(-2, 3) if j > i else 0) for j in range(6)]
         for i in range(6)]
    prod = [[sum(rows[i][k] * U[k][j] for k in range(6)) for j in range(6)] for i in range(6)]
    assert _from_rows(QQ, prod).rank() == M.rank()


def test_fp_rank_matches_rational_generic():
    # a matrix with entries small enough that no pivot degenerates mod 101
    QQ = Field.rationals()
    F = Field.prime(101)
    rows = [[1, 2, 3], [0, 1, 4], [5, 6, 0]]
    rq = _from_rows(QQ, [[Fraction(v) for v in row] for row in rows]).rank()
    rp = _from_rows(F, rows).rank()
    assert rq == rp == 3
