import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soficdual.intlinalg import (
    FGAbelianGroup,
    IntMatrix,
    MatrixError,
    cokernel,
    determinant,
    format_matrix,
    kernel_rank,
    mat_mul,
    mat_pow,
    matrix_to_json,
    parse_matrix,
    rank_exact,
    smith_normal_form,
)

from helpers import int_matrices
from oracles import cofactor_det, minor_gcd_factors

I = IntMatrix.identity

# oracle values, computed with tests/oracles.py before the implementation existed
I_MINUS_A_FACTORS = (1, 1, 1, 1, 5)
I_MINUS_B_FACTORS = (1, 1, 1, 4)
FIG2_MATRIX = IntMatrix.from_rows([[2, 0, 2, 0], [0, 2, 2, 0], [0, 1, 0, 1], [1, 0, 0, 0]])


def test_construction_checks():
    with pytest.raises(MatrixError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(MatrixError):
        IntMatrix(0, 1, ())
    with pytest.raises(MatrixError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(MatrixError):
        IntMatrix(1, 1, (1.5,))


def test_mat_mul_and_pow():
    fib = IntMatrix.from_rows([[1, 1], [1, 0]])
    assert mat_pow(fib, 2) == IntMatrix.from_rows([[2, 1], [1, 1]])
    assert mat_pow(I(4), 20) == I(4)
    assert mat_pow(fib, 0) == I(2)
    # F_101, well past 64 bits
    assert mat_pow(fib, 100)[0, 0] == 573147844013817084101
    with pytest.raises(MatrixError):
        mat_mul(IntMatrix.zeros(2, 3), IntMatrix.zeros(2, 3))
    with pytest.raises(MatrixError):
        mat_pow(IntMatrix.zeros(2, 3), 2)


def test_printed_matrix_cube_positive(A, B):
    assert mat_pow(A, 3).is_positive()
    assert mat_pow(B, 3).is_positive()
    assert not mat_pow(A, 2).is_positive()


def test_rank_examples(A, B):
    assert rank_exact(A) == 5
    assert rank_exact(B) == 4
    assert rank_exact(IntMatrix.zeros(3)) == 0
    assert rank_exact(IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])) == 1


def test_determinant_matches_cofactor(A, B):
    for m in (A, B, I(5) - A, I(4) - B, FIG2_MATRIX, I(4) - FIG2_MATRIX):
        assert determinant(m) == cofactor_det(m.to_rows())
    assert abs(determinant(I(4) - B)) == 4
    assert determinant(I(4) - FIG2_MATRIX) == 5


@pytest.mark.parametrize(
    "rows,expected",
    [
        ("A", I_MINUS_A_FACTORS),
        ("B", I_MINUS_B_FACTORS),
        ("fig2", (1, 1, 1, 5)),
        ("id", (1, 1, 1)),
    ],
)
def test_snf_examples(rows, expected, A, B):
    m = {"A": I(5) - A, "B": I(4) - B, "fig2": I(4) - FIG2_MATRIX, "id": I(3)}[rows]
    snf = smith_normal_form(m)
    snf.verify(m)
    assert snf.invariant_factors == expected
    assert minor_gcd_factors(m.to_rows()) == expected


def test_snf_rectangular_and_zero():
    m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12]])
    snf = smith_normal_form(m)
    assert snf.invariant_factors == (2, 6)
    assert snf.U.shape == (2, 2) and snf.V.shape == (3, 3)
    z = smith_normal_form(IntMatrix.zeros(2, 3))
    assert z.invariant_factors == (0, 0)


@settings(max_examples=200, deadline=None)
@given(int_matrices())
def test_snf_certificate_and_minor_gcds(m):
    snf = smith_normal_form(m)
    snf.verify(m)
    assert snf.invariant_factors == minor_gcd_factors(m.to_rows())
    assert rank_exact(m) == len(snf.nonzero_factors)


@settings(max_examples=200, deadline=None)
@given(int_matrices(), st.randoms(use_true_random=False))
def test_snf_invariant_under_transpose_and_permutation(m, rnd):
    factors = smith_normal_form(m).invariant_factors
    assert smith_normal_form(m.transpose()).invariant_factors == factors
    rp = list(range(m.rows))
    cp = list(range(m.cols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    shuffled = IntMatrix.from_rows([[m[rp[i], cp[j]] for j in range(m.cols)] for i in range(m.rows)])
    assert smith_normal_form(shuffled).invariant_factors == factors


@settings(max_examples=200, deadline=None)
@given(int_matrices(square=True))
def test_determinant_and_cokernel_order(m):
    det = determinant(m)
    assert det == cofactor_det(m.to_rows())
    if det:
        snf = smith_normal_form(m)
        prod = 1
        for d in snf.nonzero_factors:
            prod *= d
        assert prod == abs(det)
        assert cokernel(m).free_rank == 0
        assert cokernel(m).torsion_order == abs(det)
    assert kernel_rank(m) == cokernel(m).free_rank


def test_cokernel_and_kernel_examples(A, B):
    assert cokernel(I(5) - A) == FGAbelianGroup(0, (5,))
    assert cokernel(I(1) - IntMatrix.from_rows([[2]])) == FGAbelianGroup()
    assert cokernel(I(4) - FIG2_MATRIX) == FGAbelianGroup(0, (5,))
    assert kernel_rank(I(5) - A) == 0
    assert kernel_rank(IntMatrix.zeros(3)) == 3
    assert kernel_rank(I(4) - B) == 0
    assert cokernel(IntMatrix.zeros(2)) == FGAbelianGroup(2, ())
    with pytest.raises(MatrixError):
        cokernel(IntMatrix.zeros(2, 3))
    with pytest.raises(MatrixError):
        kernel_rank(IntMatrix.zeros(2, 3))


def test_abelian_group_validation_and_str():
    assert str(FGAbelianGroup(0, (5,))) == "Z/5Z"
    assert str(FGAbelianGroup()) == "0"
    assert str(FGAbelianGroup(2, (2, 4))) == "Z^2 + Z/2Z + Z/4Z"
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (1,))
    g = FGAbelianGroup(1, (3, 6))
    assert FGAbelianGroup.from_json(g.to_json()) == g


def test_matrix_text_and_json_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = IntMatrix(r, c, tuple(rng.randint(-50, 50) for _ in range(r * c)))
        assert parse_matrix(format_matrix(m)) == m
        import json

        assert parse_matrix(json.dumps(matrix_to_json(m))) == m


def test_matrix_parse_errors():
    with pytest.raises(MatrixError):
        parse_matrix("2 2\n1 2 3")
    with pytest.raises(MatrixError):
        parse_matrix("2 2\n1 x 3 4")
    with pytest.raises(MatrixError):
        parse_matrix("")
