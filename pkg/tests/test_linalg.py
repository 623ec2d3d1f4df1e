import random
from fractions import Fraction

import pytest
import sympy
from sympy import GF as sGF
from sympy.polys.matrices import DomainMatrix

from liecat.linalg import (GF, QQ, Matrix, image_basis, kernel_basis, parse_field, quotient_basis,
                           rref, solve, left_inverse)


def rand_matrix(rng, r, c, F, density=0.5):
    rows = [[F(rng.randint(-3, 3)) if rng.random() < density else F.zero for _ in range(c)]
            for _ in range(r)]
    return Matrix.from_rows(rows, F, c), rows


def test_parse_field():
    assert parse_field("Q") is QQ or parse_field("Q") == QQ
    assert parse_field("F5").char == 5
    with pytest.raises(ValueError):
        parse_field("F4")


def test_gf_arithmetic():
    F = GF(7)
    assert F.norm(F.inv(3) * 3) == 1
    assert F.norm(-1) == 6


@pytest.mark.parametrize("seed", range(25))
def test_rank_and_kernel_against_sympy(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 6), rng.randint(1, 6)
    M, rows = rand_matrix(rng, r, c, QQ)
    S = sympy.Matrix(rows)
    assert M.rank() == S.rank()
    ker = kernel_basis(M)
    assert len(ker) == c - S.rank()
    for v in ker:
        assert all(x == 0 for x in (S * sympy.Matrix(v)))
    assert len(image_basis(M)) == S.rank()


@pytest.mark.parametrize("seed", range(10))
def test_rank_mod_p_against_sympy(seed):
    rng = random.Random(seed)
    F = GF(3)
    r, c = rng.randint(1, 5), rng.randint(1, 5)
    rows = [[rng.randrange(3) for _ in range(c)] for _ in range(r)]
    M = Matrix.from_rows(rows, F, c)
    dm = DomainMatrix.from_list_sympy(r, c, rows).convert_to(sGF(3))
    assert M.rank() == dm.rank()


def test_rref_is_exact():
    M = Matrix.from_rows([[2, 4], [1, 3]], QQ, 2)
    R, piv = rref(M)
    assert piv == [0, 1]
    assert R.rows() == [[1, 0], [0, 1]]
    assert isinstance(R.rows()[0][0], Fraction) or R.rows()[0][0] == 1


def test_rref_column_order_changes_pivots():
    M = Matrix.from_rows([[1, 1, 0]], QQ, 3)
    _, piv = rref(M, [1, 0, 2])
    assert piv == [1]


def test_quotient_basis_kills_subspace():
    reps, q = quotient_basis(3, [[1, -1, 0]], QQ)
    assert reps == [1, 2]
    assert q.apply({0: 1, 1: -1}) == {}
    reps, q = quotient_basis(3, [[1, -1, 0]], QQ, column_order=[1, 0, 2])
    assert reps == [0, 2]


@pytest.mark.parametrize("seed", range(10))
def test_solve_roundtrip(seed):
    rng = random.Random(seed)
    A, _ = rand_matrix(rng, 4, 3, QQ, 0.8)
    X, _ = rand_matrix(rng, 3, 2, QQ)
    B = A @ X
    Y = solve(A, B)
    assert Y is not None and A @ Y == B


def test_solve_inconsistent():
    A = Matrix.from_rows([[1], [1]], QQ, 1)
    B = Matrix.from_rows([[1], [0]], QQ, 1)
    assert solve(A, B) is None


def test_left_inverse():
    K = Matrix.from_rows([[1, 0], [2, 1], [0, 3]], QQ, 2)
    assert left_inverse(K) @ K == Matrix.identity(2, QQ)


def test_lazy_matches_materialized():
    M = Matrix.lazy(3, 3, QQ, lambda j: {j: QQ(j + 1)})
    assert M == M.materialize()
    assert M.entry(2, 2) == 3


def test_kron_dims_and_values():
    A = Matrix.from_rows([[1, 2], [0, 1]], QQ, 2)
    B = Matrix.identity(2, QQ)
    K = A.kron(B)
    assert K.shape == (4, 4)
    assert K.entry(0, 2) == 2


def test_field_mismatch_rejected():
    with pytest.raises(ValueError):
        Matrix.identity(2, QQ) + Matrix.identity(2, GF(2))
