import random

import pytest
import sympy

from invmon.intmat import (IntegerMatrix, hermite_normal_form, invariant_factors, kernel_basis,
                           smith_normal_form)


def random_matrix(rng, rows, cols, bound=6):
    return IntegerMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def to_sympy(A):
    return sympy.Matrix(A.tolist()) if A.rows and A.cols else sympy.zeros(A.rows, A.cols)


def sympy_factors(A):
    from sympy.matrices.normalforms import smith_normal_form as snf
    D = snf(to_sympy(A), domain=sympy.ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]


@pytest.mark.parametrize("seed", range(60))
def test_against_sympy(seed):
    rng = random.Random(seed)
    A = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
    S = to_sympy(A)
    assert A.rank() == S.rank()
    assert invariant_factors(A) == sympy_factors(A)
    if A.rows == A.cols:
        assert A.det() == S.det()


@pytest.mark.parametrize("seed", range(30))
def test_normal_form_certificates(seed):
    rng = random.Random(100 + seed)
    A = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
    H, U = hermite_normal_form(A)
    assert U @ A == H
    assert abs(U.det()) == 1
    D, L, R = smith_normal_form(A)
    assert L @ A @ R == D
    assert abs(L.det()) == 1 and abs(R.det()) == 1
    d = D.tolist()
    ds = [d[i][i] for i in range(min(D.rows, D.cols))]
    assert all(d[i][j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    nz = [d for d in ds if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@pytest.mark.parametrize("seed", range(30))
def test_kernel_basis_spans_nullspace(seed):
    rng = random.Random(200 + seed)
    A = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 6), bound=3)
    K = kernel_basis(A)
    assert len(K) == A.cols - A.rank()
    for v in K:
        assert not any(A @ v)
    # saturation: the basis spans a direct summand, so its gcd of maximal minors is 1
    if K:
        assert invariant_factors(IntegerMatrix(K)) == [1] * len(K)


def test_known_values():
    A = IntegerMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert invariant_factors(A) == [2, 6, 12]
    assert IntegerMatrix.identity(3).det() == 1
    assert IntegerMatrix([[1, 0, 0], [0, 1, 0]]).rank() == 2
