"""Triplet compilation and the sparse solvers"""
import numpy as np
import pytest
from scipy import sparse

from habc.errors import ConfigError, NumericalError, SingularMatrixError
from habc.linalg import DIRECT, KRYLOV, TripletBuilder, compile_triplets, factorize, matvec


def _laplacian(n):
    return sparse.diags([-np.ones(n - 1), 2.0 * np.ones(n), -np.ones(n - 1)], [-1, 0, 1]).tocsc()


def test_duplicates_are_summed():
    builder = TripletBuilder(3)
    builder.add(0, 0, 1.0)
    builder.add(0, 0, 2.5)
    builder.add_triplets([2, 1], [1, 2], [4.0, -1.0])
    matrix = builder.compile()
    assert matrix[0, 0] == 3.5
    assert matrix[2, 1] == 4.0 and matrix[1, 2] == -1.0
    assert matrix.nnz == 3
    assert len(builder) == 4


def test_cancelling_entries_are_dropped():
    builder = TripletBuilder(2)
    builder.add(1, 0, 1.0)
    builder.add(1, 0, -1.0)
    builder.add(0, 0, 1.0)
    assert builder.compile().nnz == 1


def test_add_block_dense_and_sparse():
    builder = TripletBuilder(4)
    builder.add_block([0, 2], [1, 3], np.array([[1.0, 0.0], [2.0, 3.0]]))
    builder.add_block([1, 3], [0, 1], sparse.eye(2), scale=-2.0)
    matrix = builder.compile().toarray()
    assert matrix[0, 1] == 1.0 and matrix[2, 1] == 2.0 and matrix[2, 3] == 3.0
    assert matrix[1, 0] == -2.0 and matrix[3, 1] == -2.0
    with pytest.raises(ConfigError):
        builder.add_block([0], [0, 1], np.ones((2, 2)))


def test_out_of_range_index():
    builder = TripletBuilder(2)
    builder.add(2, 0, 1.0)
    with pytest.raises(ConfigError) as exc:
        compile_triplets(builder)
    assert exc.value.key == "index"


def test_extend_keeps_dimension():
    a, b = TripletBuilder(3), TripletBuilder(3)
    a.add(0, 0, 1.0)
    b.add(0, 0, 1.0)
    a.extend(b)
    assert a.compile()[0, 0] == 2.0
    with pytest.raises(ConfigError):
        a.extend(TripletBuilder(4))


def test_matvec_dimension_check():
    with pytest.raises(ConfigError):
        matvec(sparse.eye(3).tocsr(), np.ones(4))


@pytest.mark.parametrize("method", [DIRECT, KRYLOV])
def test_solve_residual(method):
    A = _laplacian(50)
    b = np.linspace(1.0, 2.0, 50)
    factorization = factorize(A, method=method)
    x = factorization.solve(b)
    assert np.linalg.norm(A @ x - b) <= factorization.residual_bound(x, b) * 1e3


def test_empty_row_is_reported():
    A = sparse.lil_matrix((3, 3))
    A[0, 0] = 1.0
    A[2, 2] = 1.0
    with pytest.raises(SingularMatrixError) as exc:
        factorize(A.tocsc())
    assert exc.value.row == 1


def test_numerically_singular():
    A = sparse.csc_matrix(np.array([[1.0, 1.0], [1.0, 1.0]]))
    with pytest.raises(NumericalError):
        factorize(A)


def test_unknown_method():
    with pytest.raises(ConfigError):
        factorize(_laplacian(4), method='cholesky')


def test_rhs_length_mismatch():
    factorization = factorize(_laplacian(4))
    with pytest.raises(ConfigError):
        factorization.solve(np.ones(5))
