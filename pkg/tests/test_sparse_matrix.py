from fractions import Fraction

import pytest

from rescaling.models.sparse_matrix import (
    EchelonBasis,
    QuotientSpace,
    SparseMatrix,
    TriangularBasis,
    independent_subset,
    rank_of_vectors,
)


def test_rank_over_rationals():
    assert SparseMatrix.from_dense([[1, 2], [2, 4]]).rank() == 1
    assert SparseMatrix.from_dense([[Fraction(1, 2), 1], [1, 2]]).rank() == 1
    assert SparseMatrix.from_dense([[1, 0], [0, 3]]).rank() == 2


def test_empty_matrix_has_rank_zero():
    assert SparseMatrix(3, 4).rank() == 0
    assert SparseMatrix(3, 4).rref() == ([], ())


def test_kernel_basis():
    matrix = SparseMatrix.from_dense([[1, 2], [2, 4]])
    kernel = matrix.kernel_basis()
    assert kernel == [(Fraction(-2), Fraction(1))]
    assert matrix.apply(kernel[0]) == [0, 0]


def test_zero_entries_are_dropped():
    matrix = SparseMatrix(2, 2, {(0, 0): 0, (1, 1): Fraction(3, 4)})
    assert matrix.entries == {(1, 1): Fraction(3, 4)}


def test_entry_outside_shape_rejected():
    with pytest.raises(IndexError):
        SparseMatrix(2, 2, {(2, 0): 1})


def test_independent_subset_is_greedy():
    vectors = [{"a": 1}, {"a": 2}, {"b": 1}]
    assert independent_subset(vectors) == [0, 2]
    assert rank_of_vectors(vectors) == 2


def test_echelon_basis_membership():
    basis = EchelonBasis([{"a": 1, "b": 1}, {"a": 1}])
    assert basis.dim == 2
    assert basis.contains({"b": 3})
    assert not basis.contains({"c": 1})
    assert basis.reduce({"a": 2, "c": 1}) == {"c": Fraction(1)}


def test_quotient_space():
    quotient = QuotientSpace([{"a": 1}, {"b": 1}], [{"a": 1, "b": 1}])
    assert quotient.dim == 1
    assert quotient.coordinates({"a": 1, "b": 1}) == [0]
    assert quotient.coordinates({"c": 1}) is None


def test_triangular_basis_keeps_largest_key_as_pivot():
    basis = TriangularBasis([{1: 1, 3: 2}, {1: 1, 2: 1}, {1: 2, 3: 4}])
    assert basis.dim == 2
    assert set(basis.rows) == {3, 2}
    assert basis.rows[3] == {1: Fraction(1, 2), 3: Fraction(1)}
    assert basis.reduce({3: 2, 2: 1}) == {1: Fraction(-2)}
    assert not basis.insert({2: 2, 1: 2})
    assert basis.contains({3: 1, 2: -1, 1: Fraction(-1, 2)})


def test_quotient_space_over_triangular_basis():
    quotient = QuotientSpace([{"a": 1}, {"b": 1}, {"c": 1}], TriangularBasis([{"a": 1, "b": -1}]))
    assert quotient.dim == 2
    assert quotient.coordinates({"a": 1}) == quotient.coordinates({"b": 1})
