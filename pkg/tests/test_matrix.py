import random
from fractions import Fraction

import pytest

from kchio import IndexSelection, IndexSelectionError, Matrix, extract_submatrix
from kchio.matrix import complement

from conftest import SYSTEM_14
from oracles import permutation_parity_to_front, random_int_matrix, submatrix


def test_extract_pivot_block_of_system14():
    A = Matrix(SYSTEM_14)
    assert extract_submatrix(A, (1, 2, 3), (1, 3, 5)).tolist() == [[1, 5, 9], [2, 0, 0], [3, 5, 0]]


def test_extract_full_selection_is_identity_map(example33):
    assert extract_submatrix(example33, (1, 2, 3, 4), (1, 2, 3, 4)) == example33


def test_extract_matches_direct_indexing():
    rng = random.Random(11)
    rows = random_int_matrix(rng, 5)
    got = extract_submatrix(Matrix(rows), (2, 4), (1, 5))
    assert got.tolist() == submatrix(rows, (2, 4), (1, 5))


@pytest.mark.parametrize("I,J", [((0, 1), (1, 2)), ((1, 5), (1, 2)), ((2, 1), (1, 2)), ((1, 1), (1, 2))])
def test_extract_rejects_bad_indices(example33, I, J):
    with pytest.raises(IndexSelectionError):
        extract_submatrix(example33, I, J)


def test_selection_complements():
    sel = IndexSelection((1, 2, 3), (1, 3, 5), 6)
    assert sel.k == 3
    assert sel.I_prime == (4, 5, 6)
    assert sel.J_prime == (2, 4, 6)
    assert complement((2, 5), 5) == (1, 3, 4)


@pytest.mark.parametrize("I,J,n", [((), (), 3), ((1, 2, 3), (1, 2, 3), 3), ((1,), (1, 2), 3), ((3, 1), (1, 2), 3)])
def test_selection_validation(I, J, n):
    with pytest.raises(IndexSelectionError):
        IndexSelection(I, J, n)


def test_selection_sign_matches_bubble_parity():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(2, 8)
        k = rng.randint(1, n - 1)
        I = tuple(sorted(rng.sample(range(1, n + 1), k)))
        J = tuple(sorted(rng.sample(range(1, n + 1), k)))
        parity = (permutation_parity_to_front(I, n) + permutation_parity_to_front(J, n)) % 2
        assert IndexSelection(I, J, n).sign == (-1) ** parity


def test_leading_selection_has_positive_sign():
    assert IndexSelection((1, 2), (1, 2), 5).sign == 1


def test_matrix_is_immutable_and_uniform():
    A = Matrix([[1, Fraction(1, 2)], [3, 4]])
    assert A[0, 1] == Fraction(1, 2)
    with pytest.raises(TypeError):
        A[0, 0] = 5
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])
    assert Matrix([[1, 2], [3, 4]], "float").data == (1.0, 2.0, 3.0, 4.0)
