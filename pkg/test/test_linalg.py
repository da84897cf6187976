import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form

from motivic_verifier.algebra import AbelianGroupStructure
from motivic_verifier.linalg import (
    IntegerMatrix,
    back_substitute,
    cokernel_structure,
    f2_rank,
    f2_row_reduce,
    f2_same_span,
    integer_row_echelon,
    smith_diagonal,
    smith_normal_form,
)


@st.composite
def integer_matrices(draw, max_side: int = 4, bound: int = 6) -> IntegerMatrix:
    rows = draw(st.integers(min_value=1, max_value=max_side))
    cols = draw(st.integers(min_value=1, max_value=max_side))
    entries = draw(
        st.lists(
            st.lists(st.integers(min_value=-bound, max_value=bound), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return IntegerMatrix.from_rows(entries, cols)


def test_smith_normal_form_small_cases():
    assert smith_diagonal(IntegerMatrix.from_rows([[2, 0], [0, 3]])) == (1, 6)
    assert smith_diagonal(IntegerMatrix.from_rows([[2]])) == (2,)
    assert smith_diagonal(IntegerMatrix.from_rows([[2, 4], [4, 8]])) == (2, 0)
    assert smith_diagonal(IntegerMatrix.from_rows([[-3]])) == (3,)


def test_smith_normal_form_empty_matrix():
    form = smith_normal_form(IntegerMatrix.zeros(0, 3))
    assert form.diagonal == ()
    assert form.right == IntegerMatrix.identity(3)


def test_matrix_shape_is_validated():
    with pytest.raises(ValueError):
        IntegerMatrix(2, 2, ((1, 2),))
    with pytest.raises(ValueError):
        IntegerMatrix.from_rows([[1, 2]]) @ IntegerMatrix.from_rows([[1, 2]])


@settings(max_examples=60, deadline=None)
@given(integer_matrices())
def test_smith_normal_form_reconstructs(m: IntegerMatrix):
    form = smith_normal_form(m)
    assert form.left @ m @ form.right == form.diagonal_matrix()
    assert abs(Matrix(form.left.to_lists()).det()) == 1
    assert abs(Matrix(form.right.to_lists()).det()) == 1


@settings(max_examples=60, deadline=None)
@given(integer_matrices())
def test_smith_diagonal_is_a_divisibility_chain(m: IntegerMatrix):
    diagonal = smith_diagonal(m)
    nonzero = [d for d in diagonal if d]
    assert all(d > 0 for d in nonzero)
    assert list(diagonal[: len(nonzero)]) == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=60, deadline=None)
@given(integer_matrices())
def test_smith_diagonal_agrees_with_sympy(m: IntegerMatrix):
    oracle = sympy_smith_normal_form(Matrix(m.to_lists()), domain=ZZ)
    expected = sorted(abs(int(oracle[i, i])) for i in range(min(m.rows, m.cols)) if oracle[i, i])
    assert sorted(d for d in smith_diagonal(m) if d) == expected


@settings(max_examples=30, deadline=None)
@given(integer_matrices())
def test_smith_form_is_idempotent(m: IntegerMatrix):
    once = smith_normal_form(m).diagonal_matrix()
    assert smith_normal_form(once).diagonal_matrix() == once


def test_cokernel_structure():
    relations = IntegerMatrix.from_rows([[2, 0, 0], [0, 1, -4]])
    assert cokernel_structure(relations, 3) == AbelianGroupStructure(rank=1, torsion=(2,))
    assert cokernel_structure(IntegerMatrix.zeros(0, 2), 2) == AbelianGroupStructure(rank=2)
    with pytest.raises(ValueError):
        cokernel_structure(relations, 4)


def test_integer_row_echelon_pivots_in_given_order():
    rows = [{0: 1, 1: -4}, {1: 2}]
    echelon = integer_row_echelon(rows, [1, 0])
    assert [r.pivot for r in echelon] == [1, 0]
    assert all(r.entries[r.pivot] > 0 for r in echelon)
    for r in echelon[1:]:
        assert 1 not in r.entries


def test_back_substitute_clears_unit_pivots():
    echelon = integer_row_echelon([{0: 1, 1: 1, 2: 1}, {1: 1, 2: 3}], [0, 1, 2])
    cleared = back_substitute(echelon)
    assert cleared[0].entries == {0: 1, 2: -2}
    assert cleared[1].entries == {1: 1, 2: 3}


def test_f2_row_reduce_rank_and_kernel():
    matrix = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    reduced = f2_row_reduce(matrix)
    assert reduced.rank == 2
    assert reduced.kernel.shape == (1, 3)
    assert not ((matrix.astype(int) @ reduced.kernel[0].astype(int)) % 2).any()


def test_f2_helpers_accept_empty_matrices():
    assert f2_rank(np.zeros((0, 3), dtype=np.uint8), 3) == 0
    assert f2_row_reduce([], 2).kernel.shape == (2, 2)


def test_f2_same_span():
    a = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    b = np.array([[1, 0, 1], [1, 1, 0]], dtype=np.uint8)
    c = np.array([[1, 0, 0]], dtype=np.uint8)
    assert f2_same_span(a, b)
    assert not f2_same_span(a, c)
