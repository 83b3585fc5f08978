import pytest
from hypothesis import given, strategies as st

from gforge import OrderMatrix, elim_mat, make_deglex, make_lex, make_std_deg_rev_lex
from gforge.errors import DimensionMismatch, InvalidIndex, InvalidMatrix
from gforge.order import format_matrix, graded_elim_mat, is_term_ordering, make_weighted_rev_lex

pps3 = st.tuples(*[st.integers(0, 6)] * 3)

ORDERS = [make_lex(3), make_deglex(3), make_std_deg_rev_lex(3), elim_mat([1], 3), elim_mat([2, 3], 3)]


def test_named_orders_on_three_variables():
    x, y, z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert make_lex(3).compare(x, (0, 5, 5)) == 1
    assert make_deglex(3).compare((0, 2, 0), (1, 0, 1)) == -1
    # degrevlex: x*z < y^2
    assert make_std_deg_rev_lex(3).compare((1, 0, 1), (0, 2, 0)) == -1
    assert make_std_deg_rev_lex(3).compare(x, y) == 1
    assert make_std_deg_rev_lex(3).compare(y, z) == 1


def test_std_deg_rev_lex_matrix():
    assert make_std_deg_rev_lex(4).rows == ((1, 1, 1, 1), (0, 0, 0, -1), (0, 0, -1, 0), (0, -1, 0, 0))


def test_elim_mat_of_first_of_four():
    M = elim_mat([1], 4)
    assert M.rows == ((1, 0, 0, 0), (1, 1, 1, 1), (0, 0, 0, -1), (0, 0, -1, 0))
    assert str(M) == "matrix(ZZ,\n [[1, 0, 0, 0],\n  [1, 1, 1, 1],\n  [0, 0, 0, -1],\n  [0, 0, -1, 0]])"


def test_invalid_matrices():
    assert not is_term_ordering([[1, 0], [1, 0]])
    assert not is_term_ordering([[-1, 0], [0, 1]])
    assert not is_term_ordering([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(InvalidMatrix):
        OrderMatrix([[0, 1], [0, 1]])
    with pytest.raises(InvalidIndex):
        elim_mat([5], 4)
    with pytest.raises(InvalidIndex):
        elim_mat([], 4)
    with pytest.raises(DimensionMismatch):
        make_lex(2).compare((1, 0), (1, 0, 0))


def test_format_matrix():
    assert format_matrix([[1, 2], [3, 4]]) == "matrix(ZZ,\n [[1, 2],\n  [3, 4]])"


def test_graded_elim_is_degree_compatible():
    M = graded_elim_mat([1, 2, 3], [0])
    assert M.is_degree_compatible([1, 2, 3])
    assert M.rows[1] == (1, 0, 0)


def test_weighted_rev_lex_last_is_smallest():
    M = make_weighted_rev_lex([1, 1, 1], last=0)
    # among equal weights the chosen variable loses ties
    assert M.compare((1, 0, 0), (0, 1, 0)) == -1


@pytest.mark.parametrize("M", ORDERS, ids=lambda M: repr(M.rows))
@given(a=pps3, b=pps3, c=pps3)
def test_orderings_are_total_and_multiplicative(M, a, b, c):
    ab = M.compare(a, b)
    assert ab == -M.compare(b, a)
    assert (ab == 0) == (a == b)
    shifted = M.compare(tuple(map(sum, zip(a, c))), tuple(map(sum, zip(b, c))))
    assert shifted == ab
    assert M.compare(a, (0, 0, 0)) >= 0


@pytest.mark.parametrize("elim", [[1], [1, 2], [3]])
@given(a=pps3, b=pps3)
def test_elim_mat_eliminates(elim, a, b):
    M = elim_mat(elim, 3)
    touches = lambda pp: any(pp[i - 1] for i in elim)
    if touches(a) and not touches(b):
        assert M.compare(a, b) == 1


@given(a=pps3, b=pps3)
def test_key_agrees_with_compare(a, b):
    for M in ORDERS:
        ka, kb = M.key(a), M.key(b)
        assert M.compare(a, b) == (ka > kb) - (ka < kb)
