"""精确线性代数"""

from fractions import Fraction

import pytest

from exact_linalg import (
    ExactField,
    Subspace,
    composes_to_zero,
    integer_rank,
    is_prime,
    mat_vec,
    nullspace,
    rank,
    rref,
    zero_matrix,
)

QQ = ExactField(0)
GF2 = ExactField(2)
GF3 = ExactField(3)


def test_field_validation():
    assert is_prime(7) and not is_prime(9) and not is_prime(1)
    with pytest.raises(ValueError):
        ExactField(4)
    assert QQ.name == "QQ" and GF3.name == "GF(3)"


def test_field_elements():
    assert GF3.element(Fraction(1, 2)) == 2
    assert GF3.inverse(2) == 2
    assert QQ.inverse(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        GF3.inverse(3)


def test_rank_depends_on_characteristic():
    m = [[1, 1], [1, -1]]
    assert rank(m, QQ) == 2
    assert rank(m, GF2) == 1
    assert integer_rank(m) == 2


def test_rank_with_fractions():
    m = [[Fraction(1, 2), 1], [1, 2]]
    assert rank(m, QQ) == 1


def test_rref_and_nullspace():
    m = [[1, 2, 3], [2, 4, 6]]
    rows, pivots = rref(m, QQ)
    assert pivots == [0]
    assert rows == [[1, 2, 3]]
    basis = nullspace(m, 3, QQ)
    assert len(basis) == 2
    for x in basis:
        assert all(c == 0 for c in mat_vec(m, x, QQ))


def test_nullspace_of_empty_matrix_is_everything():
    basis = nullspace(zero_matrix(0, 2), 2, QQ)
    assert basis == [[1, 0], [0, 1]]


def test_composes_to_zero():
    d1 = [[1, 1]]
    d2 = [[1], [-1]]
    assert composes_to_zero(d1, d2)
    assert not composes_to_zero(d1, [[1], [1]])
    assert composes_to_zero(zero_matrix(0, 3), zero_matrix(3, 2))


def test_subspace_express_tracks_tags():
    space = Subspace(3, QQ)
    assert space.add([1, 0, 1], tag="a")
    assert space.add([0, 1, 1], tag="b")
    assert not space.add([1, 1, 2], tag="c")
    assert space.dimension == 2
    assert space.express([2, 3, 5]) == {"a": 2, "b": 3}
    assert space.express([0, 0, 1]) is None
    assert space.contains([1, -1, 0])


def test_subspace_over_gf2():
    space = Subspace(2, GF2)
    space.add([1, 1])
    assert space.contains([3, 1])
    assert not space.contains([1, 0])
