"""截断级数与偏差剥离"""

import pytest

from series import (
    DeviationExtractionError,
    DeviationTable,
    ExponentVector,
    MultiSeries,
    TruncationMismatchError,
    UniSeries,
    binomial_factor,
    extract_deviations_multi,
    extract_deviations_uni,
    generalized_binomial,
    multi_mul,
    specialize,
    uni_add,
    uni_from_product,
    uni_inv,
    uni_mul,
    uni_neg_var,
)


# ==================== 基本运算 ====================
@pytest.mark.parametrize(
    "e, k, expected",
    [(3, 2, 3), (3, 5, 0), (-1, 4, 1), (-1, 3, -1), (-2, 2, 3), (-3, 2, 6), (5, -1, 0)],
)
def test_generalized_binomial(e, k, expected):
    assert generalized_binomial(e, k) == expected


def test_binomial_factor_sparse():
    f = binomial_factor(2, 3, -1, 6)
    assert list(f.coeffs) == [1, 0, -3, 0, 3, 0, -1]


def test_binomial_factor_negative_exponent_is_inverse():
    f = binomial_factor(1, -1, -1, 5)
    assert list(f.coeffs) == [1, 1, 1, 1, 1, 1]


def test_uni_series_pads_and_rejects_overflow():
    assert list(UniSeries([1, 2], 4).coeffs) == [1, 2, 0, 0, 0]
    with pytest.raises(ValueError):
        UniSeries([1, 2, 3], 1)


def test_uni_mul_requires_same_order():
    with pytest.raises(TruncationMismatchError):
        uni_mul(UniSeries([1], 2), UniSeries([1], 3))


def test_uni_inv_and_neg_var():
    one_minus_z = UniSeries([1, -1], 4)
    assert list(uni_inv(one_minus_z).coeffs) == [1, 1, 1, 1, 1]
    assert list(uni_neg_var(UniSeries([1, 2, 3, 4], 3)).coeffs) == [1, -2, 3, -4]
    assert uni_mul(one_minus_z, uni_inv(one_minus_z)) == UniSeries.one(4)


def test_uni_inv_random_series(rng):
    for _ in range(200):
        D = rng.randint(0, 12)
        coeffs = [rng.choice((1, -1))] + [rng.randint(-9, 9) for _ in range(D)]
        f = UniSeries(coeffs, D)
        assert uni_mul(f, uni_inv(f)) == UniSeries.one(D), f


def test_uni_add():
    assert list(uni_add(UniSeries([1, 1], 2), UniSeries([0, 1, 1], 2)).coeffs) == [1, 2, 1]


def test_uni_inv_rejects_non_unit():
    with pytest.raises(ValueError):
        uni_inv(UniSeries([2, 1], 3))


# ==================== 单变量剥离 ====================
def test_extract_recovers_product_exponents():
    P = uni_from_product({1: 3, 2: 2, 3: 1, 4: 1}, 4)
    table = extract_deviations_uni(P)
    assert table.graded_list() == [3, 2, 1, 1]


def test_extract_polynomial_ring():
    # k[x]: P = 1 + z
    table = extract_deviations_uni(UniSeries([1, 1, 0, 0], 3))
    assert table.graded_list() == [1, 0, 0]


def test_extract_rejects_negative():
    with pytest.raises(DeviationExtractionError, match="not a deviation sequence"):
        extract_deviations_uni(UniSeries([1, -1, 0], 2))


def test_extract_rejects_bad_constant_term():
    with pytest.raises(DeviationExtractionError):
        extract_deviations_uni(UniSeries([2, 1], 1))


def test_deviation_table_rejects_negative_entries():
    with pytest.raises(DeviationExtractionError):
        DeviationTable(graded={1: 2, 2: -1})


def test_deviation_table_frames():
    table = DeviationTable(graded={1: 3, 2: 2}, multigraded={(1, 0): 1, (0, 1): 1, (1, 1): 1})
    assert table.to_frame().to_dict(orient="records") == [{"s": 1, "epsilon": 3}, {"s": 2, "epsilon": 2}]
    assert table.norm_sums() == {1: 2, 2: 1}
    assert table.nonzero_multidegrees(norm=1) == [(0, 1), (1, 0)]


# ==================== 多重次数 ====================
def test_exponent_vector_basics():
    v = ExponentVector.indicator(4, [1, 2])
    assert list(v) == [1, 1, 0, 0]
    assert v.support == (1, 2)
    assert v.norm == 2
    assert list(v.rotated(1)) == [0, 1, 1, 0]
    assert list(v.append_zero()) == [1, 1, 0, 0, 0]
    assert ExponentVector.unit(3, 2) == (0, 1, 0)
    with pytest.raises(ValueError):
        ExponentVector([1, -1])


def test_multi_series_drops_terms_outside_truncation():
    s = MultiSeries({(2, 0): 1, (0, 1): 1, (1, 1): 1, (0, 0): 1}, cap=(1, 1), degree_bound=1)
    assert dict(s.items()) == {(0, 0): 1, (0, 1): 1}


def test_multi_mul_and_specialize():
    a = MultiSeries({(0, 0): 1, (1, 0): 1}, (2, 2), 3)
    b = MultiSeries({(0, 0): 1, (0, 1): 2}, (2, 2), 3)
    product = multi_mul(a, b)
    assert product.coefficient((1, 1)) == 2
    assert list(specialize(product).coeffs) == [1, 3, 2, 0]
    with pytest.raises(TruncationMismatchError):
        multi_mul(a, MultiSeries.one((2, 2), 2))


def test_extract_multi_exterior_like_quotient():
    # k[x]/(x^2): HS = 1 + ξ, ε_(1) = ε_(2) = 1
    hs = MultiSeries({(0,): 1, (1,): 1}, cap=(3,), degree_bound=3)
    table = extract_deviations_multi(hs)
    assert table.multigraded == {(1,): 1, (2,): 1}


def test_extract_multi_polynomial_ring():
    hs = MultiSeries({(k,): 1 for k in range(4)}, cap=(3,), degree_bound=3)
    assert extract_deviations_multi(hs).multigraded == {(1,): 1}


def test_extract_multi_rejects_non_koszul_series():
    hs = MultiSeries({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 2}, cap=(1, 1), degree_bound=2)
    with pytest.raises(DeviationExtractionError):
        extract_deviations_multi(hs)
