"""Koszul 复形的 strand、同调与乘法"""

import itertools
import random

import pytest

import koszul
from betti import betti_table
from ideals import MonomialIdeal, cycle_graph, edge_ideal, path_graph
from koszul import KoszulComplex, ResourceBoundError, StrandBasisElement, merge_sign, strand


@pytest.fixture
def p3():
    return edge_ideal(path_graph(3))


def test_merge_sign():
    assert merge_sign((1, 3), (2,)) == -1
    assert merge_sign((1,), (2, 3)) == 1
    assert merge_sign((1, 2), (2,)) == 0


def test_strand_dimensions(p3):
    st = strand(p3, (1, 1, 1))
    assert {i: st.dim(i) for i in st.degrees} == {1: 1, 2: 3, 3: 1}
    assert st.basis[3] == [StrandBasisElement((0, 0, 0), (1, 2, 3))]
    assert st.check_square_zero()


def test_homology_matches_closed_form(p3):
    table, basis = koszul.homology(p3)
    assert table == betti_table(path_graph(3))
    assert basis.dimension(2, (1, 1, 1)) == 1


@pytest.mark.parametrize("graph", [path_graph(5), cycle_graph(5), cycle_graph(6)])
def test_homology_matches_closed_form_larger(graph):
    table, _ = koszul.homology(edge_ideal(graph), (1,) * graph.n)
    assert table == betti_table(graph)


def test_strand_bound(p3):
    with pytest.raises(ResourceBoundError):
        KoszulComplex(p3, max_strand_dim=2).strand((1, 1, 1))


def test_class_of_perturbed_representative(p3):
    engine = KoszulComplex(p3)
    cls = engine.basis_classes(2, (1, 1, 1))[0]
    chain = engine.boundary_perturb(cls, random.Random(3))
    assert engine.class_of(chain, 2, (1, 1, 1)) == cls


def test_class_of_rejects_non_cycle(p3):
    engine = KoszulComplex(p3)
    elem = engine.strand((1, 1, 1)).basis[3][0]
    with pytest.raises(ValueError):
        engine.class_of({elem: 1}, 3, (1, 1, 1))


def test_product_of_separated_edges_is_nonzero():
    engine = KoszulComplex(edge_ideal(path_graph(5)))
    a = engine.basis_classes(1, (1, 1, 0, 0, 0))[0]
    b = engine.basis_classes(1, (0, 0, 0, 1, 1))[0]
    product = engine.multiply(a, b)
    assert product.i == 2
    assert list(product.v) == [1, 1, 0, 1, 1]
    assert not product.is_zero()


def test_product_into_vanishing_degree_is_zero():
    engine = KoszulComplex(edge_ideal(path_graph(4)))
    a = engine.basis_classes(1, (1, 1, 0, 0))[0]
    b = engine.basis_classes(1, (0, 0, 1, 1))[0]
    assert engine.multiply(a, b).is_zero()


def test_square_zero_everywhere():
    engine = KoszulComplex(edge_ideal(cycle_graph(4)))
    assert koszul.square_zero_everywhere(engine)


def test_non_squarefree_ideal_homology():
    # k[x]/(x^2): H_0 = k, H_1 在次数 (2) 处
    table, _ = koszul.homology(MonomialIdeal([(2,)], 1))
    assert table.entries == {(0, (0,)): 1, (1, (2,)): 1}


@pytest.mark.parametrize("graph", [path_graph(4), path_graph(5), cycle_graph(5)])
def test_subalgebra_generated_in_low_degrees(graph):
    span = koszul.subalgebra_span(edge_ideal(graph), [(1, 2), (2, 3)], (1,) * graph.n)
    assert span.is_full()


def test_cycle4_has_an_extra_generator():
    ideal = edge_ideal(cycle_graph(4))
    span = koszul.subalgebra_span(ideal, [(1, 2), (2, 3)], (1, 1, 1, 1))
    assert span.graded_gaps() == {(3, 4): 1}
    assert koszul.minimal_generator_bidegrees(ideal, (1, 1, 1, 1)) == {(1, 2), (2, 3), (3, 4)}


@pytest.mark.parametrize("graph", [path_graph(4), cycle_graph(5), cycle_graph(6)])
def test_diagonals(graph):
    assert koszul.check_diagonals(edge_ideal(graph), (1,) * graph.n).passed


def test_diagonals_with_square_generators():
    ideal = MonomialIdeal([(2, 0, 0), (1, 1, 0), (0, 1, 1)], 3)
    assert koszul.check_diagonals(ideal).passed


def test_compare_characteristics(p3):
    report = koszul.compare_characteristics(p3, 2)
    assert report.kind == "characteristic"
    assert report.passed


@pytest.mark.slow
def test_cycle7_generator_bidegrees():
    ideal = edge_ideal(cycle_graph(7))
    assert koszul.minimal_generator_bidegrees(ideal, (1,) * 7) == {(1, 2), (2, 3), (5, 7)}


# ==================== 同调代数 ====================
def _disjoint_class_pairs(engine, n):
    table, _ = engine.homology((1,) * n)
    keys = [k for k in table.entries if k[0] > 0]
    for (i, v), (j, w) in itertools.combinations(keys, 2):
        if all(a + b <= 1 for a, b in zip(v, w)):
            for a in engine.basis_classes(i, v):
                for b in engine.basis_classes(j, w):
                    yield a, b


@pytest.mark.parametrize("graph", [path_graph(5), cycle_graph(6)])
def test_graded_commutativity(graph):
    engine = KoszulComplex(edge_ideal(graph))
    checked = 0
    for a, b in _disjoint_class_pairs(engine, graph.n):
        ab, ba = engine.multiply(a, b), engine.multiply(b, a)
        sign = (-1) ** (a.i * b.i)
        assert ab.coords == tuple(sign * c for c in ba.coords)
        checked += 1
    assert checked > 0


@pytest.mark.parametrize("graph", [path_graph(5), cycle_graph(5)])
def test_odd_squares_vanish(graph):
    engine = KoszulComplex(edge_ideal(graph))
    table, _ = engine.homology((1,) * graph.n)
    for i, v in table.entries:
        if i % 2:
            for a in engine.basis_classes(i, v):
                assert engine.multiply(a, a).is_zero()


@pytest.mark.parametrize("graph", [path_graph(5), cycle_graph(6)])
def test_product_ignores_boundary_perturbation(graph):
    engine = KoszulComplex(edge_ideal(graph))
    rng = random.Random(11)
    for a, b in _disjoint_class_pairs(engine, graph.n):
        left = engine.boundary_perturb(a, rng)
        right = engine.boundary_perturb(b, rng)
        chain = engine.multiply_chains(left, right)
        assert engine.class_of(chain, a.i + b.i, a.v.plus(b.v)) == engine.multiply(a, b)


def test_cap_length_must_match():
    with pytest.raises(ValueError):
        koszul.homology(edge_ideal(path_graph(4)), (1, 1))
