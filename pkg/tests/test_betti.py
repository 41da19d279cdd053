"""闭式 Betti 数与 Betti 表"""

import pytest

import koszul
from betti import (
    BettiTable,
    betti_cycle,
    betti_disjoint_union,
    betti_path,
    betti_table,
    block_decompose,
    graded_betti,
    restricted_ideal_betti,
    tensor_betti,
)
from ideals import GraphKindError, cycle_graph, disjoint_union, edge_ideal, general_graph, path_graph


# ==================== 块分解 ====================
def test_block_decompose_path():
    d = block_decompose((1, 1, 0, 1, 1, 1))
    assert d.tau == 2
    assert d.norms == (2, 3)
    assert d.iota == 1 + 2


def test_block_decompose_wraps_on_cycle():
    d = block_decompose((1, 1, 0, 0, 1), cyclic=True)
    assert d.tau == 1
    assert d.norms == (3,)
    assert block_decompose((1, 1, 0, 0, 1)).tau == 2


def test_block_decompose_rejects_non_squarefree():
    with pytest.raises(ValueError):
        block_decompose((2, 0, 1))


# ==================== 闭式 ====================
@pytest.mark.parametrize(
    "v, expected",
    [((1, 1, 0, 0), (1, 1)), ((1, 1, 1, 0), (2, 1)), ((1, 1, 1, 1), (2, 0)), ((1, 1, 0, 1), (1, 0))],
)
def test_betti_path(v, expected):
    assert betti_path(4, v) == expected


@pytest.mark.parametrize(
    "n, expected",
    [(3, (2, 2)), (4, (3, 1)), (5, (3, 1)), (6, (4, 2)), (7, (5, 1))],
)
def test_betti_cycle_full_support(n, expected):
    assert betti_cycle(n, (1,) * n) == expected


def test_betti_cycle_wrapped_block():
    # {5,1,2} 是一个范数 3 的循环区间
    assert betti_cycle(5, (1, 1, 0, 0, 1)) == (2, 1)


def test_length_mismatch():
    with pytest.raises(ValueError):
        betti_path(3, (1, 1))


# ==================== Betti 表 ====================
def test_betti_table_path3():
    table = betti_table(path_graph(3))
    assert table.graded == {(0, 0): 1, (1, 2): 2, (2, 3): 1}
    assert table.beta(2, (1, 1, 1)) == 1
    assert table.has_unique_degrees()
    assert table.is_squarefree_supported()


def test_betti_table_cycle5_graded():
    table = betti_table(cycle_graph(5))
    assert table.graded == {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_graded_betti_orbits_match_full_table(n):
    g = cycle_graph(n)
    assert graded_betti(g) == betti_table(g).graded


def test_betti_table_requires_path_or_cycle():
    with pytest.raises(GraphKindError):
        betti_table(general_graph(3, [(1, 2)]))


def test_macaulay_frame():
    frame = betti_table(path_graph(3)).to_frame()
    assert frame.loc[1, 2] == 2
    assert frame.loc[2, 3] == 1
    assert frame.loc[0, 0] == 1
    assert frame.loc[1, 3] == 0


def test_records_and_k_polynomial():
    table = betti_table(path_graph(3))
    assert {"i": 2, "v": [1, 1, 1], "beta": 1} in table.to_records()
    assert table.k_polynomial() == {0: 1, 2: -2, 3: 1}


def test_negative_entries_rejected():
    with pytest.raises(ValueError):
        BettiTable(2, {(1, (1, 1)): -1})


# ==================== 限制与不交并 ====================
def test_restriction_to_full_is_identity():
    g = cycle_graph(5)
    assert restricted_ideal_betti(g, (1,) * 5) == betti_table(g)


def test_restriction_of_cycle_matches_path():
    # C_4 限制到 (1,1,1,0) 只剩边 12, 23: 与 P_3 的表一致 (补一个零坐标)
    restricted = restricted_ideal_betti(cycle_graph(4), (1, 1, 1, 0))
    path3 = betti_table(path_graph(3))
    assert {(i, tuple(v[:3])): b for (i, v), b in restricted.entries.items()} == path3.entries


@pytest.mark.parametrize(
    "graph, a",
    [
        (path_graph(4), (1, 1, 1, 1)),
        (path_graph(5), (1, 1, 0, 1, 1)),
        (path_graph(5), (2, 1, 2, 1, 1)),
        (cycle_graph(4), (1, 1, 1, 0)),
        (cycle_graph(5), (1, 2, 1, 1, 2)),
        (cycle_graph(5), (0, 1, 1, 1, 1)),
    ],
)
def test_restriction_matches_koszul_of_restricted_ideal(graph, a):
    expected, _ = koszul.homology(edge_ideal(graph).restrict(a), cap=a)
    assert restricted_ideal_betti(graph, a) == expected


def test_restriction_general_graph_uses_koszul():
    g = general_graph(3, [(1, 2), (2, 3)])
    table = restricted_ideal_betti(g, (1, 1, 1))
    assert table.graded == {(0, 0): 1, (1, 2): 2, (2, 3): 1}


def test_tensor_betti():
    p2 = {(0, 0): 1, (1, 2): 1}
    assert tensor_betti([p2, p2]) == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def test_disjoint_union_betti():
    g = disjoint_union(path_graph(2), path_graph(3))
    expected = tensor_betti([betti_table(path_graph(2)), betti_table(path_graph(3))])
    assert betti_disjoint_union(g) == expected
    assert expected[(3, 5)] == 1
