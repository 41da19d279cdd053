"""偏差数、γ/α 序列与相关检查"""

import pytest

from deviations import (
    check_cycle_dominance,
    check_graded_consistency,
    check_higher_patterns,
    check_linearity,
    check_orbit_structure,
    check_squarefree_deviations,
    check_stability,
    check_support_property,
    deviations_graded,
    deviations_multigraded,
    gamma_alpha,
    is_cyclic_interval,
    is_interval,
    ratio_report,
)
from ideals import cycle_graph, general_graph, path_graph, GraphKindError
from series import DeviationTable


@pytest.fixture(scope="module")
def pairs():
    return gamma_alpha(13)


# ==================== 分次偏差 ====================
def test_path3_graded():
    assert deviations_graded(path_graph(3), 5).graded_list() == [3, 2, 1, 1, 2]


def test_cycle3_graded():
    assert deviations_graded(cycle_graph(3), 5).graded_list() == [3, 3, 2, 3, 6]


def test_smax_must_be_positive():
    with pytest.raises(ValueError):
        deviations_graded(path_graph(3), 0)


# ==================== γ / α ====================
@pytest.mark.parametrize(
    "s, gamma, alpha",
    [(1, 1, 0), (2, 1, 1), (3, 1, 2), (4, 2, 5), (7, 28, 100), (10, 450, 2064), (13, 8190, 44940)],
)
def test_gamma_alpha_values(pairs, s, gamma, alpha):
    assert (pairs.gamma[s], pairs.alpha[s]) == (gamma, alpha)


def test_gamma_alpha_frame(pairs):
    frame = pairs.to_frame()
    assert list(frame.columns) == ["s", "gamma", "alpha"]
    assert len(frame) == 13


def test_linearity_sweep(pairs):
    report = check_linearity(3, 8, pairs)
    assert report.passed, report.witness


def test_cycle_dominance(pairs):
    assert check_cycle_dominance(pairs, nmax=8).passed


def test_ratio_report_is_observation(pairs):
    report = ratio_report(pairs)
    assert report.status == "reported"
    assert report.details[3]["gamma_ratio"] == 2.0


# ==================== 多重分次 ====================
def test_multigraded_path3():
    table = deviations_multigraded(path_graph(3))
    assert table.epsilon_v((1, 1, 0)) == 1
    assert table.epsilon_v((1, 1, 1)) == 1
    assert table.epsilon_v((1, 0, 1)) == 0
    assert table.norm_sums() == {1: 3, 2: 2, 3: 1}


def test_full_support_of_cycle():
    table = deviations_multigraded(cycle_graph(5))
    assert table.epsilon_v((1, 1, 1, 1, 1)) == 4


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_squarefree_deviations(n):
    assert check_squarefree_deviations(n).passed


@pytest.mark.parametrize("graph", [path_graph(4), cycle_graph(5)])
def test_support_property(graph):
    table = deviations_multigraded(graph, (2,) * graph.n, 5)
    assert check_support_property(graph, table).passed


def test_support_property_negative_control():
    fabricated = DeviationTable(multigraded={(1, 0, 1): 1})
    report = check_support_property(path_graph(3), fabricated)
    assert not report.passed
    assert report.witness == [1, 0, 1]


def test_support_property_needs_path_or_cycle():
    with pytest.raises(GraphKindError):
        check_support_property(general_graph(3, [(1, 2)]), DeviationTable())


def test_intervals():
    assert is_interval((2, 3, 4)) and not is_interval((1, 3))
    assert is_cyclic_interval((1, 5), 5)
    assert is_cyclic_interval((1, 2, 3, 4, 5), 5)
    assert not is_cyclic_interval((1, 3), 5)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_stability(n):
    assert check_stability(n, degree_bound=n).passed


@pytest.mark.parametrize("n", [4, 5, 6])
def test_orbit_structure(n):
    assert check_orbit_structure(n).passed


@pytest.mark.parametrize("graph", [path_graph(4), cycle_graph(4)])
def test_graded_consistency(graph):
    assert check_graded_consistency(graph, 5).passed


# ==================== 经验规律 ====================
@pytest.fixture(scope="module")
def patterns():
    return {r.name.split(",")[0]: r for r in check_higher_patterns(nmax=6)}


@pytest.mark.conjecture
def test_higher_patterns(patterns):
    assert len(patterns) == 7
    for label, report in patterns.items():
        if label == "path eps_{n+5}":
            continue
        assert report.kind == "conjecture"
        assert report.passed, (label, report.witness)


@pytest.mark.conjecture
def test_path_eps_n_plus_5_discrepancy(patterns):
    report = patterns["path eps_{n+5}"]
    assert report.kind == "observation"
    assert report.status == "reported"
    assert report.passed
    got = [(r["n"], r["epsilon"], r["predicted"]) for r in report.details]
    assert got == [(3, 5, -25), (4, 56, 14), (5, 333, 277), (6, 1476, 1404)]
