from __future__ import annotations

from fractions import Fraction

import pytest

import oracles
from sparsesep.errors import CertificationError, DomainError, RefusalError
from sparsesep.generators import clique, cycle, gnp, grid, path, petersen, star
from sparsesep.graph import Graph
from sparsesep.separators import Separator, validate_separator
from sparsesep.treewidth import (
    TreeDecomposition,
    ceil_log,
    check_theorem6,
    decomposition_from_order,
    decomposition_from_separators,
    degree3_sparsifier_oracle,
    min_fill_order,
    separator_from_decomposition,
    treewidth_exact,
    treewidth_upper_bound,
    validate_decomposition,
)


def td(bags, parent):
    return TreeDecomposition(tuple(frozenset(b) for b in bags), tuple(parent))


def test_validate_decomposition_examples():
    assert validate_decomposition(path(3), td([{0, 1}, {1, 2}], [-1, 0])).width == 1
    v = validate_decomposition(cycle(4), td([{0, 1, 2}, {0, 2, 3}], [-1, 0]))
    assert v.valid and v.width == 2
    v = validate_decomposition(path(3), td([{0, 1}, {2}], [-1, 0]))
    assert not v.valid and "1-2" in v.reason


def test_validate_decomposition_catches_each_axiom():
    assert "vertex 2" in validate_decomposition(path(3), td([{0, 1}], [-1])).reason
    # vertex 0 appears in two bags that are not adjacent
    bad = td([{0, 1}, {1, 2}, {0, 2}], [-1, 0, 1])
    assert not validate_decomposition(cycle(3), bad).valid
    assert not validate_decomposition(path(2), td([{0, 1}, {0, 1}], [1, 0])).valid


@pytest.mark.parametrize(
    "g,expected",
    [(path(6), 1), (star(5), 1), (clique(5), 4), (grid(2, 3), 3), (cycle(5), 2), (petersen(), 4)],
    ids=["P6", "star", "K5", "grid3x3", "C5", "petersen"],
)
def test_treewidth_examples(g, expected):
    w, decomposition = treewidth_exact(g)
    assert w == expected
    verdict = validate_decomposition(g, decomposition)
    assert verdict.valid and verdict.width == w


@pytest.mark.parametrize("seed", range(15))
def test_treewidth_matches_oracle(seed):
    g = gnp(6 + seed % 5, 0.45, seed)
    w, decomposition = treewidth_exact(g)
    assert w == oracles.treewidth(g.n, sorted(g.edges))
    assert oracles.td_is_valid(g.n, g.edges, decomposition.bags, decomposition.tree_edges())


@pytest.mark.parametrize("seed", range(10))
def test_dp_and_branch_and_bound_agree(seed):
    g = gnp(8 + seed % 7, 0.2 + 0.05 * (seed % 5), 1000 + seed)
    assert treewidth_exact(g, method="dp")[0] == treewidth_exact(g, method="bb")[0]


def test_branch_and_bound_beyond_dp_range():
    g = gnp(21, 0.15, 3)
    w, decomposition = treewidth_exact(g)
    assert validate_decomposition(g, decomposition).width == w
    assert w <= min_fill_order(g)[0]


def test_refusals():
    with pytest.raises(RefusalError):
        treewidth_exact(path(25))
    with pytest.raises(DomainError):
        treewidth_exact(Graph.from_edges(0, []))
    assert treewidth_upper_bound(path(30)) == (1, False)


def test_decomposition_from_order_is_valid():
    g = gnp(10, 0.4, 2)
    width, order = min_fill_order(g)
    decomposition = decomposition_from_order(g, order)
    assert validate_decomposition(g, decomposition).width == width


def test_separator_from_decomposition_examples():
    g = path(5)
    decomposition = td([{i, i + 1} for i in range(4)], [-1, 0, 1, 2])
    sep = separator_from_decomposition(g, decomposition)
    assert validate_separator(g, sep).balanced and sep.order <= 2

    _, decomposition = treewidth_exact(cycle(6))
    sep = separator_from_decomposition(cycle(6), decomposition)
    assert validate_separator(cycle(6), sep).balanced and sep.order <= 3

    sep = separator_from_decomposition(clique(5), td([range(5)], [-1]))
    assert validate_separator(clique(5), sep).balanced and sep.order == 5


def test_separator_from_decomposition_rejects_invalid_input():
    with pytest.raises(DomainError):
        separator_from_decomposition(path(3), td([{0, 1}, {2}], [-1, 0]))


def test_ceil_log():
    assert ceil_log(1, Fraction(3, 2)) == 0
    assert ceil_log(2, Fraction(3, 2)) == 2  # 1.5 < 2 <= 2.25
    assert ceil_log(8, Fraction(2)) == 3
    assert ceil_log(9, Fraction(2)) == 4


def test_recursive_decomposition_examples():
    rec = decomposition_from_separators(path(8))
    assert rec.k_max == 1
    assert rec.td.width <= 1 + 1 * 3  # 1 + k log2 8
    assert rec.td.width <= rec.width_bound()

    rec = decomposition_from_separators(star(9))
    assert rec.td.width <= 1 + 4  # 1 + ceil(log2 10)

    rec = decomposition_from_separators(Graph.from_edges(1, []))
    assert rec.td.bags == (frozenset({0}),) and rec.td.width == 0


def test_recursive_decomposition_propagates_bad_provider():
    with pytest.raises(CertificationError):
        decomposition_from_separators(path(6), lambda sub: Separator.of([0], range(sub.n)))
    with pytest.raises(CertificationError):
        decomposition_from_separators(path(6), lambda sub: Separator.of([0, 1], [2, 3]))


@pytest.mark.parametrize(
    "g,k,tw",
    [(cycle(6), 2, 2), (clique(5), 2, 4), (grid(2, 3), 2, 3)],
    ids=["C6", "K5", "grid3x3"],
)
def test_treewidth_vs_separator_bound_examples(g, k, tw):
    report = check_theorem6(g)
    assert (report.k, report.tw, report.ratio) == (k, tw, Fraction(tw, k))
    assert report.holds


def test_sparsifier_examples():
    h, tw = degree3_sparsifier_oracle(clique(4))
    assert h == clique(4) and tw == 3
    h, tw = degree3_sparsifier_oracle(path(7))
    assert tw == 1 and h.max_degree <= 3


def test_sparsifier_matches_exhaustive_oracle_on_k5():
    h, tw = degree3_sparsifier_oracle(clique(5))
    assert h.max_degree <= 3 and h.edges <= clique(5).edges
    assert treewidth_exact(h)[0] == tw
    assert tw == oracles.max_tw_subcubic_subgraph(5, sorted(clique(5).edges))
    assert tw <= 4


@pytest.mark.parametrize("seed", range(4))
def test_sparsifier_matches_exhaustive_oracle_on_sparse_graphs(seed):
    g = gnp(7, 0.45, 40 + seed)
    h, tw = degree3_sparsifier_oracle(g)
    assert h.max_degree <= 3 and h.edges <= g.edges
    assert tw == oracles.max_tw_subcubic_subgraph(g.n, sorted(g.edges)) <= treewidth_exact(g)[0]


def test_sparsifier_refuses_large_graphs():
    with pytest.raises(RefusalError):
        degree3_sparsifier_oracle(path(11))
