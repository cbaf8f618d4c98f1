from __future__ import annotations

import random

import pytest

import oracles
from sparsesep.errors import DomainError, RefusalError
from sparsesep.generators import clique, cycle, gnp, grid, path, petersen, star
from sparsesep.graph import Graph
from sparsesep.minors import build_model, identity_model, random_ball_packing
from sparsesep.orders import (
    LinearOrder,
    best_order,
    check_observation13,
    coloring_number,
    degeneracy_order,
    transfer_order,
)


def test_linear_order_must_be_a_bijection():
    with pytest.raises(DomainError):
        LinearOrder((0, 0, 1))
    assert LinearOrder.of([2, 0, 1]).position == (1, 2, 0)


def test_coloring_number_examples():
    for n in (3, 5):
        for r in (1, 3):
            assert coloring_number(clique(n), LinearOrder.of(reversed(range(n))), r) == n
    assert coloring_number(path(5), LinearOrder.natural(5), 2, "weak") == 3
    assert coloring_number(cycle(6), LinearOrder.natural(6), 2, "strong") == 3
    assert coloring_number(petersen(), LinearOrder.natural(10), 0, "weak") == 1


@pytest.mark.parametrize("seed", range(10))
def test_coloring_number_matches_path_enumeration(seed):
    rng = random.Random(seed)
    g = gnp(rng.randint(4, 8), 0.4, seed)
    seq = list(range(g.n))
    rng.shuffle(seq)
    for r in range(5):
        for kind in ("strong", "weak"):
            expected = oracles.coloring_number(g.n, sorted(g.edges), seq, r, kind)
            assert coloring_number(g, LinearOrder.of(seq), r, kind) == expected


def test_degeneracy_order_gives_degeneracy_plus_one():
    for g in (grid(2, 5), petersen(), gnp(20, 0.3, 1), star(7), clique(6)):
        order, k = degeneracy_order(g)
        assert k == oracles.degeneracy(g.n, g.edges)
        assert coloring_number(g, order, 1, "strong") == k + 1


def test_best_order_examples():
    for tree in (path(7), star(5), Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])):
        assert best_order(tree, 1, "strong", "exact")[1] == 2
    for kind in ("strong", "weak"):
        for r in (1, 2):
            assert best_order(clique(5), r, kind, "exact")[1] == 5
    assert best_order(cycle(6), 1, "strong", "exact")[1] == 3


@pytest.mark.parametrize("seed", range(6))
def test_exact_best_order_matches_permutations(seed):
    g = gnp(6 + seed % 2, 0.45, 300 + seed)
    for r in (1, 2, 3):
        for kind in ("strong", "weak"):
            order, value = best_order(g, r, kind, "exact")
            assert value == oracles.best_coloring_number(g.n, sorted(g.edges), r, kind)
            assert coloring_number(g, order, r, kind) == value


def test_heuristic_value_is_consistent_and_not_below_exact():
    g = gnp(9, 0.4, 4)
    for kind in ("strong", "weak"):
        order, value = best_order(g, 2, kind)
        assert coloring_number(g, order, 2, kind) == value
        assert value >= best_order(g, 2, kind, "exact")[1]


def test_best_order_refuses_large_exact():
    with pytest.raises(RefusalError):
        best_order(path(10), 1, "strong", "exact")
    with pytest.raises(DomainError):
        best_order(path(4), 1, "sideways")


def test_transfer_order_examples():
    g = cycle(6)
    m = build_model(g, 1, [[0, 1], [2, 3], [4, 5]], [0, 2, 4])
    t = transfer_order(g, m, LinearOrder.natural(6))
    assert t.order.sequence == (0, 1, 2) and t.backcounts == (0, 1, 2)

    h = gnp(8, 0.4, 2)
    seq = [3, 1, 7, 0, 2, 6, 5, 4]
    t = transfer_order(h, identity_model(h), LinearOrder.of(seq))
    pos = LinearOrder.of(seq).position
    assert t.order.sequence == tuple(seq)
    assert t.backcounts == tuple(sum(1 for w in h.adjacency[v] if pos[w] < pos[v]) for v in h.vertices())

    single = build_model(path(3), 1, [[0, 1, 2]], [1])
    assert transfer_order(path(3), single, LinearOrder.natural(3)).backcounts == (0,)


def test_observation13_examples():
    g = cycle(6)
    m = build_model(g, 1, [[0, 1], [2, 3], [4, 5]], [0, 2, 4])
    rep = check_observation13(g, m, LinearOrder.natural(6))
    assert (rep.c, rep.max_backcount, rep.density) == (3, 2, 2) and rep.holds

    rep = check_observation13(grid(2, 3), identity_model(grid(2, 3)), LinearOrder.natural(9))
    assert rep.radius == 1 and rep.holds

    p = petersen()
    spokes = build_model(p, 1, [[i, i + 5] for i in range(5)], list(range(5)))
    order, _ = best_order(p, 4, "strong")
    rep = check_observation13(p, spokes, order)
    assert rep.density == 4 and rep.c >= 3 and rep.holds


@pytest.mark.parametrize("seed", range(20))
def test_observation13_on_random_packings(seed):
    rng = random.Random(seed)
    g = gnp(rng.randint(6, 16), rng.choice([0.2, 0.35]), seed)
    m = random_ball_packing(g, rng.choice([1, 2]), seed)
    seq = list(range(g.n))
    rng.shuffle(seq)
    assert check_observation13(g, m, LinearOrder.of(seq)).holds


@pytest.mark.parametrize("seed", range(8))
def test_strong_below_weak_and_monotone_in_r(seed):
    rng = random.Random(seed)
    g = gnp(12, 0.3, seed)
    seq = list(range(12))
    rng.shuffle(seq)
    order = LinearOrder.of(seq)
    strong = [coloring_number(g, order, r, "strong") for r in range(6)]
    weak = [coloring_number(g, order, r, "weak") for r in range(6)]
    assert all(s <= w for s, w in zip(strong, weak))
    assert strong == sorted(strong) and weak == sorted(weak)
