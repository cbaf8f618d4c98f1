from __future__ import annotations

from fractions import Fraction

import networkx as nx
import pytest

import oracles
from sparsesep.errors import DomainError, RefusalError
from sparsesep.generators import clique, cycle, gnp, grid, path, petersen, star
from sparsesep.graph import Graph
from sparsesep.minors import (
    MinorModel,
    build_model,
    contract,
    densest_shallow_minor,
    expansion_profile,
    host_subgraph,
    identity_model,
    random_ball_packing,
    validate_model,
)


def c6_triangle(r=1):
    return build_model(cycle(6), r, [[0, 1], [2, 3], [4, 5]], [0, 2, 4])


def petersen_spokes():
    return build_model(petersen(), 1, [[i, i + 5] for i in range(5)], list(range(5)))


def test_validate_model_examples():
    m = c6_triangle()
    assert validate_model(cycle(6), m).valid
    assert set(m.witnesses.values()) == {(1, 2), (3, 4), (0, 5)}
    v = validate_model(cycle(6), c6_triangle(r=0))
    assert not v.valid and "radius exceeded" in v.reason
    overlapping = build_model(cycle(6), 1, [[0, 1], [1, 2]], [0, 1])
    assert "disjointness" in validate_model(cycle(6), overlapping).reason


def test_validate_model_rejects_bad_witnesses_and_shapes():
    m = c6_triangle()
    forged = MinorModel(1, m.branch_sets, m.centers, m.minor_edges, {**m.witnesses, (0, 1): (0, 3)})
    assert not validate_model(cycle(6), forged).valid
    missing = MinorModel(1, m.branch_sets, m.centers, m.minor_edges, {})
    assert "no witness" in validate_model(cycle(6), missing).reason
    split = build_model(path(4), 3, [[0, 3]], [0])
    assert "not connected" in validate_model(path(4), split).reason
    off_center = MinorModel(1, (frozenset({0, 1}),), (3,), frozenset(), {})
    assert "center" in validate_model(path(4), off_center).reason
    non_edge = build_model(path(4), 0, [[0], [3]], [0, 3], minor_edges=[(0, 1)])
    assert not validate_model(path(4), non_edge).valid


def test_contract_examples():
    assert contract(cycle(6), c6_triangle()) == clique(3)
    assert contract(petersen(), petersen_spokes()) == clique(5)
    with pytest.raises(DomainError):
        contract(cycle(6), c6_triangle(r=0))


@pytest.mark.parametrize("g", [cycle(6), petersen(), grid(2, 3), gnp(9, 0.4, 1)], ids=repr)
def test_identity_model_contracts_to_an_isomorphic_copy(g):
    m = identity_model(g)
    assert validate_model(g, m).valid
    minor = contract(g, m)
    assert minor.n == g.n and minor.degree_sequence() == g.degree_sequence()
    assert nx.is_isomorphic(oracles.to_nx(g.n, g.edges), oracles.to_nx(minor.n, minor.edges))


def test_host_subgraph_of_c6_triangle_is_c6():
    h = host_subgraph(cycle(6), c6_triangle(), trim=True)
    assert h.graph.n == 6 and h.graph.m == 6
    assert validate_model(h.graph, h.model).valid
    assert contract(h.graph, h.model) == clique(3)


@pytest.mark.parametrize("seed", range(10))
def test_trimmed_host_subgraph_respects_degree_bound(seed):
    g = gnp(18, 0.2, seed)
    m = random_ball_packing(g, 2, seed)
    h = host_subgraph(g, m, trim=True)
    assert validate_model(h.graph, h.model).valid
    minor = contract(h.graph, h.model)
    for u, s in enumerate(h.model.branch_sets):
        assert len(s) <= minor.degree(u) * m.r + 1
    # every local edge is a host edge
    for a, b in h.graph.edges:
        assert g.has_edge(h.graph.origin[a], h.graph.origin[b])


def test_densest_minor_examples():
    for tree in (path(7), star(6)):
        for r in range(3):
            assert densest_shallow_minor(tree, r, "exact")[1] < 2
    for r in range(3):
        assert densest_shallow_minor(cycle(6), r, "exact")[1] == 2
    model, density = densest_shallow_minor(petersen(), 1, "greedy")
    assert density >= 3 and validate_model(petersen(), model).valid
    with pytest.raises(RefusalError):
        densest_shallow_minor(petersen(), 1, "exact")


def test_densest_minor_finds_k4_in_subdivided_k4():
    # K4 with every edge subdivided once: depth-1 minor K4 has density 3
    edges = []
    nxt = 4
    for u in range(4):
        for v in range(u + 1, 4):
            edges += [(u, nxt), (nxt, v)]
            nxt += 1
    g = Graph.from_edges(nxt, edges)
    assert densest_shallow_minor(g, 0, "exact", cap=10)[1] == oracles.max_subgraph_density(g.n, sorted(g.edges))
    model, density = densest_shallow_minor(g, 1, "exact", cap=10)
    assert density == 3 and contract(g, model) == clique(4)


@pytest.mark.parametrize("seed", range(8))
def test_exact_depth0_density_is_max_subgraph_density(seed):
    g = gnp(7, 0.4, seed)
    assert densest_shallow_minor(g, 0, "exact")[1] == oracles.max_subgraph_density(g.n, sorted(g.edges))


@pytest.mark.parametrize("seed", range(8))
def test_greedy_never_beats_exact(seed):
    g = gnp(8, 0.35, 50 + seed)
    for r in range(3):
        exact_model, exact = densest_shallow_minor(g, r, "exact")
        greedy_model, greedy = densest_shallow_minor(g, r, "greedy")
        assert greedy <= exact
        assert validate_model(g, exact_model).valid and validate_model(g, greedy_model).valid
        assert Fraction(2 * len(exact_model.minor_edges), exact_model.k) == exact


def test_expansion_profile_examples():
    assert [e.density for e in expansion_profile(cycle(6), 2, "exact")] == [2, 2, 2]
    for e in expansion_profile(path(9), 3):
        assert e.density < 2
    profile = expansion_profile(grid(2, 4), 2)
    assert profile[0].density >= 3
    assert all(a.density <= b.density for a, b in zip(profile, profile[1:]))


@pytest.mark.parametrize("seed", range(5))
def test_profile_monotone_and_bounded(seed):
    g = gnp(14, 0.3, seed)
    profile = expansion_profile(g, 3)
    for a, b in zip(profile, profile[1:]):
        assert a.density <= b.density
    for e in profile:
        assert e.density <= g.n - 1
        assert e.model.r == e.r and validate_model(g, e.model).valid


def test_random_ball_packing_is_valid_and_seeded():
    g = gnp(20, 0.2, 3)
    a = random_ball_packing(g, 2, 9)
    assert validate_model(g, a).valid
    assert a == random_ball_packing(g, 2, 9)


def test_negative_depth_rejected():
    with pytest.raises(DomainError):
        densest_shallow_minor(path(3), -1)
    assert not validate_model(path(2), MinorModel(-1, (), (), frozenset(), {})).valid
