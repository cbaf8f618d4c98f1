"""Acceptance criteria 1-9.

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL
line per criterion at the end of the run, with the detail recorded here.
"""

from __future__ import annotations

import random
import time
from functools import lru_cache

import pytest

import oracles
from sparsesep.cli import main
from sparsesep.errors import InvariantError
from sparsesep.expanders import DENSITY_FACTOR, expander_subgraph, tau
from sparsesep.experiments import grid_experiment, random_corpus
from sparsesep.generators import clique, cycle, gnp, grid, petersen
from sparsesep.graph import Graph, average_degree
from sparsesep.minors import densest_shallow_minor, random_ball_packing
from sparsesep.orders import LinearOrder, best_order, check_observation13, coloring_number, degeneracy_order
from sparsesep.separators import validate_separator
from sparsesep.treewidth import (
    check_theorem6,
    decomposition_from_separators,
    separator_from_decomposition,
    treewidth_exact,
    validate_decomposition,
)

CORPUS_SEED = 20240601


@lru_cache(maxsize=None)
def corpus() -> tuple[tuple[str, Graph], ...]:
    return tuple(random_corpus(50, (4, 16), (0.2, 0.4, 0.6), CORPUS_SEED))


@lru_cache(maxsize=None)
def atlas(max_n: int) -> tuple[Graph, ...]:
    return tuple(Graph.from_edges(n, edges) for n, edges in oracles.connected_atlas(max_n))


@pytest.mark.criterion(1, "separator from decomposition roundtrip on 50 random graphs")
def test_criterion1_decomposition_roundtrip(record):
    start = time.perf_counter()
    failures = []
    for label, g in corpus():
        tw, td = treewidth_exact(g)
        sep = separator_from_decomposition(g, td)
        verdict = validate_separator(g, sep)
        if not (verdict.status == "valid_balanced" and sep.order <= tw + 1):
            failures.append(label)
    elapsed = time.perf_counter() - start
    record(f"{50 - len(failures)}/50 balanced with order <= tw+1, {elapsed:.1f}s")
    assert not failures, failures
    assert elapsed < 60


@pytest.mark.criterion(2, "recursive decomposition width <= 1 + k_max*ceil(log_{3/2} n)")
def test_criterion2_recursive_decomposition(record):
    failures = []
    slack = []
    for label, g in corpus():
        rec = decomposition_from_separators(g)
        verdict = validate_decomposition(g, rec.td)
        if not verdict.valid or rec.td.width > rec.width_bound():
            failures.append(label)
        slack.append(rec.width_bound() - rec.td.width)
    record(f"{50 - len(failures)}/50 valid within bound, min slack {min(slack)}")
    assert not failures, failures


@pytest.mark.criterion(3, "tw <= 105k for corpus graphs with n <= 10")
def test_criterion3_treewidth_vs_separators(record):
    start = time.perf_counter()
    small = [(label, g) for label, g in corpus() if g.n <= 10]
    reports = [(label, check_theorem6(g)) for label, g in small]
    worst = max(reports, key=lambda item: item[1].ratio)
    elapsed = time.perf_counter() - start
    record(f"{len(reports)} graphs, max tw/k = {worst[1].ratio} on {worst[0]}, {elapsed:.1f}s")
    assert reports
    assert all(rep.holds for _, rep in reports)
    assert elapsed < 300


@pytest.mark.criterion(4, "order transfer to ball-packing minors on 100 triples")
def test_criterion4_order_transfer(record):
    rng = random.Random(13)
    failures = []
    for i in range(100):
        n = rng.randint(4, 20)
        g = gnp(n, rng.choice([0.15, 0.25, 0.4]), rng.getrandbits(64))
        r = rng.choice([1, 2])
        model = random_ball_packing(g, r, rng.getrandbits(64))
        seq = list(range(n))
        rng.shuffle(seq)
        rep = check_observation13(g, model, LinearOrder.of(seq))
        if not (rep.per_vertex_ok and rep.density_ok):
            failures.append(i)
    record(f"{100 - len(failures)}/100 triples hold")
    assert not failures, failures


@pytest.mark.criterion(5, "greedy <= exact minor density; exact r=0 equals max subgraph density")
def test_criterion5_minor_oracle(record):
    rng = random.Random(5)
    graphs = list(atlas(6))
    for _ in range(20):
        graphs.append(gnp(rng.choice([7, 8]), rng.choice([0.3, 0.45, 0.6]), rng.getrandbits(64)))
    failures = []
    for g in graphs:
        edges = sorted(g.edges)
        for r in range(3):
            _, exact = densest_shallow_minor(g, r, "exact")
            _, greedy = densest_shallow_minor(g, r, "greedy")
            if greedy > exact:
                failures.append((g, r, "greedy"))
            if r == 0 and exact != oracles.max_subgraph_density(g.n, edges):
                failures.append((g, r, "r0"))
    record(f"{len(graphs)} graphs x r=0..2, {len(failures)} failures")
    assert not failures, failures


@pytest.mark.criterion(6, "exact expander certificate for every corpus graph with n <= 14")
def test_criterion6_expanders(record):
    start = time.perf_counter()
    graphs = [g for _, g in corpus() if g.n <= 14 and g.m > 0]
    graphs += [petersen(), grid(2, 3), cycle(9), clique(6)]
    failures = []
    for g in graphs:
        try:
            cert = expander_subgraph(g, "exact")
        except InvariantError as exc:
            failures.append(str(exc))
            continue
        h = g.induced_subgraph(cert.vertices)
        worst = oracles.min_vertex_expansion(h.n, sorted(h.edges))
        density_ok = average_degree(h) >= DENSITY_FACTOR * average_degree(g)
        expansion_ok = worst is None or worst >= tau(h.n)
        if not (cert.holds and density_ok and expansion_ok and cert.worst_ratio == worst):
            failures.append(repr(g))
    elapsed = time.perf_counter() - start
    record(f"{len(graphs) - len(failures)}/{len(graphs)} certified, {elapsed:.1f}s")
    assert not failures, failures
    assert elapsed < 600


@pytest.mark.criterion(7, "grid separator exponent in [0.35, 0.70]")
def test_criterion7_grid_exponent(record):
    start = time.perf_counter()
    result = grid_experiment(2, list(range(3, 9)), exact_cap=18)
    elapsed = time.perf_counter() - start
    orders = [row.order for row in result.rows]
    record(f"exponent {result.exponent:.4f}, orders {orders}, {elapsed:.1f}s")
    assert result.exponent is not None and 0.35 <= result.exponent <= 0.70
    assert all(row.order <= row.side for row in result.rows if row.mode == "exact")
    assert any(row.mode == "exact" for row in result.rows)
    assert elapsed < 300


@pytest.mark.criterion(8, "coloring-number invariants and exact best_order")
def test_criterion8_coloring_numbers(record):
    rng = random.Random(8)
    checked = 0
    for g in atlas(6):
        edges = sorted(g.edges)
        order, k = degeneracy_order(g)
        assert coloring_number(g, order, 1, "strong") == k + 1
        for _ in range(10):
            seq = list(range(g.n))
            rng.shuffle(seq)
            lo = LinearOrder.of(seq)
            strong = [coloring_number(g, lo, r, "strong") for r in range(5)]
            weak = [coloring_number(g, lo, r, "weak") for r in range(5)]
            assert all(s <= w for s, w in zip(strong, weak))
            assert strong == sorted(strong) and weak == sorted(weak)
            assert strong[2] == oracles.coloring_number(g.n, edges, seq, 2, "strong")
            assert weak[2] == oracles.coloring_number(g.n, edges, seq, 2, "weak")
            checked += 1
    brute = [g for g in atlas(5) if g.n >= 3]
    brute += [gnp(n, 0.45, 800 + i) for i, n in enumerate([6, 6, 6, 7, 7, 7])]
    for g in brute:
        for r in (1, 2):
            for kind in ("strong", "weak"):
                _, value = best_order(g, r, kind, "exact")
                assert value == oracles.best_coloring_number(g.n, sorted(g.edges), r, kind), (g, r, kind)
    record(f"{checked} (graph, order) pairs, {len(brute)} graphs against permutation brute force")


VERB_RUNS = [
    ["gen", "gnp:12:0.3", "--seed", "7"],
    ["gen", "grid:2:3", "--dimacs"],
    ["sep", "gnp:10:0.4", "--seed", "3"],
    ["sep", "grid:2:5", "--mode", "heuristic", "--format", "csv"],
    ["tw", "petersen"],
    ["minor", "gnp:14:0.3", "--seed", "2", "--r", "2"],
    ["minor", "grid:2:4", "--profile", "2", "--format", "csv"],
    ["colnum", "gnp:11:0.35", "--seed", "4", "--r", "2", "--kind", "weak"],
    ["expander", "gnp:12:0.4", "--seed", "9"],
    ["expander", "gnp:30:0.2", "--seed", "9", "--mode", "heuristic"],
    ["chain-check", "gnp:13:0.35", "--seed", "1", "--r", "1", "--format", "csv"],
    ["grid-exp", "--sides", "3..5", "--r-max", "1", "--format", "csv"],
    ["survey", "--corpus", "path:6,gnp:9:0.4,petersen", "--seed", "5", "--r-max", "2"],
]


@pytest.mark.criterion(9, "every CLI verb is byte-identical across two runs")
def test_criterion9_determinism(record, tmp_path):
    verbs = set()
    for i, argv in enumerate(VERB_RUNS):
        outputs = []
        for run in range(2):
            out = tmp_path / f"{i}-{run}.txt"
            assert main([*argv, "--out", str(out)]) == 0, argv
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1] and outputs[0], argv
        verbs.add(argv[0])
    record(f"{len(VERB_RUNS)} invocations over {len(verbs)} verbs identical")
    assert len(verbs) == 9
