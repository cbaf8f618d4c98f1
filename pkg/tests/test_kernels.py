"""The compiled and pure-Python kernels must agree bit for bit."""

from __future__ import annotations

import pytest

from sparsesep import _pykernels, kernels
from sparsesep.generators import clique, cycle, gnp, grid, path, petersen, star

GRAPHS = [cycle(6), clique(5), grid(2, 3), petersen(), gnp(12, 0.4, 3), star(6), path(9), gnp(14, 0.25, 9)]


def test_backend_selection_reports_a_known_backend():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in kernels.available_backends()


@pytest.mark.parametrize("g", GRAPHS, ids=repr)
def test_backends_agree(g):
    backends = kernels.available_backends()
    if len(backends) < 2:
        pytest.skip("compiled extension not built")
    fast = backends["cython"]
    adj = g.adj_masks
    assert fast.separator_search(adj, g.n, g.n) == _pykernels.separator_search(adj, g.n, g.n)
    assert fast.treewidth_dp(adj, g.n) == _pykernels.treewidth_dp(adj, g.n)
    for r in (0, 1, 2, 4):
        assert fast.strong_col_dp(adj, g.n, r) == _pykernels.strong_col_dp(adj, g.n, r)
    assert fast.min_vertex_expansion(adj, g.n) == _pykernels.min_vertex_expansion(adj, g.n)
    for start in range(g.n):
        for through in (0, (1 << g.n) - 1 - (1 << start), 0b1010101010 & ((1 << g.n) - 1)):
            for depth in (-1, 0, 1, 3):
                assert fast.reach(adj, start, through, depth) == _pykernels.reach(adj, start, through, depth)
    for cut in range(0, 1 << min(g.n, 8)):
        assert fast.packable(adj, g.n, cut) == _pykernels.packable(adj, g.n, cut)


def test_reach_semantics(backend):
    adj = path(5).adj_masks
    # from 0 through {1, 2}: reaches 3 (length 3); 1 and 2 are internal only
    assert backend.reach(adj, 0, 0b00110, -1) == 0b01000
    assert backend.reach(adj, 0, 0b00110, 2) == 0
    assert backend.reach(adj, 2, 0, 1) == 0b01010


def test_empty_and_tiny_inputs(backend):
    assert backend.treewidth_dp((), 0) == (-1, [])
    assert backend.strong_col_dp((), 0, 1) == (0, [])
    assert backend.min_vertex_expansion((0,), 1)[1] == 0


def test_compiled_kernels_refuse_oversized_graphs():
    backends = kernels.available_backends()
    if "cython" not in backends:
        pytest.skip("compiled extension not built")
    with pytest.raises(ValueError):
        backends["cython"].packable([0] * 64, 64, 0)
