"""Graph families and the compact family-token syntax used by the CLI.

Randomised families draw from :class:`random.Random` (MT19937) seeded with
the caller's 64-bit seed, consuming one ``random()`` call per candidate
edge (pairs in lexicographic order) or per candidate vertex (increasing
id).  The stream is therefore reproducible bit-for-bit.
"""

from __future__ import annotations

import itertools
import random

from sparsesep.errors import DomainError
from sparsesep.graph import Graph

FAMILIES = ("path", "cycle", "clique", "star", "grid", "petersen", "gnp", "grid_subgraph")
SEED_LIMIT = 2**64


def _rng(seed: int) -> random.Random:
    if not (0 <= seed < SEED_LIMIT):
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return random.Random(seed)


def _positive(name: str, value: int) -> None:
    if value < 1:
        raise DomainError(f"{name} must be positive, got {value}")


def _probability(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {value}")


def path(n: int) -> Graph:
    _positive("n", n)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError(f"a simple cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def clique(n: int) -> Graph:
    _positive("n", n)
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(leaves: int) -> Graph:
    """K(1, leaves) with center 0."""
    _positive("leaves", leaves)
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def grid(d: int, side: int) -> Graph:
    """The d-dimensional grid with ``side`` vertices per axis.

    Vertex id is the mixed-radix number sum(x_k * side**k).
    """
    _positive("d", d)
    _positive("side", side)
    n = side**d
    edges = []
    for v in range(n):
        stride = 1
        for _ in range(d):
            if (v // stride) % side < side - 1:
                edges.append((v, v + stride))
            stride *= side
    return Graph.from_edges(n, edges)


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def gnp(n: int, p: float, seed: int) -> Graph:
    _positive("n", n)
    _probability("p", p)
    rng = _rng(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def grid_subgraph(d: int, side: int, keep_prob: float, seed: int) -> Graph:
    """Induced subgraph of grid(d, side) on a random vertex sample."""
    _probability("keep_prob", keep_prob)
    full = grid(d, side)
    rng = _rng(seed)
    keep = [v for v in full.vertices() if rng.random() < keep_prob]
    if not keep:
        raise DomainError("grid_subgraph sampled no vertices")
    return full.induced_subgraph(keep)


def generate(family: str, *params, seed: int = 0) -> Graph:
    """Dispatch on a family name; randomised families take ``seed`` last or by keyword."""
    try:
        if family == "path":
            (n,) = params
            return path(int(n))
        if family == "cycle":
            (n,) = params
            return cycle(int(n))
        if family == "clique":
            (n,) = params
            return clique(int(n))
        if family == "star":
            (k,) = params
            return star(int(k))
        if family == "grid":
            d, side = params
            return grid(int(d), int(side))
        if family == "petersen":
            if params:
                raise DomainError("petersen takes no parameters")
            return petersen()
        if family == "gnp":
            if len(params) == 3:
                n, p, seed = params
            else:
                n, p = params
            return gnp(int(n), float(p), int(seed))
        if family == "grid_subgraph":
            if len(params) == 4:
                d, side, keep, seed = params
            else:
                d, side, keep = params
            return grid_subgraph(int(d), int(side), float(keep), int(seed))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad parameters for {family}: {params!r}") from exc
    raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def from_token(token: str, seed: int = 0) -> Graph:
    """Parse ``family:arg:arg...`` such as ``grid:2:3`` or ``gnp:10:0.5:7``."""
    parts = token.strip().split(":")
    return generate(parts[0], *parts[1:], seed=seed)
