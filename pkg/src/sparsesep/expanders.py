"""Vertex expansion and dense expander subgraphs.

The expansion threshold is

    tau(n) = 1 / (2^8 * log2(m) * (log2 log2 m)^2),   m = max(n, 4),

with both logarithms base 2 and the clamp at 4 keeping log log positive.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from sparsesep import kernels
from sparsesep.errors import DomainError, InvariantError, RefusalError
from sparsesep.graph import Graph, average_degree, neighborhood

EXPANSION_CAP = 22
EXACT_CAP = 14
DENSITY_FACTOR = Fraction(255, 256)


def tau(n: int) -> float:
    m = max(n, 4)
    return 1.0 / (2**8 * math.log2(m) * math.log2(math.log2(m)) ** 2)


def vertex_expansion_exact(g: Graph, cap: int = EXPANSION_CAP) -> tuple[Fraction | None, frozenset[int]]:
    """min |N(S)|/|S| over nonempty S with 2|S| <= n, and the first minimiser.

    Returns ``(None, frozenset())`` when no admissible S exists (n < 2).
    """
    if g.n > cap:
        raise RefusalError(f"expansion enumeration refused: n={g.n} exceeds cap {cap}")
    num, den, mask = kernels.min_vertex_expansion(g.adj_masks, g.n)
    if den == 0:
        return None, frozenset()
    return Fraction(num, den), frozenset(v for v in g.vertices() if mask >> v & 1)


@dataclass(frozen=True)
class ExpansionCertificate:
    vertices: tuple[int, ...]  # host ids of H
    density: Fraction  # d(H)
    host_density: Fraction  # d(G)
    tau: float  # tau(|V(H)|)
    worst_set: tuple[int, ...]  # host ids
    worst_ratio: Fraction | None  # None when H has no admissible set
    certified: bool  # worst_set came from full enumeration

    @property
    def density_ok(self) -> bool:
        return self.density >= DENSITY_FACTOR * self.host_density

    @property
    def expansion_ok(self) -> bool:
        return self.worst_ratio is None or self.worst_ratio >= self.tau

    @property
    def holds(self) -> bool:
        return self.certified and self.density_ok and self.expansion_ok


def certify(g: Graph, vertices, cap: int = EXPANSION_CAP) -> ExpansionCertificate:
    """Exact certificate for the induced subgraph on ``vertices``."""
    verts = sorted(set(vertices))
    if not verts:
        raise DomainError("empty vertex set")
    h = g.induced_subgraph(verts)
    ratio, worst = vertex_expansion_exact(h, cap)
    return ExpansionCertificate(
        vertices=tuple(verts),
        density=average_degree(h),
        host_density=average_degree(g),
        tau=tau(h.n),
        worst_set=tuple(sorted(verts[v] for v in worst)),
        worst_ratio=ratio,
        certified=True,
    )


def _edge_counts(g: Graph) -> list[int]:
    adj = g.adj_masks
    size = 1 << g.n
    e = [0] * size
    for s in range(1, size):
        low = s & -s
        e[s] = e[s ^ low] + (adj[low.bit_length() - 1] & s).bit_count()
    return e


def _connected(adj, mask: int) -> bool:
    start = mask & -mask
    seen = frontier = start
    while frontier:
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nb & mask & ~seen
        seen |= frontier
    return seen == mask


def expander_subgraph(g: Graph, mode: str = "exact", cap: int = EXACT_CAP, seed: int = 0) -> ExpansionCertificate:
    """Induced H with d(H) >= (255/256) d(G) and vertex expansion >= tau(|V(H)|).

    Exact mode scans induced subgraphs by decreasing size, then decreasing
    density, then lexicographically, and returns the first one whose full
    enumeration certifies both bounds.  Since tau(n) < 1/n for every n in
    range, a set with no outside neighbours is the only way to fail, so
    disconnected candidates are skipped before enumeration.
    """
    if g.n == 0:
        raise DomainError("empty graph")
    if mode == "heuristic":
        return _heuristic(g, seed)
    if mode != "exact":
        raise DomainError(f"unknown mode {mode!r}")
    if g.n > cap:
        raise RefusalError(f"exact expander search refused: n={g.n} exceeds cap {cap}")
    n, m = g.n, g.m
    adj = g.adj_masks
    e = _edge_counts(g)
    candidates = []
    for s in range(1, 1 << n):
        k = s.bit_count()
        # d(H) >= 255/256 d(G)  <=>  256 * 2e(S) * n >= 255 * 2m * k
        if 256 * e[s] * n < 255 * m * k:
            continue
        verts = tuple(v for v in range(n) if s >> v & 1)
        candidates.append((-k, -Fraction(2 * e[s], k), verts, s))
    candidates.sort()
    for _, _, verts, s in candidates:
        if not _connected(adj, s):
            continue
        cert = certify(g, verts)
        if cert.holds:
            return cert
    raise InvariantError("no certified expander subgraph found; this contradicts the existence theorem")


def _densest_by_peeling(g: Graph, verts: list[int]) -> list[int]:
    alive = set(verts)
    deg = {v: len(g.adjacency[v] & alive) for v in alive}
    edges = sum(deg.values()) // 2
    best = (Fraction(2 * edges, len(alive)), sorted(alive))
    while len(alive) > 1:
        v = min(alive, key=lambda x: (deg[x], x))
        alive.discard(v)
        edges -= deg[v]
        for w in g.adjacency[v]:
            if w in alive:
                deg[w] -= 1
        d = Fraction(2 * edges, len(alive))
        if d > best[0]:
            best = (d, sorted(alive))
    return best[1]


def _heuristic(g: Graph, seed: int, samples: int = 64) -> ExpansionCertificate:
    """Peel to a dense core, then repeatedly split off a sampled violating set.

    Sampled sets are the components and BFS balls of the current subgraph;
    the result carries no exactness claim.
    """
    rng = random.Random(seed)
    verts = _densest_by_peeling(g, list(g.vertices()))
    worst: tuple[Fraction | None, tuple[int, ...]] = (None, ())
    while True:
        t = tau(len(verts))
        half = len(verts) // 2
        sets = [c for c in g.components(verts) if len(c) <= half]
        for _ in range(samples if half else 0):
            c = rng.choice(verts)
            dist = g.bfs_distances(c, verts)
            radius = rng.randint(0, max(dist.values()))
            ball = sorted(v for v, d in dist.items() if d <= radius)
            if 2 * len(ball) <= len(verts):
                sets.append(ball)
        worst = (None, ())
        violating = None
        inside_h = set(verts)
        for s in sets:
            ratio = Fraction(len(neighborhood(g, s) & inside_h), len(s))
            if worst[0] is None or ratio < worst[0]:
                worst = (ratio, tuple(s))
            if ratio < t and violating is None:
                violating = s
        if violating is None:
            break
        inside = _densest_by_peeling(g, violating)
        outside = _densest_by_peeling(g, [v for v in verts if v not in set(violating)])
        if average_degree(g.induced_subgraph(inside)) >= average_degree(g.induced_subgraph(outside)):
            verts = inside
        else:
            verts = outside
    h = g.induced_subgraph(verts)
    return ExpansionCertificate(
        vertices=tuple(verts),
        density=average_degree(h),
        host_density=average_degree(g),
        tau=tau(h.n),
        worst_set=worst[1],
        worst_ratio=worst[0],
        certified=False,
    )
