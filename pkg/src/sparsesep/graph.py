"""Simple undirected graphs on dense integer vertex ids.

A :class:`Graph` is immutable.  Subgraphs remember which parent vertex each
of their vertices came from (``origin``), so certificates computed on a
subgraph can be mapped back and checked against the host.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from sparsesep.errors import DomainError

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: frozenset[Edge]
    origin: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError(f"vertex count must be >= 0, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"self-loop at {u}")
            if not (0 <= u < v < self.n):
                raise DomainError(f"edge ({u}, {v}) is not a normalized pair in 0..{self.n - 1}")
        if not self.origin:
            object.__setattr__(self, "origin", tuple(range(self.n)))
        elif len(self.origin) != self.n:
            raise DomainError("origin map must have one entry per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], origin: Sequence[int] = ()) -> Graph:
        """Build a graph, normalizing pair order and dropping duplicates."""
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            norm.add(_norm_edge(u, v))
        return cls(n, frozenset(norm), tuple(origin))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an int bitmask."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree_sequence(self) -> list[int]:
        return sorted((len(a) for a in self.adjacency), reverse=True)

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph on ``vertices``, relabelled 0..k-1 in increasing order.

        ``origin`` of the result maps each new id to the id in *this* graph.
        """
        keep = sorted(set(vertices))
        self._check_ids(keep)
        index = {v: i for i, v in enumerate(keep)}
        edges = frozenset(
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        )
        return Graph(len(keep), edges, tuple(keep))

    def edge_subgraph(self, edges: Iterable[Edge]) -> Graph:
        """Spanning subgraph keeping only ``edges`` (which must exist here)."""
        keep = frozenset(_norm_edge(u, v) for u, v in edges)
        missing = keep - self.edges
        if missing:
            raise DomainError(f"edges not in graph: {sorted(missing)[:3]}")
        return Graph(self.n, keep, tuple(range(self.n)))

    def components(self, within: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components of the subgraph induced by ``within``.

        Components are sorted lists, ordered by smallest member.
        """
        allowed = set(self.vertices()) if within is None else set(within)
        seen: set[int] = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if y in allowed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self, within: Iterable[int] | None = None) -> bool:
        return len(self.components(within)) <= 1

    def bfs_distances(self, source: int, within: Iterable[int] | None = None) -> dict[int, int]:
        allowed = None if within is None else set(within)
        dist = {source: 0}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in dist and (allowed is None or y in allowed):
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def _check_ids(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if not (0 <= v < self.n):
                raise DomainError(f"vertex {v} not in 0..{self.n - 1}")


def average_degree(g: Graph) -> Fraction:
    """Exact average degree 2|E|/|V|."""
    if g.n == 0:
        raise DomainError("average degree of the empty graph is undefined")
    return Fraction(2 * g.m, g.n)


def neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``s`` with at least one neighbour in ``s``."""
    s = set(s)
    g._check_ids(s)
    out: set[int] = set()
    for v in s:
        out |= g.adjacency[v]
    return frozenset(out - s)


def eccentricity_radius(g: Graph, within: Iterable[int]) -> tuple[int, int]:
    """Center and radius of the subgraph induced by ``within``.

    Distances are measured inside the induced subgraph.  Ties go to the
    smallest vertex id.
    """
    within = sorted(set(within))
    if not within:
        raise DomainError("radius of an empty vertex set is undefined")
    g._check_ids(within)
    best: tuple[int, int] | None = None
    for c in within:
        dist = g.bfs_distances(c, within)
        if len(dist) != len(within):
            raise DomainError("vertex set does not induce a connected subgraph")
        ecc = max(dist.values())
        if best is None or ecc < best[1]:
            best = (c, ecc)
    assert best is not None
    return best


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph.from_edges(offset, edges)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out
