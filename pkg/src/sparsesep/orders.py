"""Generalized coloring numbers and the minor order transfer.

For a linear order L and a vertex u, a vertex v with L(v) <= L(u) is

* strongly r-reachable from u if some path of length <= r joins u to v and
  every internal vertex comes after u;
* weakly r-reachable from u if some path of length <= r joins u to v and v
  is the L-minimum of the path.

Both counts include u itself (the length-0 path).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from sparsesep import _pykernels, kernels
from sparsesep.errors import DomainError, RefusalError
from sparsesep.graph import Graph, average_degree
from sparsesep.minors import MinorModel, contract, validate_model

EXACT_CAP = 9
KINDS = ("strong", "weak")


@dataclass(frozen=True)
class LinearOrder:
    """Vertices listed in increasing rank."""

    sequence: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.sequence) != list(range(len(self.sequence))):
            raise DomainError("a linear order must list every vertex 0..n-1 exactly once")

    @classmethod
    def of(cls, sequence: Iterable[int]) -> LinearOrder:
        return cls(tuple(sequence))

    @classmethod
    def natural(cls, n: int) -> LinearOrder:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.sequence)

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.sequence)
        for rank, v in enumerate(self.sequence):
            pos[v] = rank
        return tuple(pos)


def _check(g: Graph, order: LinearOrder, r: int, kind: str) -> None:
    if order.n != g.n:
        raise DomainError(f"order covers {order.n} vertices, graph has {g.n}")
    if r < 0:
        raise DomainError(f"radius must be >= 0, got {r}")
    if kind not in KINDS:
        raise DomainError(f"unknown kind {kind!r}")


def _ball(adj: Sequence[int], v: int, allowed: int, r: int) -> int:
    """Vertices of ``allowed`` within distance r of v inside G[allowed | {v}]."""
    seen = 1 << v
    frontier = seen
    for _ in range(r):
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nb & allowed & ~seen
        if not frontier:
            break
        seen |= frontier
    return seen


def reach_counts(g: Graph, order: LinearOrder, r: int, kind: str) -> list[int]:
    """Per-vertex count of r-reachable vertices (including the vertex itself)."""
    _check(g, order, r, kind)
    adj = g.adj_masks
    seq = order.sequence
    n = g.n
    counts = [1] * n
    if kind == "strong":
        reach = kernels.reach if n <= 63 else _pykernels.reach
        later = 0
        for u in reversed(seq):
            counts[u] += reach(adj, u, later, r).bit_count()
            later |= 1 << u
    else:
        # v is weakly reachable from every w in the r-ball of v within
        # the vertices after v
        later = 0
        for v in reversed(seq):
            ball = _ball(adj, v, later, r) & ~(1 << v)
            while ball:
                low = ball & -ball
                counts[low.bit_length() - 1] += 1
                ball ^= low
            later |= 1 << v
    return counts


def coloring_number(g: Graph, order: LinearOrder, r: int, kind: str = "strong") -> int:
    if g.n == 0:
        _check(g, order, r, kind)
        return 0
    return max(reach_counts(g, order, r, kind))


def degeneracy_order(g: Graph) -> tuple[LinearOrder, int]:
    """Reverse of a min-degree peeling (ties to the smallest id) and the degeneracy."""
    deg = [g.degree(v) for v in g.vertices()]
    alive = set(g.vertices())
    removed = []
    k = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        k = max(k, deg[v])
        alive.discard(v)
        removed.append(v)
        for w in g.adjacency[v]:
            if w in alive:
                deg[w] -= 1
    return LinearOrder(tuple(reversed(removed))), k


def _score(g: Graph, order: LinearOrder, r: int, kind: str) -> tuple[int, int]:
    counts = reach_counts(g, order, r, kind)
    return max(counts, default=0), sum(counts)


def _greedy_order(g: Graph, r: int) -> list[int]:
    """Fill ranks from the back, each time placing the vertex whose strong
    count against the still-unplaced vertices is smallest."""
    adj = g.adj_masks
    reach = kernels.reach if g.n <= 63 else _pykernels.reach
    later = 0
    rest = set(g.vertices())
    back = []
    while rest:
        u = min(rest, key=lambda x: (reach(adj, x, later, r).bit_count(), x))
        rest.discard(u)
        back.append(u)
        later |= 1 << u
    return back[::-1]


def _local_search(g: Graph, seq: list[int], r: int, kind: str, passes: int) -> list[int]:
    best = _score(g, LinearOrder(tuple(seq)), r, kind)
    for _ in range(passes):
        improved = False
        for i in range(len(seq) - 1):
            seq[i], seq[i + 1] = seq[i + 1], seq[i]
            s = _score(g, LinearOrder(tuple(seq)), r, kind)
            if s < best:
                best = s
                improved = True
            else:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
        if not improved:
            break
    return seq


def _weak_exact(g: Graph, r: int, incumbent: tuple[int, tuple[int, ...]]) -> tuple[int, tuple[int, ...]]:
    """Branch and bound over orders built from the front.

    Placing v fixes the set of vertices that weakly reach v (its r-ball
    among the vertices not yet placed), so partial counts only grow.
    """
    n = g.n
    adj = g.adj_masks
    full = (1 << n) - 1
    best_val, best_seq = incumbent
    counts = [1] * n
    prefix: list[int] = []

    def rec(placed: int, current: int) -> None:
        nonlocal best_val, best_seq
        if placed == full:
            if current < best_val:
                best_val, best_seq = current, tuple(prefix)
            return
        rest = full & ~placed
        r_mask = rest
        while r_mask:
            low = r_mask & -r_mask
            v = low.bit_length() - 1
            r_mask ^= low
            ball = _ball(adj, v, rest & ~low, r) & ~low
            touched = []
            worst = current
            b = ball
            while b:
                lb = b & -b
                w = lb.bit_length() - 1
                b ^= lb
                counts[w] += 1
                touched.append(w)
                if counts[w] > worst:
                    worst = counts[w]
            if worst < best_val:
                prefix.append(v)
                rec(placed | low, worst)
                prefix.pop()
            for w in touched:
                counts[w] -= 1

    rec(0, 1)
    return best_val, best_seq


def best_order(
    g: Graph, r: int, kind: str = "strong", mode: str = "heuristic", cap: int = EXACT_CAP
) -> tuple[LinearOrder, int]:
    """An order minimising the r-coloring number (exact) or a good one (heuristic)."""
    _check(g, LinearOrder.natural(g.n), r, kind)
    if g.n == 0:
        return LinearOrder(()), 0
    if mode not in ("exact", "heuristic"):
        raise DomainError(f"unknown mode {mode!r}")
    if mode == "exact" and g.n > cap:
        raise RefusalError(f"exact order search refused: n={g.n} exceeds cap {cap}")

    degen, _ = degeneracy_order(g)
    candidates = [list(degen.sequence)]
    greedy = _greedy_order(g, r)
    if g.n <= 200:
        greedy = _local_search(g, greedy, r, kind, passes=3)
    candidates.append(greedy)
    order = min(candidates, key=lambda seq: _score(g, LinearOrder(tuple(seq)), r, kind))
    heuristic = LinearOrder(tuple(order))
    value = coloring_number(g, heuristic, r, kind)
    if mode == "heuristic":
        return heuristic, value

    if kind == "strong":
        value, seq = kernels.strong_col_dp(g.adj_masks, g.n, r)
        found = LinearOrder(tuple(seq))
    else:
        value, seq = _weak_exact(g, r, (value, heuristic.sequence))
        found = LinearOrder(seq)
    assert coloring_number(g, found, r, kind) == value
    return found, value


@dataclass(frozen=True)
class OrderTransfer:
    order: LinearOrder  # over minor vertices
    backcounts: tuple[int, ...]  # indexed by minor vertex


def transfer_order(g: Graph, m: MinorModel, order: LinearOrder) -> OrderTransfer:
    """Order minor vertices by the L-minimum of their branch sets."""
    verdict = validate_model(g, m)
    if not verdict.valid:
        raise DomainError(f"invalid minor model: {verdict.reason}")
    if order.n != g.n:
        raise DomainError(f"order covers {order.n} vertices, graph has {g.n}")
    pos = order.position
    key = [min(pos[v] for v in s) for s in m.branch_sets]
    seq = sorted(range(m.k), key=lambda u: key[u])
    back = [0] * m.k
    for i, j in m.minor_edges:
        if key[i] < key[j]:
            back[j] += 1
        else:
            back[i] += 1
    return OrderTransfer(LinearOrder(tuple(seq)), tuple(back))


@dataclass(frozen=True)
class Observation13Report:
    radius: int  # radius at which the coloring number was taken
    c: int
    max_backcount: int
    worst_vertex: int
    density: Fraction
    per_vertex_ok: bool
    density_ok: bool

    @property
    def holds(self) -> bool:
        return self.per_vertex_ok and self.density_ok


def check_observation13(g: Graph, m: MinorModel, order: LinearOrder) -> Observation13Report:
    """Check backcount(u) + 1 <= c and d(minor) <= 2c for c = col_{max(4r,1)}(G, L)."""
    transfer = transfer_order(g, m, order)
    radius = max(4 * m.r, 1)
    c = coloring_number(g, order, radius, "strong")
    back = transfer.backcounts
    worst = max(range(m.k), key=lambda u: (back[u], -u)) if m.k else -1
    max_back = back[worst] if m.k else 0
    minor = contract(g, m)
    density = average_degree(minor) if minor.n else Fraction(0)
    return Observation13Report(
        radius=radius,
        c=c,
        max_backcount=max_back,
        worst_vertex=worst,
        density=density,
        per_vertex_ok=max_back + 1 <= c,
        density_ok=density <= 2 * c,
    )
