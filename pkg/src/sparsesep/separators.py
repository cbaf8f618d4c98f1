"""Balanced separators: validation, exact and heuristic minimisation.

A separator is a pair (A, B) with A | B = V and no edge between A - B and
B - A.  It is balanced when 3|A - B| <= 2n and 3|B - A| <= 2n.  Any
separator is determined by its cut C = A & B together with an assignment
of the components of G - C to the two sides, so both searches work on
cut sets and then pack components.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from sparsesep import _pykernels, kernels
from sparsesep.errors import DomainError, RefusalError
from sparsesep.graph import Graph, mask_of

EXACT_CAP = 18
SUBGRAPH_CAP = 12


@dataclass(frozen=True)
class Separator:
    a: frozenset[int]
    b: frozenset[int]

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int]) -> Separator:
        return cls(frozenset(a), frozenset(b))

    @property
    def cut(self) -> frozenset[int]:
        return self.a & self.b

    @property
    def order(self) -> int:
        return len(self.a & self.b)

    def sides(self) -> tuple[frozenset[int], frozenset[int]]:
        return self.a - self.b, self.b - self.a


@dataclass(frozen=True)
class SeparatorVerdict:
    status: str  # "valid_balanced" | "valid_unbalanced" | "invalid"
    order: int
    reason: str = ""

    @property
    def valid(self) -> bool:
        return self.status != "invalid"

    @property
    def balanced(self) -> bool:
        return self.status == "valid_balanced"


def is_balanced_split(n: int, left: int, right: int) -> bool:
    return 3 * left <= 2 * n and 3 * right <= 2 * n


def validate_separator(g: Graph, s: Separator) -> SeparatorVerdict:
    order = s.order
    for v in sorted(s.a | s.b):
        if not (0 <= v < g.n):
            return SeparatorVerdict("invalid", order, f"vertex {v} not in graph")
    missing = set(g.vertices()) - (s.a | s.b)
    if missing:
        return SeparatorVerdict("invalid", order, f"A | B misses vertex {min(missing)}")
    only_a, only_b = s.sides()
    for u, v in g.sorted_edges:
        if (u in only_a and v in only_b) or (u in only_b and v in only_a):
            return SeparatorVerdict("invalid", order, f"crossing edge {u}-{v}")
    if not is_balanced_split(g.n, len(only_a), len(only_b)):
        return SeparatorVerdict(
            "valid_unbalanced",
            order,
            f"side sizes {len(only_a)}, {len(only_b)} exceed 2n/3 for n={g.n}",
        )
    return SeparatorVerdict("valid_balanced", order)


def pack_components(n: int, components: list[list[int]]) -> tuple[list[int], list[int]] | None:
    """Split components into two sides of size <= 2n/3 each, or None.

    Chooses the feasible left-side total closest to half of the remaining
    vertices (smaller total on ties) and reconstructs the left side from
    the last component backwards.
    """
    sizes = [len(c) for c in components]
    total = sum(sizes)
    lim = (2 * n) // 3
    reach = [1]  # reach[i]: bitset of subset sums using the first i components
    for sz in sizes:
        reach.append(reach[-1] | (reach[-1] << sz))
    feasible = [x for x in range(max(0, total - lim), min(total, lim) + 1) if reach[-1] >> x & 1]
    if not feasible:
        return None
    target = min(feasible, key=lambda x: (abs(2 * x - total), x))
    left: list[int] = []
    right: list[int] = []
    x = target
    for i in range(len(sizes) - 1, -1, -1):
        if x >= sizes[i] and reach[i] >> (x - sizes[i]) & 1:
            left.extend(components[i])
            x -= sizes[i]
        else:
            right.extend(components[i])
    assert x == 0
    return sorted(left), sorted(right)


def separator_from_cut(g: Graph, cut: Iterable[int]) -> Separator | None:
    """Balanced separator with exactly this cut, if the components pack."""
    cut = frozenset(cut)
    rest = [v for v in g.vertices() if v not in cut]
    packed = pack_components(g.n, g.components(rest))
    if packed is None:
        return None
    left, right = packed
    return Separator(cut | frozenset(left), cut | frozenset(right))


def min_balanced_separator(g: Graph, mode: str = "exact", cap: int = EXACT_CAP) -> Separator:
    """Minimum-order balanced separator (exact) or a good one (heuristic).

    Exact mode searches cut sets by increasing size, each size in
    lexicographic order, with the heuristic's order as the incumbent bound,
    so the result is the lexicographically smallest minimum cut.
    """
    if g.n == 0:
        raise DomainError("separator of the empty graph is undefined")
    if mode == "heuristic":
        return heuristic_separator(g)
    if mode != "exact":
        raise DomainError(f"unknown mode {mode!r}")
    if g.n > min(cap, 63):
        raise RefusalError(f"exact separator search refused: n={g.n} exceeds cap {min(cap, 63)}")
    incumbent = heuristic_separator(g)
    cut_mask = kernels.separator_search(g.adj_masks, g.n, incumbent.order)
    if cut_mask < 0:
        raise AssertionError("incumbent order not reproduced by exact search")
    cut = [v for v in g.vertices() if cut_mask >> v & 1]
    sep = separator_from_cut(g, cut)
    assert sep is not None
    return sep


def _pseudo_peripheral(g: Graph, within: list[int]) -> int:
    v = min(within)
    ecc = -1
    while True:
        dist = g.bfs_distances(v, within)
        far = max(dist.values())
        if far <= ecc:
            return v
        ecc = far
        v = min(u for u, d in dist.items() if d == far)


def _bfs_layers(g: Graph, root: int) -> list[list[int]]:
    dist = {root: 0}
    layers = [[root]]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(g.adjacency[x]):
            if y not in dist:
                dist[y] = dist[x] + 1
                if dist[y] == len(layers):
                    layers.append([])
                layers[dist[y]].append(y)
                queue.append(y)
    return [sorted(layer) for layer in layers]


def _packable(g: Graph, cut: set[int]) -> bool:
    impl = kernels.packable if g.n <= 63 else _pykernels.packable
    return impl(g.adj_masks, g.n, mask_of(cut))


def _refine(g: Graph, cut: set[int]) -> set[int]:
    changed = True
    while changed:
        changed = False
        for v in sorted(cut):
            trial = cut - {v}
            if _packable(g, trial):
                cut = trial
                changed = True
    return cut


def heuristic_separator(g: Graph) -> Separator:
    """BFS layering from a pseudo-peripheral vertex plus greedy refinement.

    Tries the empty cut, then every BFS layer of the largest component
    (smallest layer first), keeps the first cut whose remaining components
    pack into a balanced split and greedily drops cut vertices while the
    split stays packable.  Falls back to refining the full vertex set.
    """
    if g.n == 0:
        raise DomainError("separator of the empty graph is undefined")
    empty = separator_from_cut(g, ())
    if empty is not None:
        return empty
    comps = g.components()
    biggest = max(comps, key=lambda c: (len(c), -c[0]))
    root = _pseudo_peripheral(g, biggest)
    layers = _bfs_layers(g, root)
    chosen: set[int] | None = None
    for layer in sorted(layers, key=lambda l: (len(l), l)):
        if separator_from_cut(g, layer) is not None:
            chosen = set(layer)
            break
    if chosen is None:
        chosen = set(g.vertices())
    chosen = _refine(g, chosen)
    sep = separator_from_cut(g, chosen)
    assert sep is not None
    return sep


def subgraph_separator_bound(g: Graph, cap: int = SUBGRAPH_CAP, exact_cap: int = EXACT_CAP):
    """Max, over connected induced subgraphs, of the minimum balanced-separator order.

    Returns ``(k, witness_vertices, witness_separator)``; the separator is
    expressed in the witness subgraph's local ids.  Candidates are scanned
    largest first, then lexicographically, and the first maximiser is kept.
    """
    if g.n == 0:
        raise DomainError("empty graph")
    if g.n > cap:
        raise RefusalError(f"subgraph enumeration refused: n={g.n} exceeds cap {cap}")
    adj = g.adj_masks
    candidates = []
    for mask in range(1, 1 << g.n):
        verts = [v for v in g.vertices() if mask >> v & 1]
        if _connected_mask(adj, mask):
            candidates.append(verts)
    candidates.sort(key=lambda vs: (-len(vs), vs))
    best_k = -1
    best: tuple[list[int], Separator] | None = None
    for verts in candidates:
        # a k-vertex graph never needs a cut larger than ceil(k/3)
        if best_k >= (len(verts) + 2) // 3:
            continue
        sub = g.induced_subgraph(verts)
        sep = min_balanced_separator(sub, "exact", cap=exact_cap)
        if sep.order > best_k:
            best_k = sep.order
            best = (verts, sep)
    assert best is not None
    return best_k, tuple(best[0]), best[1]


def _connected_mask(adj, mask: int) -> bool:
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= adj[low.bit_length() - 1]
            f ^= low
        new = nb & mask & ~seen
        seen |= new
        frontier = new
    return seen == mask
