"""Tree decompositions, exact treewidth, and the separator/treewidth bridges.

Exact treewidth uses a subset DP over elimination orders for n <= 18 and a
memoised branch-and-bound over elimination orders beyond that, up to a cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from sparsesep import kernels
from sparsesep.errors import CertificationError, DomainError, InvariantError, RefusalError
from sparsesep.graph import Graph
from sparsesep.separators import (
    Separator,
    min_balanced_separator,
    separator_from_cut,
    subgraph_separator_bound,
    validate_separator,
)

DP_LIMIT = 18
EXACT_CAP = 24
SPARSIFIER_CAP = 10
SPARSIFIER_STATES = 50_000
SEPARATOR_TW_FACTOR = 105


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]  # parent node of each bag, -1 for the root

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(p, i) for i, p in enumerate(self.parent) if p >= 0]

    def tree_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for p, c in self.tree_edges():
            adj[p].append(c)
            adj[c].append(p)
        return adj


@dataclass(frozen=True)
class DecompositionVerdict:
    valid: bool
    width: int
    reason: str = ""


def validate_decomposition(g: Graph, td: TreeDecomposition) -> DecompositionVerdict:
    k = len(td.bags)
    width = td.width
    if len(td.parent) != k:
        return DecompositionVerdict(False, width, "parent list length differs from bag count")
    if k == 0:
        if g.n == 0:
            return DecompositionVerdict(True, -1)
        return DecompositionVerdict(False, width, "no bags")
    roots = [i for i, p in enumerate(td.parent) if p < 0]
    if len(roots) != 1:
        return DecompositionVerdict(False, width, f"tree must have one root, found {len(roots)}")
    for i, p in enumerate(td.parent):
        if p >= k:
            return DecompositionVerdict(False, width, f"node {i} has unknown parent {p}")
    # every node must reach the root without revisiting a node
    for i in range(k):
        seen = set()
        x = i
        while x >= 0:
            if x in seen:
                return DecompositionVerdict(False, width, f"cycle through node {x}")
            seen.add(x)
            x = td.parent[x]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not (0 <= v < g.n):
                return DecompositionVerdict(False, width, f"bag {i} holds unknown vertex {v}")
    covered = set().union(*td.bags)
    for v in g.vertices():
        if v not in covered:
            return DecompositionVerdict(False, width, f"vertex {v} in no bag")
    for u, v in g.sorted_edges:
        if not any(u in b and v in b for b in td.bags):
            return DecompositionVerdict(False, width, f"edge {u}-{v} uncovered")
    tree_adj = td.tree_adjacency()
    for v in g.vertices():
        nodes = [i for i, b in enumerate(td.bags) if v in b]
        reached = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in tree_adj[x]:
                if y not in reached and v in td.bags[y]:
                    reached.add(y)
                    stack.append(y)
        if len(reached) != len(nodes):
            return DecompositionVerdict(False, width, f"bags containing vertex {v} are not connected")
    return DecompositionVerdict(True, width)


def decomposition_from_order(g: Graph, order: Iterable[int]) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``.

    Bag of v is v plus its not-yet-eliminated neighbours in the filled
    graph; its parent is the bag of the first of those to be eliminated.
    Components' roots are chained together.
    """
    order = list(order)
    if sorted(order) != list(g.vertices()):
        raise DomainError("elimination order must be a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in g.adjacency]
    bags = []
    parent_vertex = []
    for v in order:
        higher = adj[v]
        bags.append(frozenset(higher | {v}))
        parent_vertex.append(min(higher, key=pos.__getitem__) if higher else None)
        for x in higher:
            adj[x] |= higher - {x}
            adj[x].discard(v)
    parent = [pos[p] if p is not None else -1 for p in parent_vertex]
    roots = [i for i, p in enumerate(parent) if p < 0]
    for a, b in zip(roots, roots[1:]):
        parent[a] = b
    return TreeDecomposition(tuple(bags), tuple(parent))


def min_fill_order(g: Graph) -> tuple[int, list[int]]:
    """Min-fill elimination heuristic (ties to the smallest id): (width, order)."""
    adj = [set(a) for a in g.adjacency]
    alive = set(g.vertices())
    order = []
    width = -1
    while alive:
        def fill(v: int) -> int:
            nb = list(adj[v])
            return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])

        v = min(sorted(alive), key=fill)
        nb = adj[v]
        width = max(width, len(nb))
        for x in nb:
            adj[x] |= nb - {x}
            adj[x].discard(v)
        alive.discard(v)
        order.append(v)
    return width, order


def _mmw_lower_bound(adj: list[int], alive: int) -> int:
    """Minor-min-width lower bound on the graph induced by ``alive``."""
    adj = [a & alive for a in adj]
    lb = 0
    while alive:
        best_v, best_d = -1, 1 << 30
        rest = alive
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            d = (adj[v] & alive).bit_count()
            if d < best_d:
                best_v, best_d = v, d
        lb = max(lb, best_d)
        v = best_v
        nb = adj[v] & alive
        if nb:
            # contract v into its neighbour with fewest common neighbours
            best_u, best_c = -1, 1 << 30
            rest = nb
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                rest ^= low
                c = (adj[u] & nb).bit_count()
                if c < best_c:
                    best_u, best_c = u, c
            u = best_u
            merged = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
            adj[u] = merged
            rest = merged
            while rest:
                low = rest & -rest
                w = low.bit_length() - 1
                rest ^= low
                adj[w] = (adj[w] | (1 << u)) & ~(1 << v)
        alive &= ~(1 << v)
    return lb


def treewidth_branch_and_bound(g: Graph) -> tuple[int, list[int]]:
    """Exact treewidth by depth-first search over elimination orders.

    The filled graph after eliminating a set depends only on the set, so
    states are memoised by eliminated-set mask.  Prunes with the min-fill
    upper bound and a minor-min-width lower bound; a simplicial vertex is
    always eliminated first when one exists.
    """
    n = g.n
    if n == 0:
        return -1, []
    ub, ub_order = min_fill_order(g)
    full = (1 << n) - 1
    root_adj = list(g.adj_masks)
    if _mmw_lower_bound(root_adj, full) >= ub:
        return ub, ub_order
    best = [ub, ub_order]
    seen: dict[int, int] = {}

    def search(adj: list[int], alive: int, width: int, order: list[int]) -> None:
        if alive == 0 or alive.bit_count() <= width + 1:
            if width < best[0]:
                rest = [v for v in range(n) if alive >> v & 1]
                best[0], best[1] = width, order + rest
            return
        eliminated = full & ~alive
        if seen.get(eliminated, 1 << 30) <= width:
            return
        seen[eliminated] = width
        if max(width, _mmw_lower_bound(adj, alive)) >= best[0]:
            return
        candidates = []
        rest = alive
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            nb = adj[v] & alive
            deg = nb.bit_count()
            simplicial = all((adj[u] | (1 << u)) & nb == nb for u in _bits(nb))
            if simplicial:
                candidates = [(deg, v)]
                break
            candidates.append((deg, v))
        candidates.sort()
        for deg, v in candidates:
            w = max(width, deg)
            if w >= best[0]:
                continue
            nb = adj[v] & alive
            new_adj = adj[:]
            for u in _bits(nb):
                new_adj[u] = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
            search(new_adj, alive & ~(1 << v), w, order + [v])

    search(root_adj, full, -1, [])
    return best[0], best[1]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def treewidth_exact(g: Graph, cap: int = EXACT_CAP, method: str = "auto") -> tuple[int, TreeDecomposition]:
    """Exact treewidth with a witnessing decomposition.

    ``method`` is ``"dp"``, ``"bb"`` or ``"auto"`` (DP up to 18 vertices).
    """
    if g.n == 0:
        raise DomainError("treewidth of the empty graph is undefined")
    if g.n > cap:
        raise RefusalError(f"exact treewidth refused: n={g.n} exceeds cap {cap}")
    if method == "auto":
        method = "dp" if g.n <= DP_LIMIT else "bb"
    if method == "dp":
        width, order = kernels.treewidth_dp(g.adj_masks, g.n)
    elif method == "bb":
        width, order = treewidth_branch_and_bound(g)
    else:
        raise DomainError(f"unknown treewidth method {method!r}")
    td = decomposition_from_order(g, order)
    if td.width != width:
        raise InvariantError(f"elimination order gives width {td.width}, expected {width}")
    return width, td


def treewidth_upper_bound(g: Graph, cap: int = EXACT_CAP) -> tuple[int, bool]:
    """(value, exact): exact treewidth within the cap, else the min-fill width."""
    if g.n <= cap:
        return treewidth_exact(g, cap)[0], True
    return min_fill_order(g)[0], False


def separator_from_decomposition(g: Graph, td: TreeDecomposition) -> Separator:
    """Balanced separator whose cut is a single bag of ``td``.

    Walks from the root toward any neighbouring subtree holding more than
    n/2 vertices outside the current bag; at the stopping bag every
    component of G - bag has at most n/2 vertices and the components pack
    into a 2/3-balanced split.
    """
    verdict = validate_decomposition(g, td)
    if not verdict.valid:
        raise DomainError(f"invalid tree decomposition: {verdict.reason}")
    if g.n == 0:
        raise DomainError("empty graph")
    tree_adj = td.tree_adjacency()

    def beyond(t: int, nbr: int) -> set[int]:
        seen = {t, nbr}
        stack = [nbr]
        verts: set[int] = set()
        while stack:
            x = stack.pop()
            verts |= td.bags[x]
            for y in tree_adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return verts - td.bags[t]

    t = td.parent.index(-1)
    for _ in range(len(td.bags) + 1):
        heavy = [y for y in tree_adj[t] if 2 * len(beyond(t, y)) > g.n]
        if not heavy:
            break
        t = heavy[0]
    else:
        raise InvariantError("centroid walk did not terminate")
    sep = separator_from_cut(g, td.bags[t])
    if sep is None:
        raise InvariantError(f"bag {t} does not yield a balanced separator")
    return sep


@dataclass(frozen=True)
class TraceStep:
    depth: int
    part_size: int
    attached: int  # size of the separator set carried into this part
    order: int  # separator order used here (0 for leaves)
    leaf: bool


@dataclass(frozen=True)
class RecursiveDecomposition:
    td: TreeDecomposition
    trace: tuple[TraceStep, ...]
    n: int

    @property
    def k_max(self) -> int:
        return max((s.order for s in self.trace), default=0)

    @property
    def depth(self) -> int:
        return max((s.depth for s in self.trace), default=0)

    def width_bound(self) -> int:
        """1 + k_max * ceil(log_{3/2} n), evaluated exactly."""
        return 1 + self.k_max * ceil_log(self.n, Fraction(3, 2))

    def fitted_log_base(self) -> float | None:
        """Smallest base b with width <= 1 + k_max * log_b n, if finite."""
        w = self.td.width
        if self.n < 2 or self.k_max == 0 or w <= 1:
            return None
        return self.n ** (self.k_max / (w - 1))


def ceil_log(n: int, base: Fraction) -> int:
    """Smallest t >= 0 with base**t >= n."""
    t = 0
    p = Fraction(1)
    while p < n:
        p *= base
        t += 1
    return t


SeparatorProvider = Callable[[Graph], Separator]


def exact_provider(sub: Graph) -> Separator:
    return min_balanced_separator(sub, "exact")


def decomposition_from_separators(g: Graph, sep_provider: SeparatorProvider = exact_provider) -> RecursiveDecomposition:
    """Tree decomposition built by recursive balanced separation.

    Each call separates the current part W with S = A & B, makes a bag
    X | S (X being the separator vertices inherited from ancestors) and
    recurses on A - B and B - A with X | S attached.  Parts no larger than
    the largest separator order seen so far become single bags.
    """
    if g.n == 0:
        raise DomainError("empty graph")
    bags: list[frozenset[int]] = []
    parent: list[int] = []
    trace: list[TraceStep] = []
    k_seen = [0]

    def new_node(bag: frozenset[int], par: int) -> int:
        bags.append(bag)
        parent.append(par)
        return len(bags) - 1

    def build(part: list[int], attached: frozenset[int], par: int, depth: int) -> None:
        if len(part) <= max(1, k_seen[0]):
            new_node(attached | frozenset(part), par)
            trace.append(TraceStep(depth, len(part), len(attached), 0, True))
            return
        sub = g.induced_subgraph(part)
        sep = sep_provider(sub)
        verdict = validate_separator(sub, sep)
        if not verdict.balanced:
            raise CertificationError(
                f"separator provider returned {verdict.status} at depth {depth}: {verdict.reason}"
            )
        k_seen[0] = max(k_seen[0], sep.order)
        cut = frozenset(sub.origin[v] for v in sep.cut)
        only_a, only_b = sep.sides()
        node = new_node(attached | cut, par)
        trace.append(TraceStep(depth, len(part), len(attached), sep.order, False))
        for side in (only_a, only_b):
            if side:
                build(sorted(sub.origin[v] for v in side), attached | cut, node, depth + 1)

    build(list(g.vertices()), frozenset(), -1, 0)
    td = TreeDecomposition(tuple(bags), tuple(parent))
    verdict = validate_decomposition(g, td)
    if not verdict.valid:
        raise InvariantError(f"recursive construction produced an invalid decomposition: {verdict.reason}")
    return RecursiveDecomposition(td, tuple(trace), g.n)


@dataclass(frozen=True)
class Theorem6Report:
    k: int
    tw: int
    ratio: Fraction
    holds: bool
    witness: tuple[int, ...]


def check_theorem6(g: Graph, subgraph_cap: int = 12, tw_cap: int = EXACT_CAP) -> Theorem6Report:
    """Compare exact treewidth against 105 times the subgraph separator bound."""
    k, witness, _ = subgraph_separator_bound(g, cap=subgraph_cap)
    tw, _ = treewidth_exact(g, cap=tw_cap)
    return Theorem6Report(k, tw, Fraction(tw, k), tw <= SEPARATOR_TW_FACTOR * k, witness)


def degree3_sparsifier_oracle(
    g: Graph, cap: int = SPARSIFIER_CAP, max_states: int = SPARSIFIER_STATES
) -> tuple[Graph, int]:
    """Maximum-treewidth spanning subgraph of maximum degree at most 3.

    Branches on one undecided edge at a time (keep / delete) at a vertex of
    degree > 3, forcing deletions once a vertex keeps three edges.  The
    treewidth of kept + undecided edges bounds every completion, so
    branches that cannot beat the incumbent are cut.  Returns the subgraph
    (same vertex set) and its exact treewidth.

    Raises RefusalError when the search would visit more than
    ``max_states`` states (dense graphs on 9-10 vertices).
    """
    if g.n > cap:
        raise RefusalError(f"degree-3 sparsifier oracle refused: n={g.n} exceeds cap {cap}")
    if g.n == 0:
        raise DomainError("empty graph")

    def tw_of(edges: frozenset) -> int:
        return treewidth_exact(Graph(g.n, edges))[0]

    if g.max_degree <= 3:
        return g.edge_subgraph(g.edges), tw_of(g.edges)

    ceiling = tw_of(g.edges)
    if g.n <= 7:
        # A subcubic graph on <= 7 vertices is too sparse to contain any of
        # K5, the octahedron, V8 or the pentagonal prism as a minor.
        ceiling = min(ceiling, 3)
    greedy = _greedy_subcubic(g)
    best = [tw_of(greedy), greedy]
    visited: set[tuple[frozenset, frozenset]] = set()

    def degrees(edges) -> list[int]:
        deg = [0] * g.n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def search(kept: frozenset, undecided: tuple) -> None:
        if best[0] >= ceiling:
            return
        current = kept | frozenset(undecided)
        if (kept, current) in visited:
            return
        visited.add((kept, current))
        if len(visited) > max_states:
            raise RefusalError(
                f"degree-3 sparsifier search exceeded {max_states} states (n={g.n}, m={g.m})"
            )
        deg = degrees(current)
        if max(deg, default=0) <= 3:
            t = tw_of(current)
            if t > best[0]:
                best[0], best[1] = t, current
            return
        if tw_of(current) <= best[0]:
            return
        v = max(range(g.n), key=lambda x: (deg[x], -x))
        e = next(e for e in undecided if v in e)
        rest = tuple(x for x in undecided if x != e)
        kept_deg = degrees(kept)
        if kept_deg[e[0]] < 3 and kept_deg[e[1]] < 3:
            new_kept = kept | {e}
            kd = degrees(new_kept)
            full = {x for x in e if kd[x] == 3}
            search(new_kept, tuple(x for x in rest if not (set(x) & full)))
        search(kept, rest)

    search(frozenset(), tuple(sorted(g.edges)))
    h = g.edge_subgraph(best[1])
    return h, best[0]


def _greedy_subcubic(g: Graph) -> frozenset:
    deg = [0] * g.n
    kept = set()
    for u, v in g.sorted_edges:
        if deg[u] < 3 and deg[v] < 3:
            kept.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return frozenset(kept)
