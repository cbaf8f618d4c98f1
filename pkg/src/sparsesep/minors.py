"""Depth-r minor models: validation, contraction, densest-minor search.

A model assigns each minor vertex a connected branch set of host vertices
with a center from which every member is within distance r inside the
induced branch subgraph.  Minor edges carry a host edge witness.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sparsesep.errors import DomainError, RefusalError
from sparsesep.graph import Graph, eccentricity_radius

EXACT_CAP = 9

MinorEdge = tuple[int, int]


@dataclass(frozen=True)
class MinorModel:
    r: int
    branch_sets: tuple[frozenset[int], ...]
    centers: tuple[int, ...]
    minor_edges: frozenset[MinorEdge]
    witnesses: Mapping[MinorEdge, tuple[int, int]] = field(default_factory=dict, hash=False)

    @property
    def k(self) -> int:
        return len(self.branch_sets)

    def with_depth(self, r: int) -> MinorModel:
        return MinorModel(r, self.branch_sets, self.centers, self.minor_edges, dict(self.witnesses))

    def owner(self) -> dict[int, int]:
        """Host vertex -> minor vertex, for covered host vertices."""
        return {v: i for i, s in enumerate(self.branch_sets) for v in s}


@dataclass(frozen=True)
class ModelVerdict:
    valid: bool
    reason: str = ""


def realize_edges(g: Graph, sets: Sequence[Iterable[int]]) -> dict[MinorEdge, tuple[int, int]]:
    """Every realisable minor edge with its lexicographically first host witness.

    The witness of minor edge (i, j), i < j, is a host edge (u, v) with u in
    set i and v in set j.
    """
    owner = {}
    for i, s in enumerate(sets):
        for v in s:
            owner[v] = i
    out: dict[MinorEdge, tuple[int, int]] = {}
    for a, b in g.sorted_edges:
        i, j = owner.get(a), owner.get(b)
        if i is None or j is None or i == j:
            continue
        if i < j:
            key, wit = (i, j), (a, b)
        else:
            key, wit = (j, i), (b, a)
        if key not in out or wit < out[key]:
            out[key] = wit
    return out


def build_model(
    g: Graph,
    r: int,
    branch_sets: Sequence[Iterable[int]],
    centers: Sequence[int] | None = None,
    minor_edges: Iterable[MinorEdge] | None = None,
) -> MinorModel:
    """Assemble a model, filling in centers and (by default) all realisable edges."""
    sets = tuple(frozenset(s) for s in branch_sets)
    if centers is None:
        centers = tuple(eccentricity_radius(g, s)[0] for s in sets)
    realizable = realize_edges(g, sets)
    if minor_edges is None:
        edges = frozenset(realizable)
    else:
        edges = frozenset((min(e), max(e)) for e in minor_edges)
    witnesses = {e: realizable[e] for e in edges if e in realizable}
    return MinorModel(r, sets, tuple(centers), edges, witnesses)


def identity_model(g: Graph) -> MinorModel:
    return build_model(g, 0, [[v] for v in g.vertices()], list(g.vertices()))


def validate_model(g: Graph, m: MinorModel) -> ModelVerdict:
    if m.r < 0:
        return ModelVerdict(False, f"negative depth {m.r}")
    if len(m.centers) != m.k:
        return ModelVerdict(False, "one center per branch set required")
    seen: dict[int, int] = {}
    for i, s in enumerate(m.branch_sets):
        if not s:
            return ModelVerdict(False, f"branch set {i} is empty")
        for v in s:
            if not (0 <= v < g.n):
                return ModelVerdict(False, f"branch set {i} holds unknown vertex {v}")
            if v in seen:
                return ModelVerdict(False, f"disjointness: vertex {v} in branch sets {seen[v]} and {i}")
            seen[v] = i
    for i, s in enumerate(m.branch_sets):
        c = m.centers[i]
        if c not in s:
            return ModelVerdict(False, f"center {c} not in branch set {i}")
        dist = g.bfs_distances(c, s)
        if len(dist) != len(s):
            return ModelVerdict(False, f"branch set {i} is not connected")
        ecc = max(dist.values())
        if ecc > m.r:
            return ModelVerdict(False, f"radius exceeded: branch set {i} has eccentricity {ecc} > {m.r}")
    for e in sorted(m.minor_edges):
        i, j = e
        if not (0 <= i < j < m.k):
            return ModelVerdict(False, f"minor edge {e} is not a normalized pair of minor vertices")
        w = m.witnesses.get(e)
        if w is None:
            return ModelVerdict(False, f"minor edge {e} has no witness")
        a, b = w
        in_range = 0 <= a < g.n and 0 <= b < g.n and a != b
        if not in_range or not g.has_edge(a, b):
            return ModelVerdict(False, f"witness {a}-{b} of minor edge {e} is not a host edge")
        if not ((a in m.branch_sets[i] and b in m.branch_sets[j]) or (a in m.branch_sets[j] and b in m.branch_sets[i])):
            return ModelVerdict(False, f"witness {a}-{b} does not join branch sets {i} and {j}")
    extra = set(m.witnesses) - set(m.minor_edges)
    if extra:
        return ModelVerdict(False, f"witness given for non-edge {min(extra)}")
    return ModelVerdict(True)


def _require_valid(g: Graph, m: MinorModel) -> None:
    verdict = validate_model(g, m)
    if not verdict.valid:
        raise DomainError(f"invalid minor model: {verdict.reason}")


def contract(g: Graph, m: MinorModel) -> Graph:
    """The minor graph: one vertex per branch set, exactly ``m.minor_edges``."""
    _require_valid(g, m)
    return Graph(m.k, m.minor_edges)


def _bfs_parents(g: Graph, center: int, within: frozenset[int]) -> dict[int, int]:
    parent = {center: -1}
    queue = deque([center])
    while queue:
        x = queue.popleft()
        for y in sorted(g.adjacency[x]):
            if y in within and y not in parent:
                parent[y] = x
                queue.append(y)
    return parent


@dataclass(frozen=True)
class HostSubgraph:
    """A host subgraph realising (part of) a minor, with the restricted model.

    ``graph.origin`` maps local ids to host ids; ``model`` is expressed in
    local ids and keeps the minor-vertex numbering of ``minor_vertices``.
    """

    graph: Graph
    model: MinorModel
    minor_vertices: tuple[int, ...]


def host_subgraph(
    g: Graph,
    m: MinorModel,
    minor_vertices: Iterable[int] | None = None,
    minor_edges: Iterable[MinorEdge] | None = None,
    trim: bool = False,
) -> HostSubgraph:
    """Host-side subgraph realising the selected minor vertices and edges.

    Each branch set contributes a BFS tree from its center; witness edges
    join the trees.  With ``trim`` only the tree paths from the center to
    witness endpoints are kept, so a minor vertex of degree d uses at most
    d*r + 1 host vertices.
    """
    _require_valid(g, m)
    chosen = sorted(range(m.k) if minor_vertices is None else set(minor_vertices))
    chosen_set = set(chosen)
    if minor_edges is None:
        edges = sorted(e for e in m.minor_edges if e[0] in chosen_set and e[1] in chosen_set)
    else:
        edges = sorted((min(e), max(e)) for e in minor_edges)
        bad = [e for e in edges if e not in m.minor_edges or not set(e) <= chosen_set]
        if bad:
            raise DomainError(f"minor edges not in the model: {bad[:3]}")
    endpoints: dict[int, set[int]] = {u: set() for u in chosen}
    for e in edges:
        a, b = m.witnesses[e]
        i, j = e
        if a in m.branch_sets[i]:
            endpoints[i].add(a)
            endpoints[j].add(b)
        else:
            endpoints[i].add(b)
            endpoints[j].add(a)
    host_vertices: set[int] = set()
    host_edges: set[tuple[int, int]] = set()
    local_sets = {}
    for u in chosen:
        c = m.centers[u]
        parent = _bfs_parents(g, c, m.branch_sets[u])
        targets = endpoints[u] if trim else set(m.branch_sets[u])
        keep = {c}
        for t in targets:
            x = t
            while x != c and x not in keep:
                keep.add(x)
                x = parent[x]
        for x in keep:
            if x != c:
                host_edges.add((min(x, parent[x]), max(x, parent[x])))
        local_sets[u] = keep
        host_vertices |= keep
    for e in edges:
        a, b = m.witnesses[e]
        host_edges.add((min(a, b), max(a, b)))
    order = sorted(host_vertices)
    index = {v: i for i, v in enumerate(order)}
    graph = Graph.from_edges(len(order), [(index[a], index[b]) for a, b in host_edges], order)
    renumber = {u: i for i, u in enumerate(chosen)}
    sets = [frozenset(index[x] for x in local_sets[u]) for u in chosen]
    centers = [index[m.centers[u]] for u in chosen]
    local_edges = frozenset((renumber[i], renumber[j]) for i, j in edges)
    witnesses = {}
    for e in edges:
        a, b = m.witnesses[e]
        witnesses[(renumber[e[0]], renumber[e[1]])] = (index[a], index[b])
    model = MinorModel(m.r, tuple(sets), tuple(centers), local_edges, witnesses)
    return HostSubgraph(graph, model, tuple(chosen))


def minor_density(k: int, edges: int) -> Fraction:
    return Fraction(2 * edges, k) if k else Fraction(0)


def _feasible_sets(g: Graph, r: int) -> list[list[tuple[int, int]]]:
    """For each vertex v, the (mask, center) of every connected set with
    minimum vertex v and radius <= r, in increasing mask order."""
    n = g.n
    adj = g.adj_masks
    out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        best_c = -1
        rest = mask
        while rest:
            bit = rest & -rest
            c = bit.bit_length() - 1
            rest ^= bit
            seen = bit
            frontier = bit
            ecc = 0
            while frontier:
                nb = 0
                f = frontier
                while f:
                    b = f & -f
                    nb |= adj[b.bit_length() - 1]
                    f ^= b
                new = nb & mask & ~seen
                if not new:
                    break
                ecc += 1
                seen |= new
                frontier = new
            if seen != mask:
                break  # not connected; no center works
            if ecc <= r:
                best_c = c
                break
        if best_c >= 0:
            out[low].append((mask, best_c))
    return out


def _exact_densest(g: Graph, r: int) -> tuple[list[int], list[int]]:
    n = g.n
    adj = g.adj_masks
    feasible = _feasible_sets(g, r)
    best = [Fraction(-1), [], []]
    chosen: list[int] = []
    nbrs: list[int] = []
    centers: list[int] = []

    def rec(i: int, used: int, edges: int) -> None:
        if i == n:
            if chosen:
                d = Fraction(2 * edges, len(chosen))
                if d > best[0]:
                    best[0], best[1], best[2] = d, chosen[:], centers[:]
            return
        if used >> i & 1:
            rec(i + 1, used, edges)
            return
        for mask, c in feasible[i]:
            if mask & used:
                continue
            nb = 0
            rest = mask
            while rest:
                b = rest & -rest
                nb |= adj[b.bit_length() - 1]
                rest ^= b
            added = sum(1 for s in chosen if nb & s)
            chosen.append(mask)
            nbrs.append(nb)
            centers.append(c)
            rec(i + 1, used | mask, edges + added)
            chosen.pop()
            nbrs.pop()
            centers.pop()
        rec(i + 1, used, edges)

    rec(0, 0, 0)
    return best[1], best[2]


def _greedy_densest(g: Graph, r: int) -> tuple[list[list[int]], list[int]]:
    """Greedy ball contraction followed by peeling to a densest sub-minor.

    Minor vertices are named by their center.  Each round tries, for every
    uncontracted vertex c (lowest id first) and every radius 1..r, to
    contract the BFS ball around c in the graph of uncontracted vertices;
    the move with the largest positive density gain is applied.
    """
    n = g.n
    adj = g.adj_masks
    madj = list(adj)  # minor adjacency over representative ids
    alive = (1 << n) - 1
    free = alive  # host vertices still forming singleton branch sets
    members = {v: [v] for v in range(n)}
    k, e = n, g.m

    while r > 0:
        best_gain = Fraction(0)
        best_move = None
        current = minor_density(k, e)
        for c in range(n):
            if not free >> c & 1:
                continue
            ball = 1 << c
            frontier = ball
            for _ in range(r):
                nb = 0
                f = frontier
                while f:
                    b = f & -f
                    nb |= adj[b.bit_length() - 1]
                    f ^= b
                new = nb & free & ~ball
                if not new:
                    break
                ball |= new
                frontier = new
                size = ball.bit_count()
                inner = 0
                cross = 0
                union = 0
                rest = ball
                while rest:
                    b = rest & -rest
                    u = b.bit_length() - 1
                    rest ^= b
                    inner += (madj[u] & ball).bit_count()
                    cross += (madj[u] & ~ball).bit_count()
                    union |= madj[u]
                union &= ~ball
                e2 = e - inner // 2 - cross + union.bit_count()
                k2 = k - size + 1
                gain = minor_density(k2, e2) - current
                if gain > best_gain:
                    best_gain = gain
                    best_move = (c, ball, union, k2, e2)
        if best_move is None:
            break
        c, ball, union, k, e = best_move
        rest = union
        while rest:
            b = rest & -rest
            x = b.bit_length() - 1
            rest ^= b
            madj[x] = (madj[x] & ~ball) | (1 << c)
        group = []
        rest = ball
        while rest:
            b = rest & -rest
            u = b.bit_length() - 1
            rest ^= b
            group.extend(members.pop(u))
            if u != c:
                madj[u] = 0
        madj[c] = union
        members[c] = sorted(group)
        alive &= ~ball | (1 << c)
        free &= ~ball

    # peel minimum-degree minor vertices, remembering the densest stage
    reps = sorted(members)
    live = set(reps)
    deg = {x: (madj[x] & alive).bit_count() for x in reps}
    edges = sum(deg.values()) // 2
    best_density = minor_density(len(live), edges)
    best_live = set(live)
    while len(live) > 1:
        x = min(live, key=lambda y: (deg[y], y))
        live.discard(x)
        edges -= deg[x]
        for y in live:
            if madj[x] >> y & 1:
                deg[y] -= 1
        d = minor_density(len(live), edges)
        if d > best_density:
            best_density, best_live = d, set(live)
    kept = sorted(best_live)
    return [members[x] for x in kept], kept


def densest_shallow_minor(
    g: Graph, r: int, mode: str = "greedy", cap: int = EXACT_CAP
) -> tuple[MinorModel, Fraction]:
    """Densest depth-r minor found, with all realisable minor edges.

    ``exact`` enumerates every family of disjoint radius-feasible branch
    sets (n <= cap); ``greedy`` has no optimality claim.
    """
    if r < 0:
        raise DomainError(f"depth must be >= 0, got {r}")
    if g.n == 0:
        raise DomainError("empty graph")
    if mode == "exact":
        if g.n > cap:
            raise RefusalError(f"exact densest-minor search refused: n={g.n} exceeds cap {cap}")
        masks, centers = _exact_densest(g, r)
        sets = [[v for v in g.vertices() if mask >> v & 1] for mask in masks]
    elif mode == "greedy":
        sets, centers = _greedy_densest(g, r)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    order = sorted(range(len(sets)), key=lambda i: min(sets[i]))
    sets = [sets[i] for i in order]
    centers = [centers[i] for i in order]
    model = build_model(g, r, sets, centers)
    return model, minor_density(model.k, len(model.minor_edges))


@dataclass(frozen=True)
class ProfileEntry:
    r: int
    density: Fraction
    model: MinorModel


def expansion_profile(g: Graph, r_max: int, mode: str = "greedy", cap: int = EXACT_CAP) -> list[ProfileEntry]:
    """Best depth-r minor density for r = 0..r_max, forced nondecreasing.

    A depth-r model is also a depth-(r+1) model, so a weaker result at
    larger r is replaced by the previous witness.
    """
    if r_max < 0:
        raise DomainError(f"r_max must be >= 0, got {r_max}")
    out: list[ProfileEntry] = []
    for r in range(r_max + 1):
        model, density = densest_shallow_minor(g, r, mode, cap)
        if out and out[-1].density > density:
            model, density = out[-1].model.with_depth(r), out[-1].density
        out.append(ProfileEntry(r, density, model))
    return out


def random_ball_packing(g: Graph, r: int, seed: int, skip_prob: float = 0.2) -> MinorModel:
    """Random depth-r model: disjoint BFS balls of random radius <= r.

    Vertices are visited in a seeded random order; each still-unused vertex
    is either skipped or grows a ball in the graph of unused vertices.
    """
    rng = random.Random(seed)
    order = list(g.vertices())
    rng.shuffle(order)
    unused = set(order)
    sets, centers = [], []
    for c in order:
        if c not in unused:
            continue
        if rng.random() < skip_prob:
            continue
        radius = rng.randint(0, r)
        dist = g.bfs_distances(c, unused)
        ball = sorted(v for v, d in dist.items() if d <= radius)
        unused -= set(ball)
        sets.append(ball)
        centers.append(c)
    if not sets:
        sets, centers = [[order[0]]], [order[0]]
    model = build_model(g, r, sets, centers)
    # keep a random subset of the realisable minor edges
    edges = [e for e in sorted(model.minor_edges) if rng.random() < 0.9]
    return build_model(g, r, sets, centers, edges)
