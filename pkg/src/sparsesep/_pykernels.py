"""Pure-Python versions of the exhaustive-search kernels.

Graphs are passed as a sequence of neighbourhood bitmasks.  Every function
here has a twin in ``_kernels.pyx`` with the same signature, iteration
order and tie-breaking, so the two backends return identical results.
"""

from __future__ import annotations

from array import array
from itertools import combinations

BACKEND = "python"


def reach(adj, start: int, through: int, depth: int) -> int:
    """Vertices outside ``through`` reachable from ``start`` along paths of
    length <= ``depth`` whose internal vertices all lie in ``through``.

    ``depth < 0`` means unbounded.  ``start`` itself is never reported.
    """
    visited = 1 << start
    frontier = visited
    counted = 0
    step = 0
    while frontier and (depth < 0 or step < depth):
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= adj[low.bit_length() - 1]
            f ^= low
        new = nb & ~visited
        visited |= new
        counted |= new & ~through
        frontier = new & through
        step += 1
    return counted


def packable(adj, n: int, cut: int) -> bool:
    """Can the components of G - cut be split into two sides of size <= 2n/3?"""
    full = (1 << n) - 1
    rest = full & ~cut
    sums = 1
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            nb = 0
            f = frontier
            while f:
                low = f & -f
                nb |= adj[low.bit_length() - 1]
                f ^= low
            new = nb & rest & ~comp
            comp |= new
            frontier = new
        rest &= ~comp
        sums |= sums << comp.bit_count()
    lim = (2 * n) // 3
    remaining = n - cut.bit_count()
    lo = max(0, remaining - lim)
    if lim < lo:
        return False
    window = ((1 << (lim + 1)) - 1) & ~((1 << lo) - 1)
    return bool(sums & window)


def separator_search(adj, n: int, max_order: int) -> int:
    """Lexicographically first cut set of minimum size <= max_order whose
    complement's components pack into a balanced split; -1 if none."""
    for k in range(0, min(max_order, n) + 1):
        for combo in combinations(range(n), k):
            cut = 0
            for v in combo:
                cut |= 1 << v
            if packable(adj, n, cut):
                return cut
    return -1


def treewidth_dp(adj, n: int):
    """Exact treewidth by dynamic programming over vertex subsets.

    Returns ``(width, elimination_order)``.
    """
    if n == 0:
        return -1, []
    size = 1 << n
    table = array("b", bytes(size))
    choice = array("b", bytes(size))
    table[0] = -1
    for s in range(1, size):
        best = 127
        best_v = -1
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            prev = s ^ low
            q = reach(adj, v, prev, -1).bit_count()
            val = table[prev] if table[prev] > q else q
            if val < best:
                best = val
                best_v = v
        table[s] = best
        choice[s] = best_v
    order = []
    s = size - 1
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return table[size - 1], order


def strong_col_dp(adj, n: int, r: int):
    """Minimum over linear orders of the max strong r-reach count (self included).

    Returns ``(value, order)`` with ``order[0]`` the smallest vertex.
    """
    if n == 0:
        return 0, []
    size = 1 << n
    table = array("b", bytes(size))
    choice = array("b", bytes(size))
    for t in range(1, size):
        best = 127
        best_u = -1
        rest = t
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            rest ^= low
            later = t ^ low
            cnt = 1 + reach(adj, u, later, r).bit_count()
            val = table[later] if table[later] > cnt else cnt
            if val < best:
                best = val
                best_u = u
        table[t] = best
        choice[t] = best_u
    order = []
    t = size - 1
    while t:
        u = choice[t]
        order.append(u)
        t ^= 1 << u
    return table[size - 1], order


def min_vertex_expansion(adj, n: int):
    """Minimum |N(S)|/|S| over nonempty S with 2|S| <= n.

    Returns ``(num, den, mask)`` for the first minimiser in increasing mask
    order; ``den == 0`` when no admissible S exists.
    """
    best_num, best_den, best_mask = 0, 0, 0
    if n < 2:
        return best_num, best_den, best_mask
    size = 1 << n
    nb = array("Q", bytes(8 * size))
    half = n // 2
    for s in range(1, size):
        k = s.bit_count()
        if k > half:
            continue
        low = s & -s
        nb[s] = nb[s ^ low] | adj[low.bit_length() - 1]
        out = (nb[s] & ~s).bit_count()
        if best_den == 0 or out * best_den < best_num * k:
            best_num, best_den, best_mask = out, k, s
    return best_num, best_den, best_mask
