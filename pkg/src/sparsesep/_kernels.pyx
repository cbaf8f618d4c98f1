# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive-search kernels.

Mirrors ``_pykernels`` function for function: same arguments, same
iteration order, same tie-breaking.  Graphs arrive as sequences of Python
int neighbourhood masks and are copied into uint64 arrays (n <= 63).
"""

from libc.stdint cimport uint8_t, int8_t, uint64_t
from libc.stdlib cimport malloc, calloc, free

BACKEND = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _pop(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int _ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef uint64_t* _load(adj, int n) except NULL:
    if n > 63:
        raise ValueError("compiled kernels support at most 63 vertices")
    cdef uint64_t* out = <uint64_t*> malloc((n + 1) * sizeof(uint64_t))
    if out == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        out[i] = <uint64_t> adj[i]
    return out


cdef inline uint64_t _union_adj(const uint64_t* adj, uint64_t s) noexcept nogil:
    cdef uint64_t nb = 0
    while s:
        nb |= adj[_ctz(s)]
        s &= s - 1
    return nb


cdef uint64_t _reach(const uint64_t* adj, int start, uint64_t through, int depth) noexcept nogil:
    cdef uint64_t visited = (<uint64_t> 1) << start
    cdef uint64_t frontier = visited
    cdef uint64_t counted = 0
    cdef uint64_t new
    cdef int step = 0
    while frontier and (depth < 0 or step < depth):
        new = _union_adj(adj, frontier) & ~visited
        visited |= new
        counted |= new & ~through
        frontier = new & through
        step += 1
    return counted


cdef bint _packable(const uint64_t* adj, int n, uint64_t cut) noexcept nogil:
    cdef uint64_t full = ((<uint64_t> 1) << n) - 1
    cdef uint64_t rest = full & ~cut
    cdef uint64_t sums = 1
    cdef uint64_t comp, frontier, new, window
    cdef int lim, remaining, lo
    while rest:
        comp = rest & (~rest + 1)
        frontier = comp
        while frontier:
            new = _union_adj(adj, frontier) & rest & ~comp
            comp |= new
            frontier = new
        rest &= ~comp
        sums |= sums << _pop(comp)
    lim = (2 * n) // 3
    remaining = n - _pop(cut)
    lo = remaining - lim
    if lo < 0:
        lo = 0
    if lim < lo:
        return False
    window = (((<uint64_t> 1) << (lim + 1)) - 1) & ~(((<uint64_t> 1) << lo) - 1)
    return (sums & window) != 0


def reach(adj, int start, through, int depth):
    cdef int n = len(adj)
    cdef uint64_t* a = _load(adj, n)
    cdef uint64_t res
    try:
        res = _reach(a, start, <uint64_t> through, depth)
    finally:
        free(a)
    return res


def packable(adj, int n, cut):
    cdef uint64_t* a = _load(adj, n)
    cdef bint res
    try:
        res = _packable(a, n, <uint64_t> cut)
    finally:
        free(a)
    return bool(res)


def separator_search(adj, int n, int max_order):
    cdef uint64_t* a = _load(adj, n)
    cdef int* idx = <int*> malloc((n + 1) * sizeof(int))
    cdef int k, i, j, top
    cdef uint64_t cut
    cdef long long found = -1
    if idx == NULL:
        free(a)
        raise MemoryError()
    if max_order > n:
        max_order = n
    try:
        with nogil:
            for k in range(0, max_order + 1):
                for i in range(k):
                    idx[i] = i
                while True:
                    cut = 0
                    for i in range(k):
                        cut |= (<uint64_t> 1) << idx[i]
                    if _packable(a, n, cut):
                        found = <long long> cut
                        break
                    # advance to the next combination in lexicographic order
                    i = k - 1
                    while i >= 0 and idx[i] == n - k + i:
                        i -= 1
                    if i < 0:
                        break
                    idx[i] += 1
                    for j in range(i + 1, k):
                        idx[j] = idx[j - 1] + 1
                if found >= 0:
                    break
    finally:
        free(idx)
        free(a)
    return found


def treewidth_dp(adj, int n):
    if n == 0:
        return -1, []
    if n > 30:
        raise ValueError("subset DP limited to 30 vertices")
    cdef uint64_t* a = _load(adj, n)
    cdef uint64_t size = (<uint64_t> 1) << n
    cdef int8_t* table = <int8_t*> malloc(size * sizeof(int8_t))
    cdef int8_t* choice = <int8_t*> malloc(size * sizeof(int8_t))
    cdef uint64_t s, rest, prev
    cdef int v, q, val, best, best_v
    if table == NULL or choice == NULL:
        free(a); free(table); free(choice)
        raise MemoryError()
    try:
        table[0] = -1
        with nogil:
            for s in range(1, size):
                best = 127
                best_v = -1
                rest = s
                while rest:
                    v = _ctz(rest)
                    rest &= rest - 1
                    prev = s ^ ((<uint64_t> 1) << v)
                    q = _pop(_reach(a, v, prev, -1))
                    val = table[prev] if table[prev] > q else q
                    if val < best:
                        best = val
                        best_v = v
                table[s] = <int8_t> best
                choice[s] = <int8_t> best_v
        order = []
        s = size - 1
        while s:
            v = choice[s]
            order.append(v)
            s ^= (<uint64_t> 1) << v
        order.reverse()
        width = table[size - 1]
    finally:
        free(a); free(table); free(choice)
    return width, order


def strong_col_dp(adj, int n, int r):
    if n == 0:
        return 0, []
    if n > 30:
        raise ValueError("subset DP limited to 30 vertices")
    cdef uint64_t* a = _load(adj, n)
    cdef uint64_t size = (<uint64_t> 1) << n
    cdef int8_t* table = <int8_t*> calloc(size, sizeof(int8_t))
    cdef int8_t* choice = <int8_t*> calloc(size, sizeof(int8_t))
    cdef uint64_t t, rest, later
    cdef int u, cnt, val, best, best_u
    if table == NULL or choice == NULL:
        free(a); free(table); free(choice)
        raise MemoryError()
    try:
        with nogil:
            for t in range(1, size):
                best = 127
                best_u = -1
                rest = t
                while rest:
                    u = _ctz(rest)
                    rest &= rest - 1
                    later = t ^ ((<uint64_t> 1) << u)
                    cnt = 1 + _pop(_reach(a, u, later, r))
                    val = table[later] if table[later] > cnt else cnt
                    if val < best:
                        best = val
                        best_u = u
                table[t] = <int8_t> best
                choice[t] = <int8_t> best_u
        order = []
        t = size - 1
        while t:
            u = choice[t]
            order.append(u)
            t ^= (<uint64_t> 1) << u
        value = table[size - 1]
    finally:
        free(a); free(table); free(choice)
    return value, order


def min_vertex_expansion(adj, int n):
    if n < 2:
        return 0, 0, 0
    if n > 30:
        raise ValueError("expansion enumeration limited to 30 vertices")
    cdef uint64_t* a = _load(adj, n)
    cdef uint64_t size = (<uint64_t> 1) << n
    cdef uint64_t* nb = <uint64_t*> calloc(size, sizeof(uint64_t))
    cdef uint64_t s, low
    cdef long long best_num = 0, best_den = 0
    cdef uint64_t best_mask = 0
    cdef int k, out
    cdef int half = n // 2
    if nb == NULL:
        free(a)
        raise MemoryError()
    try:
        with nogil:
            for s in range(1, size):
                k = _pop(s)
                if k > half:
                    continue
                low = s & (~s + 1)
                nb[s] = nb[s ^ low] | a[_ctz(low)]
                out = _pop(nb[s] & ~s)
                if best_den == 0 or out * best_den < best_num * k:
                    best_num = out
                    best_den = k
                    best_mask = s
    finally:
        free(a); free(nb)
    return best_num, best_den, best_mask
