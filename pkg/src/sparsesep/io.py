"""Text formats for graphs, separators, decompositions, models and orders.

Graph edge list: first line ``n m``, then ``u v`` lines, 0-based.  DIMACS:
``p edge n m`` header and ``e u v`` lines, 1-based.  Blank lines and lines
starting with ``#`` (or ``c`` in DIMACS) are ignored.

Tree decompositions use the PACE layout: ``s td <bags> <width+1> <n>``,
``b <id> v ...`` (bag ids and vertices 1-based), then one ``x y`` line per
tree edge.
"""

from __future__ import annotations

from collections import deque
from pathlib import Path
from typing import Iterable, Mapping

from sparsesep.errors import DomainError
from sparsesep.graph import Graph
from sparsesep.minors import MinorModel
from sparsesep.orders import LinearOrder
from sparsesep.separators import Separator
from sparsesep.treewidth import TreeDecomposition


def _lines(text: str, comments: tuple[str, ...] = ("#",)) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(comments):
            continue
        out.append((lineno, line.split()))
    return out


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise DomainError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    rows = _lines(text)
    if not rows:
        raise DomainError("empty edge list")
    lineno, head = rows[0]
    if len(head) != 2:
        raise DomainError(f"line {lineno}: header must be 'n m'")
    n, m = _ints(head, lineno)
    edges = []
    for lineno, tok in rows[1:]:
        if len(tok) != 2:
            raise DomainError(f"line {lineno}: edge lines must be 'u v'")
        edges.append(tuple(_ints(tok, lineno)))
    if len(edges) != m:
        raise DomainError(f"header announces {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges)
    if g.m != m:
        raise DomainError("edge list contains duplicate edges")
    return g


def write_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> Graph:
    rows = _lines(text, ("#", "c"))
    n = None
    edges = []
    for lineno, tok in rows:
        if tok[0] == "p":
            if len(tok) != 4 or n is not None:
                raise DomainError(f"line {lineno}: malformed or repeated 'p edge n m' header")
            n, _ = _ints(tok[2:], lineno)
        elif tok[0] == "e":
            if n is None or len(tok) != 3:
                raise DomainError(f"line {lineno}: edge line before header or malformed")
            u, v = _ints(tok[1:], lineno)
            edges.append((u - 1, v - 1))
        else:
            raise DomainError(f"line {lineno}: unknown DIMACS record {tok[0]!r}")
    if n is None:
        raise DomainError("missing 'p edge n m' header")
    return Graph.from_edges(n, edges)


def read_graph(text: str) -> Graph:
    """Edge list or DIMACS, detected from the first record."""
    rows = _lines(text, ("#", "c"))
    if rows and rows[0][1][0] == "p":
        return read_dimacs(text)
    return read_edge_list(text)


def load_graph(path: str | Path) -> Graph:
    return read_graph(Path(path).read_text())


def write_separator(s: Separator) -> str:
    a = " ".join(map(str, sorted(s.a)))
    b = " ".join(map(str, sorted(s.b)))
    return f"A: {a}".rstrip() + "\n" + f"B: {b}".rstrip() + "\n"


def read_separator(text: str) -> Separator:
    sides: dict[str, list[int]] = {}
    for lineno, tok in _lines(text):
        key = tok[0]
        if key not in ("A:", "B:") or key in sides:
            raise DomainError(f"line {lineno}: expected one 'A:' and one 'B:' line")
        sides[key] = _ints(tok[1:], lineno)
    if set(sides) != {"A:", "B:"}:
        raise DomainError("separator needs both 'A:' and 'B:' lines")
    return Separator.of(sides["A:"], sides["B:"])


def write_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    for p, c in td.tree_edges():
        lines.append(f"{p + 1} {c + 1}")
    return "\n".join(lines) + "\n"


def read_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse a PACE tree decomposition; returns the decomposition and n.

    The header ``s <bags> <width+1> <n>`` without the ``td`` tag is also
    accepted.  Node 1 becomes the root.
    """
    rows = _lines(text, ("#", "c"))
    if not rows or rows[0][1][0] != "s":
        raise DomainError("missing 's td' header")
    lineno, head = rows[0]
    nums = head[2:] if len(head) > 1 and head[1] == "td" else head[1:]
    if len(nums) != 3:
        raise DomainError(f"line {lineno}: header must be 's td <bags> <width+1> <n>'")
    count, _, n = _ints(nums, lineno)
    bags: list[frozenset[int] | None] = [None] * count
    adj: list[list[int]] = [[] for _ in range(count)]
    edges = 0
    for lineno, tok in rows[1:]:
        if tok[0] == "b":
            ids = _ints(tok[1:], lineno)
            if not ids or not (1 <= ids[0] <= count) or bags[ids[0] - 1] is not None:
                raise DomainError(f"line {lineno}: bad or repeated bag id")
            bags[ids[0] - 1] = frozenset(v - 1 for v in ids[1:])
        else:
            x, y = _ints(tok, lineno)
            if not (1 <= x <= count and 1 <= y <= count):
                raise DomainError(f"line {lineno}: tree edge references unknown bag")
            adj[x - 1].append(y - 1)
            adj[y - 1].append(x - 1)
            edges += 1
    if any(b is None for b in bags):
        raise DomainError("some bags are not listed")
    parent = [-2] * count
    if count:
        parent[0] = -1
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if parent[y] == -2:
                    parent[y] = x
                    queue.append(y)
    if edges != max(count - 1, 0) or -2 in parent:
        raise DomainError("tree edges do not form a tree")
    return TreeDecomposition(tuple(bags), tuple(parent)), n  # type: ignore[arg-type]


def write_model(m: MinorModel) -> str:
    lines = [f"r {m.r}"]
    for i, (s, c) in enumerate(zip(m.branch_sets, m.centers)):
        lines.append(f"m {i} c {c} : " + " ".join(map(str, sorted(s))))
    for e in sorted(m.minor_edges):
        u, v = m.witnesses[e]
        lines.append(f"e {e[0]} {e[1]} via {u} {v}")
    return "\n".join(lines) + "\n"


def read_model(text: str) -> MinorModel:
    r = None
    sets: dict[int, tuple[int, frozenset[int]]] = {}
    edges = set()
    witnesses = {}
    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "r" and len(tok) == 2:
            r = _ints(tok[1:], lineno)[0]
        elif kind == "m" and len(tok) >= 5 and tok[2] == "c" and tok[4] == ":":
            i, c = _ints([tok[1], tok[3]], lineno)
            sets[i] = (c, frozenset(_ints(tok[5:], lineno)))
        elif kind == "e" and len(tok) == 6 and tok[3] == "via":
            i, j, u, v = _ints([tok[1], tok[2], tok[4], tok[5]], lineno)
            key = (min(i, j), max(i, j))
            edges.add(key)
            witnesses[key] = (u, v) if i <= j else (v, u)
        else:
            raise DomainError(f"line {lineno}: unrecognised model record")
    if r is None:
        raise DomainError("missing 'r <depth>' line")
    if sorted(sets) != list(range(len(sets))):
        raise DomainError("minor vertex ids must be 0..k-1")
    ordered = [sets[i] for i in range(len(sets))]
    return MinorModel(r, tuple(s for _, s in ordered), tuple(c for c, _ in ordered), frozenset(edges), witnesses)


def write_order(order: LinearOrder) -> str:
    return " ".join(map(str, order.sequence)) + "\n"


def read_order(text: str) -> LinearOrder:
    rows = _lines(text)
    if len(rows) > 1:
        raise DomainError("an order is a single line of vertex ids")
    return LinearOrder.of(_ints(rows[0][1], rows[0][0]) if rows else [])


def write_kv(items: Mapping[str, object] | Iterable[tuple[str, object]]) -> str:
    pairs = items.items() if isinstance(items, Mapping) else items
    return "".join(f"{k}: {_fmt(v)}\n" for k, v in pairs)


def _fmt(v: object) -> str:
    if isinstance(v, (list, tuple, frozenset, set)):
        seq = sorted(v) if isinstance(v, (set, frozenset)) else v
        return " ".join(map(str, seq))
    if isinstance(v, float):
        return repr(v)
    return str(v)
