"""Corpus experiments emitting deterministic CSV tables.

Every table starts with a version comment line and ends with comment lines
carrying summary statistics, so two runs with equal inputs are
byte-identical.
"""

from __future__ import annotations

import csv
import io
import math
import random
import statistics
from dataclasses import dataclass
from fractions import Fraction

from sparsesep import __version__
from sparsesep.errors import DomainError, RefusalError
from sparsesep.generators import from_token, generate, gnp, grid
from sparsesep.graph import Graph
from sparsesep.minors import densest_shallow_minor, expansion_profile
from sparsesep.orders import EXACT_CAP as ORDER_CAP
from sparsesep.orders import best_order
from sparsesep.separators import EXACT_CAP as SEP_CAP
from sparsesep.separators import min_balanced_separator

SCHEMA = 1
HEADER = f"# sparse-sep-lab v{__version__} schema={SCHEMA}"


def _csv(header: list[str], rows: list[list[object]], trailer: list[str]) -> str:
    buf = io.StringIO()
    buf.write(HEADER + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else str(v) for v in row])
    for line in trailer:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def fit_exponent(ns: list[int], orders: list[int]) -> float | None:
    """Least-squares slope of log(order) against log(n); None when undefined."""
    pts = [(math.log(n), math.log(k)) for n, k in zip(ns, orders) if k and k > 0]
    if len(pts) < 2 or len({x for x, _ in pts}) < 2:
        return None
    slope, _ = statistics.linear_regression([x for x, _ in pts], [y for _, y in pts])
    return slope


@dataclass(frozen=True)
class GridRow:
    d: int
    side: int
    n: int
    mode: str
    order: int | None
    densities: tuple[Fraction | None, ...]


@dataclass(frozen=True)
class GridResult:
    rows: tuple[GridRow, ...]
    exponent: float | None
    r_max: int

    def to_csv(self) -> str:
        header = ["d", "side", "n", "sep_mode", "sep_order"] + [f"density_r{r}" for r in range(self.r_max + 1)]
        rows = [[row.d, row.side, row.n, row.mode, row.order, *row.densities] for row in self.rows]
        fit = "none" if self.exponent is None else f"{self.exponent:.6f}"
        return _csv(header, rows, [f"fit separator_exponent={fit}"])


def grid_experiment(
    d: int, sides: list[int], seed: int = 0, r_max: int = 2, exact_cap: int = SEP_CAP
) -> GridResult:
    """Separator orders and greedy expansion profiles on d-dimensional grids.

    Separators are exact while n <= exact_cap and heuristic beyond.  The
    seed is accepted for interface uniformity; grids are deterministic.
    """
    if d < 1 or not sides:
        raise DomainError("need d >= 1 and at least one side length")
    del seed
    rows = []
    for side in sides:
        g = grid(d, side)
        mode = "exact" if g.n <= exact_cap else "heuristic"
        try:
            order: int | None = min_balanced_separator(g, mode, cap=exact_cap).order
        except RefusalError:
            order = None
        try:
            profile = tuple(e.density for e in expansion_profile(g, r_max, "greedy"))
        except RefusalError:
            profile = (None,) * (r_max + 1)
        rows.append(GridRow(d, side, g.n, mode, order, profile))
    exponent = fit_exponent([r.n for r in rows if r.order], [r.order for r in rows if r.order])
    return GridResult(tuple(rows), exponent, r_max)


def parse_corpus(spec: str, seed: int = 0) -> list[tuple[str, Graph]]:
    """Comma-separated generator tokens, e.g. ``path:8,cycle:6,gnp:10:0.3``.

    Randomised tokens without an explicit seed use ``seed``.
    """
    out = []
    for token in spec.split(","):
        token = token.strip()
        if token:
            out.append((token, from_token(token, seed=seed)))
    if not out:
        raise DomainError("empty corpus specification")
    return out


def problem12_survey(corpus: list[tuple[str, Graph]], r_max: int, exact_cap: int = ORDER_CAP) -> str:
    """Per graph and r: col_r, wcol_r and the best shallow-minor density found.

    Orders are exact while n <= exact_cap, heuristic beyond.  Data only.
    """
    if r_max < 0:
        raise DomainError(f"r_max must be >= 0, got {r_max}")
    header = ["graph", "n", "m", "r", "order_mode", "col_r", "wcol_r", "minor_density"]
    rows = []
    for label, g in corpus:
        mode = "exact" if g.n <= exact_cap else "heuristic"
        for r in range(r_max + 1):
            _, col = best_order(g, r, "strong", mode, cap=exact_cap)
            _, wcol = best_order(g, r, "weak", mode, cap=exact_cap)
            _, density = densest_shallow_minor(g, r, "greedy")
            rows.append([label, g.n, g.m, r, mode, col, wcol, density])
    return _csv(header, rows, [])


def random_corpus(
    count: int, n_range: tuple[int, int], ps: tuple[float, ...], seed: int
) -> list[tuple[str, Graph]]:
    """Seeded G(n, p) graphs; each entry's own seed is drawn from ``seed``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        p = rng.choice(ps)
        s = rng.getrandbits(64)
        out.append((f"gnp:{n}:{p}:{s}", gnp(n, p, s)))
    return out


__all__ = [
    "GridResult",
    "GridRow",
    "HEADER",
    "fit_exponent",
    "generate",
    "grid_experiment",
    "parse_corpus",
    "problem12_survey",
    "random_corpus",
]
