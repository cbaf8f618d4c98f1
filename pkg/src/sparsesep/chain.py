"""Expansion bound f(r) and a checker for the separator-to-expansion proof chain.

A certificate fixes a host G, a depth-r minor F of G, an expander subgraph
H of F, optionally a subcubic subgraph H' of H of large treewidth, and the
host subgraph G' that realises H' (or H) before contraction.  The checker
re-validates every component and evaluates each inequality of the chain on
the measured quantities.  All logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sparsesep.errors import CertificationError, DomainError, RefusalError
from sparsesep.expanders import DENSITY_FACTOR, ExpansionCertificate, expander_subgraph
from sparsesep.graph import Graph, average_degree
from sparsesep.minors import (
    HostSubgraph,
    MinorModel,
    contract,
    densest_shallow_minor,
    host_subgraph,
    validate_model,
)
from sparsesep.treewidth import degree3_sparsifier_oracle, treewidth_upper_bound

REL_SLACK = 1e-9
STEP_B_FLOOR = Fraction(255, 256) * 10**8
SPARSIFIER_LIMIT = 10
EXPANDER_EXACT_LIMIT = 14


@dataclass(frozen=True)
class BoundParams:
    delta: float = 0.5
    C: float = 1.0
    c1: float = 1.0
    c2: float = 1.0
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not (0 < self.delta <= 1):
            raise DomainError(f"delta must lie in (0, 1], got {self.delta}")
        for name in ("C", "c1", "alpha", "beta"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        # c2 = 0 is allowed: it switches the log factor off, leaving c1 (r+1)^(1/delta)
        if not self.c2 >= 0:
            raise DomainError(f"c2 must be nonnegative, got {self.c2}")


def eval_bound(p: BoundParams, r: int) -> float:
    """f(r) = c1 (r+1)^(1/delta) ((1/delta) log2(r+3))^(c2/delta)."""
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r}")
    inv = 1.0 / p.delta
    return p.c1 * (r + 1) ** inv * (inv * math.log2(r + 3)) ** (p.c2 * inv)


@dataclass(frozen=True)
class ChainCertificate:
    g: Graph
    r: int
    model: MinorModel  # depth-r model of F in G
    f: Graph
    h_vertices: tuple[int, ...]  # vertices of F forming H
    h: Graph  # F[h_vertices], local ids
    h_prime: Graph | None  # spanning subgraph of H with max degree <= 3
    g_prime: HostSubgraph  # host realisation of H' (or H when H' is absent)
    expansion: ExpansionCertificate | None = field(default=None, compare=False)


@dataclass(frozen=True)
class StepVerdict:
    step: str
    status: str  # "pass" | "fail" | "n/a"
    lhs: object
    rhs: object
    note: str = ""


def build_chain_certificate(
    g: Graph, r: int, mode: str = "greedy", model: MinorModel | None = None, seed: int = 0
) -> ChainCertificate:
    """Assemble every object of the chain from primitives.

    H' is computed by the degree-3 oracle when |V(H)| is small enough and
    the oracle stays within its state budget; otherwise it is absent.
    """
    if model is None:
        model, _ = densest_shallow_minor(g, r, mode)
    f = contract(g, model)
    emode = "exact" if f.n <= EXPANDER_EXACT_LIMIT else "heuristic"
    expansion = expander_subgraph(f, emode, seed=seed)
    h_vertices = expansion.vertices
    h = f.induced_subgraph(h_vertices)
    h_prime = None
    if h.n <= SPARSIFIER_LIMIT:
        try:
            h_prime, _ = degree3_sparsifier_oracle(h)
        except RefusalError:
            h_prime = None
    realised = h_prime if h_prime is not None else h
    edges = [(h_vertices[a], h_vertices[b]) for a, b in realised.edges]
    g_prime = host_subgraph(g, model, h_vertices, edges, trim=True)
    return ChainCertificate(g, r, model, f, tuple(h_vertices), h, h_prime, g_prime, expansion)


def validate_certificate(cert: ChainCertificate) -> None:
    """Raise CertificationError naming the first component that fails."""
    g = cert.g
    verdict = validate_model(g, cert.model)
    if not verdict.valid:
        raise CertificationError(f"F: minor model invalid: {verdict.reason}")
    if cert.model.r != cert.r:
        raise CertificationError(f"F: model depth {cert.model.r} differs from r={cert.r}")
    if cert.f != Graph(cert.model.k, cert.model.minor_edges):
        raise CertificationError("F: graph does not match the contracted model")
    if len(set(cert.h_vertices)) != len(cert.h_vertices) or any(
        not (0 <= v < cert.f.n) for v in cert.h_vertices
    ):
        raise CertificationError("H: vertex list is not a set of vertices of F")
    if list(cert.h_vertices) != sorted(cert.h_vertices) or cert.h != cert.f.induced_subgraph(cert.h_vertices):
        raise CertificationError("H: not the induced subgraph of F on its vertex list")
    hp = cert.h_prime
    if hp is not None:
        if hp.n != cert.h.n or not hp.edges <= cert.h.edges:
            raise CertificationError("H': not a spanning subgraph of H")
        if hp.max_degree > 3:
            bad = max(hp.vertices(), key=hp.degree)
            raise CertificationError(f"H': vertex {bad} has degree {hp.degree(bad)} > 3")
    gp = cert.g_prime
    if len(gp.graph.origin) != gp.graph.n or any(not (0 <= v < g.n) for v in gp.graph.origin):
        raise CertificationError("G': vertex map does not point into G")
    for a, b in gp.graph.edges:
        if not g.has_edge(gp.graph.origin[a], gp.graph.origin[b]):
            raise CertificationError(f"G': edge {a}-{b} is not a host edge")
    verdict = validate_model(gp.graph, gp.model)
    if not verdict.valid:
        raise CertificationError(f"G': restricted model invalid: {verdict.reason}")
    if tuple(gp.minor_vertices) != tuple(cert.h_vertices):
        raise CertificationError("G': realises a different vertex set than H")
    for i, s in enumerate(gp.model.branch_sets):
        host = {gp.graph.origin[v] for v in s}
        if not host <= cert.model.branch_sets[gp.minor_vertices[i]]:
            raise CertificationError(f"G': branch set {i} leaves the branch set of its F vertex")
    target = (hp if hp is not None else cert.h).edges
    if gp.model.minor_edges != target:
        raise CertificationError("G': contracted edges differ from the realised graph")


def _log_leq(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + REL_SLACK * max(abs(lhs), abs(rhs))


def check_chain(cert: ChainCertificate, p: BoundParams) -> list[StepVerdict]:
    """Evaluate steps (a)-(e) on a validated certificate.

    Integer and rational comparisons are exact; sides involving logarithms
    or real powers get a relative slack of 1e-9.
    """
    validate_certificate(cert)
    r = cert.r
    nh = cert.h.n
    out: list[StepVerdict] = []

    d_f = average_degree(cert.f)
    d_h = average_degree(cert.h)
    rhs_a = DENSITY_FACTOR * d_f
    out.append(StepVerdict("a", "pass" if d_h >= rhs_a else "fail", d_h, rhs_a, "d(H) >= 255/256 d(F)"))

    tw_h, exact_h = treewidth_upper_bound(cert.h)
    rhs_b = nh / (2**10 * math.log2(nh) ** 3) if nh >= 2 else float("nan")
    if nh < STEP_B_FLOOR:
        out.append(StepVerdict("b", "n/a", tw_h, rhs_b, f"|V(H)|={nh} below the size floor 255/256*10^8"))
    elif not exact_h:
        out.append(StepVerdict("b", "n/a", tw_h, rhs_b, "tw(H) not computed exactly"))
    else:
        out.append(StepVerdict("b", "pass" if _log_leq(rhs_b, tw_h) else "fail", tw_h, rhs_b))

    ngp = cert.g_prime.graph.n
    if cert.h_prime is None:
        out.append(StepVerdict("c", "n/a", ngp, None, "H' absent"))
    else:
        rhs_c = (3 * r + 1) * cert.h_prime.n
        out.append(StepVerdict("c", "pass" if ngp <= rhs_c else "fail", ngp, rhs_c, "|V(G')| <= (3r+1)|V(H')|"))

    tw_gp, exact_gp = treewidth_upper_bound(cert.g_prime.graph)
    rhs_d = 105 * p.C * ngp ** (1 - p.delta)
    if _log_leq(tw_gp, rhs_d):
        note = "tw(G') exact" if exact_gp else "tw(G') upper bound"
        out.append(StepVerdict("d", "pass", tw_gp, rhs_d, note))
    elif exact_gp:
        out.append(StepVerdict("d", "fail", tw_gp, rhs_d, "tw(G') exact"))
    else:
        out.append(StepVerdict("d", "n/a", tw_gp, rhs_d, "only an upper bound on tw(G') is available"))

    if nh < 2:
        out.append(StepVerdict("e", "n/a", None, None, "|V(H)| < 2"))
    else:
        lhs_e = math.log2(nh)  # >= 1, so log log |V(H)| >= 0
        base = (1 / p.delta) * math.log2(2**17 * p.C / p.alpha * (3 * r + 1))
        rhs_e = base + (p.beta + 3) / p.delta * math.log2(lhs_e)
        out.append(
            StepVerdict(
                "e",
                "pass" if _log_leq(lhs_e, rhs_e) else "fail",
                lhs_e,
                rhs_e,
                "log|V(H)| <= (1/delta) log(2^17 C/alpha (3r+1)) + (beta+3)/delta log log|V(H)|",
            )
        )
    return out


def min_c1(cert: ChainCertificate, p: BoundParams) -> float:
    """Smallest c1 with d(F) <= f(r) for this certificate (an empirical fit)."""
    unit = BoundParams(p.delta, p.C, 1.0, p.c2, p.alpha, p.beta)
    return float(average_degree(cert.f)) / eval_bound(unit, cert.r)
