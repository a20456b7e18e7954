"""Explicit Kővári–Sós–Turán constants and the derived path/cycle count checks.

The classical KST theorem bounds the edge count of a K_{k,k}-free graph by
m <= (1/2)(k-1)^{1/k} n^{2-1/k} + (1/2)(k-1) n.  We absorb the linear term
using n <= n^{2-1/k} (valid for n >= 1, k >= 2), giving the explicit
constant  alpha = (k-1)^{1/k}/2 + (k-1)  with exponent delta = 1/k.
The three-path constant is then  beta = 2^{3-delta} * alpha.

These constants are deliberately loose but provably valid; the checkers
below report the truth of the explicit inequalities on concrete graphs.
A check that does not apply (the graph contains K_{k,k}) returns None
rather than raising, so corpus sweeps can skip inapplicable graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import complete_bipartite
from .graphs import contains_subgraph, count_cycles_through_edge, count_paths


@dataclass(frozen=True)
class KstConstants:
    k: int
    alpha: float
    delta: float
    beta: float


def kst_constants(k):
    """Explicit constants (alpha, delta, beta) for forbidden K_{k,k}."""
    if k < 2:
        raise ValueError("k must be at least 2")
    delta = 1.0 / k
    alpha = (k - 1) ** (1.0 / k) / 2.0 + (k - 1)
    beta = 2.0 ** (3.0 - delta) * alpha
    return KstConstants(k=k, alpha=alpha, delta=delta, beta=beta)


def is_kkfree(g, k):
    return not contains_subgraph(g, complete_bipartite(k, k))


def check_kst_edge_bound(g, k):
    """m <= alpha * n^(2-delta) for a K_{k,k}-free graph.

    Returns True/False, or None when g contains K_{k,k} (not applicable).
    """
    if not is_kkfree(g, k):
        return None
    c = kst_constants(k)
    n, m = g.vertex_count, g.edge_count
    return m <= c.alpha * n ** (2.0 - c.delta)


def max_path3_count(g):
    """Largest number of u-v paths of length 3 over all vertex pairs."""
    best = 0
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            best = max(best, count_paths(g, u, v, 3))
    return best


def check_path3_bound(g, k):
    """Every pair has at most beta * Delta^(2-delta) three-edge paths.

    None when g contains K_{k,k}; vacuously True when Delta = 0.
    """
    if not is_kkfree(g, k):
        return None
    if g.max_degree == 0:
        return True
    c = kst_constants(k)
    return max_path3_count(g) <= c.beta * g.max_degree ** (2.0 - c.delta)


def check_cycle_count_bound(g, cycle_len, k):
    """Every edge lies on at most beta * Delta^(cycle_len-2-delta) cycles
    of length cycle_len.

    None when g contains K_{k,k}; vacuously True when Delta = 0.
    """
    if cycle_len < 4:
        raise ValueError("cycle_len must be at least 4")
    if not is_kkfree(g, k):
        return None
    if g.max_degree == 0:
        return True
    c = kst_constants(k)
    bound = c.beta * g.max_degree ** (cycle_len - 2.0 - c.delta)
    return all(count_cycles_through_edge(g, e, cycle_len) <= bound
               for e in range(g.edge_count))
