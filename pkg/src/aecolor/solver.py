"""Coloring procedures: randomized resampling toward acyclicity, the
two-phase girth pipeline, and deterministic/exhaustive baselines.

The resampling loops repeatedly pick the first violation in a canonical
scan order and re-draw the involved edges from their distribution.
Termination is not guaranteed in general, so every loop runs under an
explicit budget and reports honestly when it runs out; a success report's
coloring is always re-checked by the independent verifier predicates.

Scan order: adjacency conflicts come first (ordered by lowest edge index,
then partner index); once the coloring is proper, bichromatic cycles are
ordered by (lowest involved edge index, length, canonical vertex form).
Conflicts must precede cycles because the two-color component scan that
finds cycles is only defined for proper colorings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bounds import _iceil, girth_requirement, long_cycle_params, short_cycle_params
from .coloring import (EdgeColoring, all_bichromatic_cycles,
                       find_bichromatic_cycle, is_acyclic_coloring,
                       is_bichromatic, is_proper)
from .graphs import ACYCLIC, girth


class SolverError(ValueError):
    """Raised for violated solver preconditions."""


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by the resampling drivers.

    extra_colors is additive palette slack on top of the regime's
    prescribed size; scan_order is fixed ("canonical") and recorded for
    the manifest echo.
    """
    seed: int = 0
    budget: int = 100_000
    extra_colors: int = 0
    scan_order: str = "canonical"

    def __post_init__(self):
        if self.budget < 1:
            raise SolverError("budget must be at least 1")
        if self.scan_order != "canonical":
            raise SolverError("only the canonical scan order is implemented")


@dataclass(frozen=True)
class RecolorParams:
    """Keep/new mix for the recoloring phase: each edge keeps its base
    color with probability 1-p or takes one of new_palette_size fresh
    colors uniformly."""
    p: float
    new_palette_size: int

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise SolverError("p must lie strictly in (0, 1)")
        if self.new_palette_size < 1:
            raise SolverError("need at least one new color")

    @classmethod
    def from_bound_result(cls, result):
        """Build from a long-cycle BoundResult, re-checking the weight
        constraints (1-p)*omega < 1 and p*omega/c < 1 at its (y, c)."""
        p, c, omega = result.p, result.c, result.omega
        if p is None:
            raise SolverError("bound result carries no recoloring probability")
        if not ((1 - p) * omega < 1 and p * omega / c < 1):
            raise SolverError("bound result violates the recoloring constraints")
        return cls(p=p, new_palette_size=result.palette_size)


@dataclass(frozen=True)
class ViolationEvent:
    """One violated condition: its tag, the involved edge indices and a
    re-verifiable witness (conflict pair or BichromaticWitness)."""
    kind: str
    edges: tuple
    witness: object


@dataclass
class SolveReport:
    """Outcome of one solver run. status is one of "success",
    "budget-exhausted" or "infeasible"."""
    success: bool
    status: str
    coloring: EdgeColoring | None
    iterations: int
    violations: dict = field(default_factory=dict)
    seed: int = 0
    palette_size: int = 0
    extra: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "success": self.success,
            "status": self.status,
            "iterations": self.iterations,
            "violations": dict(sorted(self.violations.items())),
            "seed": self.seed,
            "palette_size": self.palette_size,
            "extra": self.extra,
            "coloring": None if self.coloring is None else {
                "palette_size": self.coloring.palette_size,
                "colors": list(self.coloring.colors),
            },
        }


def random_uniform_coloring(g, palette, seed):
    """Independent uniform color per edge; reproducible per seed."""
    if palette < 1:
        raise SolverError("palette must be positive")
    rng = random.Random(seed)
    return EdgeColoring(palette, [rng.randrange(palette) for _ in range(g.edge_count)])


# -- violation scanning -------------------------------------------------------

def _first_conflict_raw(g, colors):
    edge_adj = g.edge_adjacency()
    for e in range(g.edge_count):
        ce = colors[e]
        if ce is None:
            continue
        best = None
        for f in edge_adj[e]:
            if f > e and colors[f] == ce and (best is None or f < best):
                best = f
        if best is not None:
            return (e, best)
    return None


def _cycle_sort_key(witness):
    return (min(witness.cycle.edges), len(witness.cycle),
            witness.cycle.canonical_vertices())


def _classify_recolor_cycle(g, witness, colors, psi, base_size, threshold):
    """Tag a bichromatic cycle of the recolored coloring, or return None
    when it is permitted (already bichromatic in the base and short)."""
    a, b = witness.colors
    length = len(witness.cycle)
    if b < base_size:  # both colors old: every edge kept, base-bichromatic
        return "type2" if length >= threshold else None
    if a >= base_size:  # both colors new
        kind = "type3"
    else:
        # Mixed: the kept class carries old color a. The tag records whether
        # the canonical first edge is the kept one.
        canon = witness.cycle.canonical_vertices()
        first_edge = g.edge_between(canon[0], canon[1])
        kind = "type4" if colors[first_edge] == a else "type5"
    if length >= threshold:
        return kind
    return kind if not is_bichromatic(witness.cycle, psi) else None


def _find_violation_raw(g, colors, mode, palette, *, cycle_cap=None,
                        psi=None, threshold=None):
    conflict = _first_conflict_raw(g, colors)
    if conflict is not None:
        kind = "type1" if mode == "recolor" else "adjacent-conflict"
        return ViolationEvent(kind, conflict, conflict)
    col = EdgeColoring(palette, colors)
    cycles = all_bichromatic_cycles(g, col)
    events = []
    if mode == "acyclic":
        events = [(w, "bichromatic-cycle") for w in cycles]
    elif mode == "short":
        events = [(w, "bichromatic-cycle") for w in cycles
                  if len(w.cycle) <= cycle_cap]
    elif mode == "recolor":
        for w in cycles:
            kind = _classify_recolor_cycle(g, w, colors, psi,
                                           psi.palette_size, threshold)
            if kind is not None:
                events.append((w, kind))
    else:
        raise SolverError(f"unknown violation mode {mode!r}")
    if not events:
        return None
    w, kind = min(events, key=lambda ev: _cycle_sort_key(ev[0]))
    return ViolationEvent(kind, w.cycle.edges, w)


def find_violation(g, col, mode, *, cycle_cap=None, psi=None, threshold=None):
    """First violation of the mode's predicate in canonical scan order.

    mode "acyclic": adjacency conflicts and bichromatic cycles of any
    length. mode "short": cycles only up to cycle_cap. mode "recolor":
    the recoloring conditions against the proper base coloring psi with
    long-cycle threshold `threshold`; requires every color to be either
    the edge's base color or a fresh one (index >= psi.palette_size).
    """
    if mode == "short" and cycle_cap is None:
        raise SolverError("short mode needs cycle_cap")
    if mode == "recolor":
        if psi is None or threshold is None:
            raise SolverError("recolor mode needs psi and threshold")
        if not is_proper(g, psi):
            raise SolverError("base coloring must be proper")
        for e, c in enumerate(col.colors):
            if c is not None and c < psi.palette_size and c != psi.colors[e]:
                raise SolverError(
                    f"edge {e}: color {c} is neither its base color nor a new color")
    return _find_violation_raw(g, list(col.colors), mode, col.palette_size,
                               cycle_cap=cycle_cap, psi=psi, threshold=threshold)


# -- resampling drivers -------------------------------------------------------

def _resample_loop(g, colors, palette, config, mode, redraw, *, cycle_cap=None,
                   psi=None, threshold=None):
    """Shared driver: scan, resample the violation's edges, repeat."""
    violations = {}
    for it in range(config.budget):
        event = _find_violation_raw(g, colors, mode, palette,
                                    cycle_cap=cycle_cap, psi=psi,
                                    threshold=threshold)
        if event is None:
            return True, it, violations
        violations[event.kind] = violations.get(event.kind, 0) + 1
        for e in sorted(event.edges):
            colors[e] = redraw(e)
    return False, config.budget, violations


def acyclic_resample(g, palette, config):
    """Moser–Tardos style resampling toward an acyclic edge coloring.

    Start uniform; while an adjacency conflict or bichromatic cycle
    exists, re-draw the involved edges uniformly. Success reports are
    re-verified with is_acyclic_coloring.
    """
    if palette < 2:
        raise SolverError("need at least two colors")
    rng = random.Random(config.seed)
    colors = [rng.randrange(palette) for _ in range(g.edge_count)]
    ok, iters, violations = _resample_loop(
        g, colors, palette, config, "acyclic", lambda e: rng.randrange(palette))
    col = EdgeColoring(palette, colors)
    if ok:
        assert is_acyclic_coloring(g, col)
    return SolveReport(success=ok, status="success" if ok else "budget-exhausted",
                       coloring=col, iterations=iters, violations=violations,
                       seed=config.seed, palette_size=palette)


def phase1_short_cycle_free(g, eps, r, config):
    """Proper coloring with no bichromatic cycle of length <= 2L, where L
    comes from the short-cycle regime at (max degree, eps, r).

    Requires girth(g) > 2r. The regime's feasibility flag is echoed in
    the report; the resampler itself runs for any eps in (0, 2).
    """
    gir = girth(g)
    if gir is not ACYCLIC and gir <= 2 * r:
        raise SolverError(f"girth {gir} must exceed 2r = {2 * r}")
    delta = g.max_degree
    if delta >= 2:
        params = short_cycle_params(delta, eps, r)
        L = params.L
        palette = params.palette_size + config.extra_colors
        feasible = params.feasible
    else:
        L = 1
        palette = _iceil((2.0 + eps) * max(delta, 1)) + config.extra_colors
        feasible = True
    rng = random.Random(config.seed)
    colors = [rng.randrange(palette) for _ in range(g.edge_count)]
    ok, iters, violations = _resample_loop(
        g, colors, palette, config, "short",
        lambda e: rng.randrange(palette), cycle_cap=2 * L)
    col = EdgeColoring(palette, colors)
    if ok:
        assert is_proper(g, col)
        assert find_bichromatic_cycle(g, col, (4, 2 * L)) is None
    return SolveReport(success=ok, status="success" if ok else "budget-exhausted",
                       coloring=col, iterations=iters, violations=violations,
                       seed=config.seed, palette_size=palette,
                       extra={"L": L, "cycle_cap": 2 * L, "eps": eps, "r": r,
                              "params_feasible": feasible})


def phase2_recolor(g, psi, params, threshold, config):
    """Sparse recoloring of a proper base coloring with fresh colors.

    Each edge keeps its base color with probability 1-p or moves to one
    of the new colors. On success: the coloring is proper, every
    bichromatic cycle was already bichromatic under the base coloring,
    and none has length >= threshold.
    """
    if len(psi.colors) != g.edge_count or not psi.is_total():
        raise SolverError("base coloring must be total")
    if not is_proper(g, psi):
        raise SolverError("base coloring must be proper")
    base_size = psi.palette_size
    new_k = params.new_palette_size
    palette = base_size + new_k
    rng = random.Random(config.seed)

    def redraw(e):
        if rng.random() < params.p:
            return base_size + rng.randrange(new_k)
        return psi.colors[e]

    colors = [redraw(e) for e in range(g.edge_count)]
    ok, iters, violations = _resample_loop(
        g, colors, palette, config, "recolor", redraw,
        psi=psi, threshold=threshold)
    col = EdgeColoring(palette, colors)
    if ok:
        assert is_proper(g, col)
        for w in all_bichromatic_cycles(g, col):
            assert len(w.cycle) < threshold
            assert is_bichromatic(w.cycle, psi)
    return SolveReport(success=ok, status="success" if ok else "budget-exhausted",
                       coloring=col, iterations=iters, violations=violations,
                       seed=config.seed, palette_size=palette,
                       extra={"threshold": threshold, "p": params.p,
                              "new_colors": new_k, "base_palette": base_size})


@dataclass(frozen=True)
class TwoPhaseKnobs:
    """Explicit desk-scale parameters for the two-phase pipeline, used
    when the derived regime is infeasible at small max degree: the girth
    parameter r, the recoloring mix, and the phase-2 length threshold."""
    r: int
    recolor: RecolorParams
    length_threshold: int


def two_phase_acyclic(g, eps, config, knobs=None):
    """Short-cycle phase at eps/2, then recoloring phase at eps/2.

    Without knobs the thresholds come from girth_requirement(eps, delta);
    when that regime is infeasible at this graph's girth/degree the driver
    reports status "infeasible" without attempting a coloring. With
    knobs the pipeline runs at the given parameters (experimental mode).
    In both cases the coverage check L1 >= L2 is asserted before phase 2,
    and a success is re-verified to be fully acyclic.
    """
    delta = max(g.max_degree, 2)
    if knobs is None:
        req = girth_requirement(eps, delta)
        gir = girth(g)
        if not req.feasible or (gir is not ACYCLIC and gir < req.girth):
            return SolveReport(success=False, status="infeasible", coloring=None,
                               iterations=0, seed=config.seed,
                               extra={"required_girth": req.girth,
                                      "girth": None if gir is ACYCLIC else gir,
                                      "L1": req.L1, "L2": req.L2,
                                      "thresholds_feasible": req.feasible})
        r = req.r
        threshold = _iceil(req.L2)
        recolor = RecolorParams(p=long_cycle_params(delta, eps / 2.0).p,
                                new_palette_size=max(1, _iceil(eps / 2.0 * delta)))
    else:
        r = knobs.r
        threshold = knobs.length_threshold
        recolor = knobs.recolor

    rep1 = phase1_short_cycle_free(g, eps / 2.0, r, config)
    if not rep1.success:
        rep1.status = "budget-exhausted"
        return rep1
    l1 = rep1.extra["cycle_cap"]
    if l1 < threshold:
        raise SolverError(
            f"phase coverage gap: phase 1 guarantees lengths <= {l1}, "
            f"phase 2 needs threshold {threshold} <= that")

    cfg2 = SolverConfig(seed=config.seed + 1, budget=config.budget,
                        extra_colors=config.extra_colors)
    rep2 = phase2_recolor(g, rep1.coloring, recolor, threshold, cfg2)
    merged_violations = dict(rep1.violations)
    for k, v in rep2.violations.items():
        merged_violations[k] = merged_violations.get(k, 0) + v
    extra = {"phase1": rep1.extra, "phase2": rep2.extra,
             "L1": l1, "L2": threshold,
             "phase1_palette": rep1.palette_size}
    if not rep2.success:
        return SolveReport(success=False, status="budget-exhausted",
                           coloring=rep2.coloring,
                           iterations=rep1.iterations + rep2.iterations,
                           violations=merged_violations, seed=config.seed,
                           palette_size=rep2.palette_size, extra=extra)
    final = rep2.coloring
    assert is_acyclic_coloring(g, final)
    if knobs is None:
        budgeted = rep1.palette_size + max(1, _iceil(eps / 2.0 * delta)) \
            + config.extra_colors
        assert final.palette_size <= budgeted
    return SolveReport(success=True, status="success", coloring=final,
                       iterations=rep1.iterations + rep2.iterations,
                       violations=merged_violations, seed=config.seed,
                       palette_size=final.palette_size, extra=extra)


# -- deterministic baselines --------------------------------------------------

def _closes_alternating_cycle(g, maps, e, c):
    """Would giving edge e color c close a two-color cycle among the
    currently colored edges? Assumes neither endpoint already sees c."""
    u, v = g.endpoints(e)
    for b in sorted(set(maps[u]) | set(maps[v])):
        if b == c:
            continue
        cur, nxt_color = v, b
        for _ in range(g.edge_count + 1):
            ei = maps[cur].get(nxt_color)
            if ei is None:
                break
            cur = g.other_end(ei, cur)
            if cur == u:
                if nxt_color == b:
                    return True
                break
            nxt_color = c if nxt_color == b else b
    return False


def greedy_acyclic(g):
    """Deterministic baseline: edges in index order take the smallest
    color that neither conflicts with a neighbor nor closes a two-color
    cycle. Always terminates with an acyclic coloring."""
    maps = [dict() for _ in range(g.vertex_count)]
    colors = [None] * g.edge_count
    top = 0
    for e in range(g.edge_count):
        u, v = g.endpoints(e)
        c = 0
        while True:
            if c not in maps[u] and c not in maps[v] and \
                    not _closes_alternating_cycle(g, maps, e, c):
                break
            c += 1
        colors[e] = c
        maps[u][c] = e
        maps[v][c] = e
        top = max(top, c + 1)
    return EdgeColoring(max(top, 1), colors)


def _edge_order_connected(g):
    """Edges reordered so each one (within a component) touches an earlier one."""
    edge_adj = g.edge_adjacency()
    order, seen = [], set()
    for start in range(g.edge_count):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            e = queue.pop(0)
            order.append(e)
            for f in edge_adj[e]:
                if f not in seen:
                    seen.add(f)
                    queue.append(f)
    return order


def find_acyclic_coloring(g, palette):
    """Backtracking search for an acyclic coloring with the given palette.

    Color-symmetry pruning: a new edge may use at most one color beyond
    those already in use. Exponential in the worst case.
    """
    maps = [dict() for _ in range(g.vertex_count)]
    colors = [None] * g.edge_count
    order = _edge_order_connected(g)

    def bt(pos, used):
        if pos == len(order):
            return True
        e = order[pos]
        u, v = g.endpoints(e)
        for c in range(min(palette, used + 1)):
            if c in maps[u] or c in maps[v]:
                continue
            if _closes_alternating_cycle(g, maps, e, c):
                continue
            colors[e] = c
            maps[u][c] = e
            maps[v][c] = e
            if bt(pos + 1, max(used, c + 1)):
                return True
            colors[e] = None
            del maps[u][c]
            del maps[v][c]
        return False

    if bt(0, 0):
        return EdgeColoring(palette, colors)
    return None


def exhaustive_min_acyclic(g, max_edges=10):
    """Exact acyclic chromatic index with a witness coloring.

    Capped at max_edges (the search is exponential). The index is at
    least the maximum degree, and at least 3 for any graph with a cycle.
    """
    if g.edge_count > max_edges:
        raise SolverError(f"graph too large for exhaustive search "
                          f"({g.edge_count} > {max_edges} edges)")
    if g.edge_count == 0:
        return 0, EdgeColoring(1, [])
    lower = g.max_degree
    if girth(g) is not ACYCLIC:
        lower = max(lower, 3)
    for palette in range(max(lower, 1), g.edge_count + 1):
        col = find_acyclic_coloring(g, palette)
        if col is not None:
            assert is_acyclic_coloring(g, col)
            return palette, col
    raise AssertionError("rainbow coloring should always succeed")
