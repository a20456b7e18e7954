"""Edge colorings and the acceptance predicates: properness and
bichromatic-cycle freeness.

A coloring is *acyclic* when it is proper and no cycle alternates between
exactly two colors.  Detection runs per color pair on the two-color
subgraph, where properness forces maximum degree 2, so every component is
a path or an alternating even cycle; this keeps verification linear per
pair instead of enumerating cycles.
"""

from __future__ import annotations

from itertools import combinations

from .graphs import CycleWitness, GraphError


class ColoringError(ValueError):
    """Raised for malformed colorings or predicate precondition failures."""


class EdgeColoring:
    """Total or partial assignment of palette colors to edges.

    colors[i] is the color of edge i (an int in [0, palette_size)) or None
    for an uncolored edge.
    """

    __slots__ = ("palette_size", "colors")

    def __init__(self, palette_size, colors):
        if palette_size < 1:
            raise ColoringError("palette_size must be positive")
        self.palette_size = int(palette_size)
        cs = []
        for i, c in enumerate(colors):
            if c is not None:
                c = int(c)
                if not (0 <= c < self.palette_size):
                    raise ColoringError(f"edge {i}: color {c} outside palette")
            cs.append(c)
        self.colors = tuple(cs)

    def is_total(self):
        return all(c is not None for c in self.colors)

    def colored_edges(self):
        return [i for i, c in enumerate(self.colors) if c is not None]

    def restrict(self, edge_subset):
        """Copy with every edge outside edge_subset uncolored."""
        keep = set(edge_subset)
        return EdgeColoring(self.palette_size,
                            [c if i in keep else None
                             for i, c in enumerate(self.colors)])

    def __eq__(self, other):
        return (isinstance(other, EdgeColoring)
                and self.palette_size == other.palette_size
                and self.colors == other.colors)

    def __repr__(self):
        return f"EdgeColoring(palette_size={self.palette_size}, colors={list(self.colors)})"


class BichromaticWitness:
    """An even cycle plus the two colors it alternates between."""

    __slots__ = ("cycle", "colors")

    def __init__(self, cycle, colors):
        a, b = colors
        if a == b:
            raise ColoringError("witness colors must differ")
        if len(cycle) % 2 != 0:
            raise ColoringError("a two-color alternating cycle has even length")
        self.cycle = cycle
        self.colors = (min(a, b), max(a, b))

    def __repr__(self):
        return f"BichromaticWitness(colors={self.colors}, cycle={self.cycle.edges})"


def restrict_to_subgraph(col, subgraph):
    """Transfer a parent-graph coloring onto an edge-induced subgraph,
    using the subgraph's edge_ids to look up parent edge indices."""
    return EdgeColoring(col.palette_size,
                        [col.colors[orig] for orig in subgraph.edge_ids])


def find_conflict(g, col):
    """Lowest-index pair (e, e') of adjacent same-colored edges, or None.

    Uncolored edges are ignored, so this also serves partial colorings.
    """
    colors = col.colors
    edge_adj = g.edge_adjacency()
    for e in range(g.edge_count):
        ce = colors[e]
        if ce is None:
            continue
        for f in edge_adj[e]:
            if f > e and colors[f] == ce:
                return (e, f)
    return None


def is_proper(g, col):
    """True iff no two adjacent edges share a color. Requires a total coloring."""
    if len(col.colors) != g.edge_count:
        raise ColoringError("coloring length does not match edge count")
    if not col.is_total():
        raise ColoringError("is_proper requires a total coloring")
    return find_conflict(g, col) is None


def is_bichromatic(cycle, col):
    """True iff the cycle's edges use exactly two colors in alternation.

    Odd cycles are never bichromatic. Every cycle edge must be colored.
    """
    cs = []
    for e in cycle.edges:
        c = col.colors[e]
        if c is None:
            raise ColoringError(f"cycle edge {e} is uncolored")
        cs.append(c)
    if len(cs) % 2 != 0:
        return False
    a, b = cs[0], cs[1]
    if a == b:
        return False
    return all(cs[i] == (a if i % 2 == 0 else b) for i in range(len(cs)))


def _vertex_color_maps(g, col):
    """Per-vertex map color -> incident edge index, over colored edges.

    Raises ColoringError if some vertex sees a color twice (improper).
    """
    maps = [dict() for _ in range(g.vertex_count)]
    for e, c in enumerate(col.colors):
        if c is None:
            continue
        u, v = g.endpoints(e)
        for x in (u, v):
            if c in maps[x]:
                raise ColoringError(
                    f"improper coloring: edges {maps[x][c]} and {e} share "
                    f"color {c} at vertex {x}")
            maps[x][c] = e
    return maps


def all_bichromatic_cycles(g, col):
    """Every bichromatic cycle of the (possibly partial) proper coloring.

    Walks the two-color components: under properness each component is a
    path or an alternating even cycle, so the scan is complete and runs in
    O(sum over vertices of (incident color pairs)).
    """
    maps = _vertex_color_maps(g, col)
    seen = set()
    out = []
    for v in range(g.vertex_count):
        cols_v = sorted(maps[v])
        for a, b in combinations(cols_v, 2):
            if (v, a, b) in seen:
                continue
            touched = [v]
            path_edges = []
            cur, want = v, a
            closed = False
            for _ in range(g.edge_count + 1):
                e = maps[cur].get(want)
                if e is None:
                    break
                path_edges.append(e)
                cur = g.other_end(e, cur)
                want = b if want == a else a
                if cur == v:
                    closed = True
                    break
                touched.append(cur)
            for w in touched:
                seen.add((w, a, b))
            if closed and len(path_edges) >= 4:
                out.append(BichromaticWitness(CycleWitness(g, path_edges), (a, b)))
    return out


def find_bichromatic_cycle(g, col, len_range=None):
    """A bichromatic cycle with length in len_range = [lo, hi], or None.

    The coloring must be proper on its colored edges (uncolored edges are
    treated as absent). When several witnesses match, the one with the
    lexicographically smallest canonical cycle form is returned, for
    reproducibility.
    """
    cycles = all_bichromatic_cycles(g, col)
    if len_range is not None:
        lo, hi = len_range
        cycles = [w for w in cycles if lo <= len(w.cycle) <= hi]
    if not cycles:
        return None
    return min(cycles, key=lambda w: w.cycle.canonical_key())


def is_acyclic_coloring(g, col):
    """Proper and free of bichromatic cycles. Requires a total coloring."""
    if len(col.colors) != g.edge_count:
        raise ColoringError("coloring length does not match edge count")
    if not col.is_total():
        raise ColoringError("is_acyclic_coloring requires a total coloring")
    if find_conflict(g, col) is not None:
        return False
    return find_bichromatic_cycle(g, col) is None


def is_acyclic_on_colored(g, col):
    """Partial-coloring variant: the predicate applied to the subgraph of
    colored edges only (solvers use this mid-run)."""
    if find_conflict(g, col) is not None:
        return False
    return find_bichromatic_cycle(g, col) is None
