"""Undirected graph primitives: indexed edges, girth, path and cycle counting.

Vertices and edges are dense integer indices.  Edges are unordered vertex
pairs stored in construction order; the edge index is stable and is what
colorings and cycle witnesses refer to everywhere else in the package.
All functions here are pure reads over an immutable graph.
"""

from __future__ import annotations

import math

ACYCLIC = math.inf  # girth value reported for forests


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph-operation arguments."""


class Graph:
    """Simple undirected graph (no loops, no parallel edges).

    Args:
        vertex_count: number of vertices, indexed ``0 .. vertex_count-1``.
        edges: iterable of vertex pairs; iteration order fixes the edge
            indexing. Pairs are normalized to ``(min, max)``.
        edge_ids: optional stable labels carried through subgraph
            operations (defaults to the position indices). Used to map a
            subgraph's edges back to the parent graph.
    """

    __slots__ = ("vertex_count", "edges", "adj", "edge_ids",
                 "_pair_index", "_max_degree", "_edge_adj")

    def __init__(self, vertex_count, edges, edge_ids=None):
        if vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        self.vertex_count = int(vertex_count)
        norm = []
        pair_index = {}
        adj = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge {i}: vertex out of range: ({u}, {v})")
            if u == v:
                raise GraphError(f"edge {i}: loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in pair_index:
                raise GraphError(f"edge {i}: duplicate edge ({u}, {v})")
            pair_index[(u, v)] = i
            norm.append((u, v))
            adj[u].append((v, i))
            adj[v].append((u, i))
        self.edges = tuple(norm)
        self.adj = tuple(tuple(a) for a in adj)
        self._pair_index = pair_index
        if edge_ids is None:
            self.edge_ids = tuple(range(len(norm)))
        else:
            self.edge_ids = tuple(edge_ids)
            if len(self.edge_ids) != len(norm):
                raise GraphError("edge_ids length must match edge count")
        self._max_degree = max((len(a) for a in adj), default=0)
        self._edge_adj = None

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def max_degree(self):
        return self._max_degree

    def degree(self, v):
        return len(self.adj[v])

    def endpoints(self, e):
        return self.edges[e]

    def other_end(self, e, v):
        u, w = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def edge_between(self, u, v):
        """Edge index joining u and v, or None."""
        if u > v:
            u, v = v, u
        return self._pair_index.get((u, v))

    def adjacent_edges(self, e):
        """Sorted indices of edges sharing a vertex with edge e."""
        u, v = self.edges[e]
        out = {i for _, i in self.adj[u]} | {i for _, i in self.adj[v]}
        out.discard(e)
        return sorted(out)

    def edge_adjacency(self):
        """Cached per-edge adjacency lists (edge index -> adjacent edges)."""
        if self._edge_adj is None:
            self._edge_adj = tuple(tuple(self.adjacent_edges(e))
                                   for e in range(self.edge_count))
        return self._edge_adj

    def __eq__(self, other):
        return (isinstance(other, Graph)
                and self.vertex_count == other.vertex_count
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


class CycleWitness:
    """A simple cycle, recorded as the sequence of its edge indices.

    Consecutive edges share exactly one vertex, the sequence is closed,
    has length at least 3, and visits pairwise distinct vertices.
    """

    __slots__ = ("edges", "vertices", "_canon")

    def __init__(self, g, edge_seq):
        edge_seq = tuple(edge_seq)
        k = len(edge_seq)
        if k < 3:
            raise GraphError("a cycle needs at least 3 edges")
        if len(set(edge_seq)) != k:
            raise GraphError("cycle repeats an edge")
        # Derive the vertex sequence: vertices[i] is shared by edges i-1 and i.
        a0 = set(g.endpoints(edge_seq[0]))
        a1 = set(g.endpoints(edge_seq[1]))
        shared = a0 & a1
        if len(shared) != 1:
            raise GraphError("consecutive cycle edges must share exactly one vertex")
        v1 = shared.pop()
        verts = [(a0 - {v1}).pop(), v1]
        for i in range(1, k - 1):
            nxt = g.other_end(edge_seq[i], verts[-1])
            verts.append(nxt)
        # Closing edge must join the last vertex back to the first.
        if set(g.endpoints(edge_seq[-1])) != {verts[-1], verts[0]}:
            raise GraphError("cycle edge sequence does not close")
        verts = verts[:k]
        if len(set(verts)) != k:
            raise GraphError("cycle visits a vertex twice")
        self.edges = edge_seq
        self.vertices = tuple(verts)
        self._canon = None

    @classmethod
    def from_vertices(cls, g, verts):
        verts = tuple(verts)
        k = len(verts)
        edges = []
        for i in range(k):
            e = g.edge_between(verts[i], verts[(i + 1) % k])
            if e is None:
                raise GraphError(f"no edge between {verts[i]} and {verts[(i + 1) % k]}")
            edges.append(e)
        return cls(g, edges)

    def __len__(self):
        return len(self.edges)

    @property
    def edge_set(self):
        return frozenset(self.edges)

    def canonical_vertices(self):
        """Lexicographically minimal rotation/reflection of the vertex sequence."""
        if self._canon is None:
            vs = self.vertices
            k = len(vs)
            best = None
            for seq in (vs, vs[::-1]):
                for s in range(k):
                    cand = seq[s:] + seq[:s]
                    if best is None or cand < best:
                        best = cand
            self._canon = best
        return self._canon

    def canonical_key(self):
        """Ordering key: (length, canonical vertex tuple)."""
        return (len(self.edges), self.canonical_vertices())

    def __eq__(self, other):
        return isinstance(other, CycleWitness) and self.edge_set == other.edge_set

    def __hash__(self):
        return hash(self.edge_set)

    def __repr__(self):
        return f"CycleWitness(edges={self.edges}, vertices={self.vertices})"


def shortest_cycle(g):
    """Some shortest simple cycle of g, or None if g is a forest.

    Exact: for every edge (u, v) a BFS in g minus that edge measures the
    shortest cycle through it.
    """
    best_len = None
    best = None
    n = g.vertex_count
    for e in range(g.edge_count):
        u, v = g.endpoints(e)
        # BFS from u to v avoiding edge e.
        parent = [-1] * n
        parent_edge = [-1] * n
        dist = [-1] * n
        dist[u] = 0
        queue = [u]
        limit = None if best_len is None else best_len - 2
        while queue:
            nxt = []
            for x in queue:
                if limit is not None and dist[x] >= limit:
                    continue
                for y, ei in g.adj[x]:
                    if ei == e or dist[y] >= 0:
                        continue
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    parent_edge[y] = ei
                    if y == v:
                        nxt = []
                        queue = []
                        break
                    nxt.append(y)
                else:
                    continue
                break
            queue = nxt
        if dist[v] > 0:
            length = dist[v] + 1
            if best_len is None or length < best_len:
                path_edges = []
                x = v
                while x != u:
                    path_edges.append(parent_edge[x])
                    x = parent[x]
                best = CycleWitness(g, [e] + path_edges)
                best_len = length
                if best_len == 3:
                    break
    return best


def girth(g):
    """Length of the shortest simple cycle; ACYCLIC (math.inf) for forests."""
    c = shortest_cycle(g)
    return ACYCLIC if c is None else len(c)


def count_paths(g, u, v, r):
    """Exact number of simple u-v paths with r edges. Requires u != v."""
    if u == v:
        raise GraphError("count_paths requires distinct endpoints")
    if r < 1:
        raise GraphError("path length must be positive")
    visited = bytearray(g.vertex_count)
    visited[u] = 1
    adj = g.adj

    def dfs(cur, left):
        total = 0
        if left == 1:
            for nbr, _ in adj[cur]:
                if nbr == v:
                    total += 1
            return total
        for nbr, _ in adj[cur]:
            if nbr != v and not visited[nbr]:
                visited[nbr] = 1
                total += dfs(nbr, left - 1)
                visited[nbr] = 0
        return total

    return dfs(u, r)


def count_cycles_through_edge(g, e, k):
    """Exact number of simple k-cycles containing edge e (k >= 3).

    Each geometric cycle is counted once: a k-cycle through e = uv is
    exactly a simple u-v path with k-1 edges (such a path cannot reuse e).
    """
    if k < 3:
        raise GraphError("cycle length must be at least 3")
    u, v = g.endpoints(e)
    return count_paths(g, u, v, k - 1)


def contains_subgraph(g, h):
    """True iff g contains a (not necessarily induced) copy of h.

    Plain backtracking with degree pruning; intended for small patterns
    (about 10 vertices or fewer), e.g. complete bipartite K_{k,k}.
    """
    if h.vertex_count > g.vertex_count or h.edge_count > g.edge_count:
        return False
    non_iso = [v for v in range(h.vertex_count) if h.degree(v) > 0]
    if not non_iso:
        return True
    # Order pattern vertices so each one after the first touches a placed one.
    order = [max(non_iso, key=h.degree)]
    placed = {order[0]}
    rest = [v for v in non_iso if v not in placed]
    while rest:
        nxt = max(rest, key=lambda v: (sum((w in placed) for w, _ in h.adj[v]),
                                       h.degree(v), -v))
        order.append(nxt)
        placed.add(nxt)
        rest.remove(nxt)
    mapping = {}
    used = [False] * g.vertex_count

    def place(pos):
        if pos == len(order):
            return True
        hv = order[pos]
        need = h.degree(hv)
        anchors = [(mapping[w], eh) for w, eh in h.adj[hv] if w in mapping]
        for gv in range(g.vertex_count):
            if used[gv] or g.degree(gv) < need:
                continue
            if all(g.edge_between(gv, ga) is not None for ga, _ in anchors):
                mapping[hv] = gv
                used[gv] = True
                if place(pos + 1):
                    return True
                del mapping[hv]
                used[gv] = False
        return False

    return place(0)


def edge_induced_subgraph(g, edge_subset):
    """Subgraph on the same vertex set keeping only the given edge indices.

    The result's edge_ids record the original indices (sorted ascending),
    so colorings and witnesses can be transferred back and forth.
    """
    idxs = sorted(set(edge_subset))
    for i in idxs:
        if not (0 <= i < g.edge_count):
            raise GraphError(f"edge index {i} out of range")
    return Graph(g.vertex_count,
                 [g.edges[i] for i in idxs],
                 edge_ids=[g.edge_ids[i] for i in idxs])


def enumerate_cycles(g, max_len=None):
    """Every simple cycle of length <= max_len, each exactly once.

    Exponential in general; intended for small graphs (the oracle behind
    the verifier tests). Cycles are rooted at their minimal vertex and the
    traversal direction is fixed, so each geometric cycle appears once.
    """
    n = g.vertex_count
    bound = n if max_len is None else min(max_len, n)
    out = []
    if bound < 3:
        return out
    adj_sorted = [sorted(nbr for nbr, _ in g.adj[v]) for v in range(n)]
    path = []
    on_path = set()

    def dfs(root, cur):
        for nbr in adj_sorted[cur]:
            if nbr == root:
                if len(path) >= 3 and path[1] < path[-1]:
                    out.append(CycleWitness.from_vertices(g, tuple(path)))
            elif nbr > root and nbr not in on_path and len(path) < bound:
                path.append(nbr)
                on_path.add(nbr)
                dfs(root, nbr)
                path.pop()
                on_path.remove(nbr)

    for root in range(n):
        path = [root]
        on_path = {root}
        dfs(root, root)
    return out
