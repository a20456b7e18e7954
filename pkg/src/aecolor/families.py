"""Named and random graph generators used by the CLI and the test corpus.

Random families are reproducible per seed. The girth-constrained
generator first tries plain rejection, then falls back to removing one
edge from a shortest cycle at a time until the girth target is met (the
result then has max degree <= d but is generally not regular).
"""

from __future__ import annotations

import random

from .graphs import ACYCLIC, Graph, GraphError, girth, shortest_cycle


class GenerationError(ValueError):
    """Raised when a generator spec is malformed or unsatisfiable."""


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    if n < 3:
        raise GenerationError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(n):
    """Star on n vertices: center 0 joined to n-1 leaves."""
    if n < 2:
        raise GenerationError("a star needs at least 2 vertices")
    return Graph(n, [(0, i) for i in range(1, n)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen():
    """Petersen graph: outer 5-cycle, inner pentagram, spokes. Girth 5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)


def heawood():
    """Heawood graph, the (3,6)-cage: 14-cycle plus LCF [5,-5]^7 chords."""
    edges = [(i, (i + 1) % 14) for i in range(14)]
    for i in range(0, 14, 2):
        edges.append(tuple(sorted((i, (i + 5) % 14))))
    return Graph(14, edges)


def theta(lengths):
    """Generalized theta graph: two hubs joined by internally disjoint
    paths of the given lengths. Girth = sum of the two smallest lengths."""
    lengths = list(lengths)
    if len(lengths) < 2 or any(l < 1 for l in lengths):
        raise GenerationError("theta needs at least two paths of length >= 1")
    if sorted(lengths)[:2] == [1, 1]:
        raise GenerationError("two length-1 paths would be parallel edges")
    edges = []
    nxt = 2  # 0 and 1 are the hubs
    for l in lengths:
        prev = 0
        for _ in range(l - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(nxt, edges)


def random_tree(n, seed):
    """Uniformly random labeled tree (random attachment to a random prior vertex)."""
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return Graph(n, edges)


def random_regular(n, d, seed, max_restarts=2000):
    """Random d-regular simple graph via pairing with restarts.

    Draws random stub pairs, rejecting loops and repeated edges locally;
    restarts the whole pairing when it gets stuck.
    """
    if n * d % 2 != 0:
        raise GenerationError("n*d must be even")
    if d >= n:
        raise GenerationError("need d < n")
    if d == 0:
        return Graph(n, [])
    rng = random.Random(seed)
    for _ in range(max_restarts):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        stuck = False
        while stubs:
            ok = False
            for _ in range(200):
                i = rng.randrange(len(stubs))
                j = rng.randrange(len(stubs))
                if i == j:
                    continue
                u, v = stubs[i], stubs[j]
                if u == v or (min(u, v), max(u, v)) in edges:
                    continue
                ok = True
                break
            if not ok:
                # Exhaustive fallback before giving up on this pairing.
                legal = None
                for a in range(len(stubs)):
                    for b in range(a + 1, len(stubs)):
                        u, v = stubs[a], stubs[b]
                        if u != v and (min(u, v), max(u, v)) not in edges:
                            legal = (a, b)
                            break
                    if legal:
                        break
                if legal is None:
                    stuck = True
                    break
                i, j = legal
                u, v = stubs[i], stubs[j]
            edges.add((min(u, v), max(u, v)))
            for k in sorted((i, j), reverse=True):
                stubs.pop(k)
        if not stuck:
            return Graph(n, sorted(edges))
    raise GenerationError(f"could not realize a {d}-regular graph on {n} vertices")


def random_girth(n, d, g_min, seed, rejection_tries=20):
    """Random graph with max degree <= d and girth >= g_min.

    Tries a few random d-regular draws first; if none meets the girth
    target, takes the last draw and deletes one random edge from a
    shortest cycle until the girth constraint holds.
    """
    rng = random.Random(seed)
    g = None
    for t in range(rejection_tries):
        g = random_regular(n, d, rng.randrange(2 ** 60))
        if girth(g) >= g_min:
            return g
    edges = list(g.edges)
    while True:
        h = Graph(n, edges)
        if girth(h) >= g_min:
            return h
        cyc = shortest_cycle(h)
        victim = h.edges[cyc.edges[rng.randrange(len(cyc.edges))]]
        edges.remove(victim)


def generate(spec):
    """Build a graph from a whitespace-separated generator spec string.

    Supported: "path n", "cycle n", "star n", "complete n",
    "complete-bipartite a b", "petersen", "heawood", "theta l1 l2 ...",
    "random-tree n seed", "random-regular n d seed",
    "random-girth n d g_min seed".
    """
    parts = spec.split()
    if not parts:
        raise GenerationError("empty generator spec")
    name, args = parts[0], parts[1:]

    def ints(k):
        if len(args) != k:
            raise GenerationError(f"{name} expects {k} integer argument(s)")
        try:
            return [int(a) for a in args]
        except ValueError as exc:
            raise GenerationError(f"{name}: non-integer argument") from exc

    if name == "path":
        return path(*ints(1))
    if name == "cycle":
        return cycle(*ints(1))
    if name == "star":
        return star(*ints(1))
    if name == "complete":
        return complete(*ints(1))
    if name == "complete-bipartite":
        return complete_bipartite(*ints(2))
    if name == "petersen":
        if args:
            raise GenerationError("petersen takes no arguments")
        return petersen()
    if name == "heawood":
        if args:
            raise GenerationError("heawood takes no arguments")
        return heawood()
    if name == "theta":
        if len(args) < 2:
            raise GenerationError("theta needs at least two path lengths")
        try:
            lengths = [int(a) for a in args]
        except ValueError as exc:
            raise GenerationError("theta: non-integer length") from exc
        return theta(lengths)
    if name == "random-tree":
        return random_tree(*ints(2))
    if name == "random-regular":
        return random_regular(*ints(3))
    if name == "random-girth":
        return random_girth(*ints(4))
    raise GenerationError(f"unknown generator: {name!r}")
