"""Exhaustive verification of the local cut lemma on hypercube digraphs.

An instance fixes a small graph, a product distribution over its edge
colorings, a monotone validity predicate on (outcome, edge subset), and a
family of cut edges for every hypercube edge (S + {e}, S).  The outcome
space is enumerated in full, so probabilities are exact rationals built
from integer counts.  numpy is used only for boolean/integer counting;
no floating point enters any probability.

Two builders mirror the two probabilistic constructions used by the
coloring solvers:

* ``build_acyclic_instance``: uniform palette; a subset is valid when the
  coloring restricted to it is acyclic; cut edges are one per-hyperedge
  adjacency event plus one per even cycle through the added edge.
* ``build_recolor_instance``: keep/new product distribution over a proper
  base coloring; validity additionally tracks which bichromatic cycles
  are new and which are too long; cut edges come in the five flavors the
  recoloring analysis distinguishes (tagged type1 .. type5).

Intended scale: ground sets of at most ~12 edges and outcome spaces below
the enumerability cap (2^24 atoms by default); the full hypothesis check
additionally walks all 2^|E| subsets, so keep |E| small (<= 8 or so).

Conditioning on zero-probability events follows the convention
Pr(B'|B) = 0 when Pr(B) = 0, preserving Pr(B'|B) Pr(B) = Pr(B' and B).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coloring import ColoringError, is_bichromatic
from .graphs import enumerate_cycles

MAX_OUTCOMES = 1 << 24
_BLOCK = 1 << 20


class EnumerationCapError(ValueError):
    """Raised when an instance would exceed the enumerability caps."""


@dataclass(frozen=True)
class CutEdge:
    """One multi-edge of the cut family at a hyperedge (S + {e}, S).

    kind tags the flavor; pred indexes the instance's predicate table
    (truth per outcome); edges lists the involved ground elements.
    """
    kind: str
    pred: int
    edges: tuple[int, ...]


class WeightAssignment:
    """Edge weights on the hypercube: a single constant, or a table keyed
    by (lower subset mask, added element) per simple edge.

    All weights must be >= 1. Values are coerced to Fraction so the
    checks stay exact; pass Fractions (or ints) for full control.
    """

    def __init__(self, constant=None, table=None):
        if (constant is None) == (table is None):
            raise ValueError("give exactly one of constant or table")
        if constant is not None:
            self.constant = Fraction(constant)
            if self.constant < 1:
                raise ValueError("weights must be >= 1")
            self.table = None
        else:
            self.constant = None
            self.table = {k: Fraction(v) for k, v in table.items()}
            if any(v < 1 for v in self.table.values()):
                raise ValueError("weights must be >= 1")
        self._min_cache = {}

    def edge_weight(self, s_mask, elem):
        """Weight of the hypercube edge (S + {elem}, S)."""
        if self.constant is not None:
            return self.constant
        try:
            return self.table[(s_mask, elem)]
        except KeyError:
            raise KeyError(f"no weight for hypercube edge (S|{{{elem}}}, S) "
                           f"with S mask {s_mask:#x}") from None

    def min_path_weight(self, x_mask, z_mask):
        """Minimal product of edge weights over directed paths from X to Z.

        In the hypercube Z is reachable from X iff Z is a subset of X, and
        with a constant weight the minimum is constant^|X \\ Z|.
        """
        if z_mask & ~x_mask:
            raise ValueError("target must be a subset of the source")
        if self.constant is not None:
            return self.constant ** (x_mask ^ z_mask).bit_count()
        key = (x_mask, z_mask)
        cached = self._min_cache.get(key)
        if cached is not None:
            return cached
        if x_mask == z_mask:
            result = Fraction(1)
        else:
            result = None
            diff = x_mask & ~z_mask
            i = 0
            d = diff
            while d:
                if d & 1:
                    lower = x_mask & ~(1 << i)
                    cand = (self.edge_weight(lower, i)
                            * self.min_path_weight(lower, z_mask))
                    if result is None or cand < result:
                        result = cand
                d >>= 1
                i += 1
        self._min_cache[key] = result
        return result


class CutInstance:
    """A fully enumerated hypercube cut-digraph instance.

    Holds per-outcome predicate arrays, per-subset validity counts and
    joint (predicate and valid) counts; everything downstream is exact
    Fraction arithmetic over these integer counts.
    """

    def __init__(self, graph, n_outcomes, total_mass, masses, bad_events,
                 predicates, cut_edges, description):
        self.graph = graph
        self.n_ground = graph.edge_count
        self.n_outcomes = n_outcomes
        self.total_mass = total_mass
        self._masses = masses          # int64 array or None for uniform
        self._bad = bad_events         # list of (subset mask, bool array)
        self._preds = predicates       # list of bool arrays
        self._cuts = cut_edges         # per ground element: list[CutEdge]
        self.description = description
        self._valid_arrays = {}
        self._valid_counts = {}
        self._joint = {}

    # -- counting ---------------------------------------------------------

    def _count(self, arr):
        if self._masses is None:
            return int(np.count_nonzero(arr))
        return int(self._masses[arr].sum())

    def _valid_array(self, mask):
        arr = self._valid_arrays.get(mask)
        if arr is None:
            arr = np.ones(self.n_outcomes, dtype=bool)
            for ev_mask, ev in self._bad:
                if ev_mask & ~mask == 0:
                    arr &= ~ev
            self._valid_arrays[mask] = arr
        return arr

    def valid_count(self, mask):
        c = self._valid_counts.get(mask)
        if c is None:
            c = self._count(self._valid_array(mask))
            self._valid_counts[mask] = c
        return c

    def joint_count(self, pred, mask):
        """Mass of outcomes where predicate `pred` holds and `mask` is valid."""
        key = (pred, mask)
        c = self._joint.get(key)
        if c is None:
            c = self._count(self._preds[pred] & self._valid_array(mask))
            self._joint[key] = c
        return c

    def prob_valid(self, mask):
        """Exact probability that the outcome is valid on the subset."""
        self._check_mask(mask)
        return Fraction(self.valid_count(mask), self.total_mass)

    def cut_edges(self, elem):
        """Cut family at any hyperedge (S + {elem}, S); it does not depend on S."""
        return self._cuts[elem]

    def all_masks(self):
        return range(1 << self.n_ground)

    def hyperedges(self):
        """All (elem, s_mask) with elem not in s_mask."""
        full = (1 << self.n_ground) - 1
        for elem in range(self.n_ground):
            bit = 1 << elem
            rest = full ^ bit
            s = rest
            while True:
                yield elem, s
                if s == 0:
                    break
                s = (s - 1) & rest

    def _check_mask(self, mask):
        if not 0 <= mask < (1 << self.n_ground):
            raise ValueError(f"subset mask {mask:#x} out of range")


# -- module-level operations ----------------------------------------------

def exact_prob_valid(inst, mask):
    """Exact rational probability that the subset is valid."""
    return inst.prob_valid(mask)


def min_weight(w, x_mask, z_mask):
    """Minimal path weight from subset X down to subset Z (Z subset of X)."""
    return w.min_path_weight(x_mask, z_mask)


def risk(inst, elem, s_mask, cut_edge, z_mask, w):
    """Conditional cut probability times the path weight:

        Pr(cut_edge in F | Z valid) * min_weight(S + {elem}, Z),

    for Z a subset of S. Zero when Pr(Z valid) = 0.
    """
    if (1 << elem) & s_mask:
        raise ValueError("elem must lie outside the lower subset")
    if z_mask & ~s_mask:
        raise ValueError("z must be a subset of the hyperedge's lower set")
    denom = inst.valid_count(z_mask)
    if denom == 0:
        return Fraction(0)
    num = inst.joint_count(cut_edge.pred, z_mask)
    return Fraction(num, denom) * w.min_path_weight(s_mask | (1 << elem), z_mask)


def min_risk(inst, elem, s_mask, cut_edge, w):
    """Minimum of risk over all subsets Z of S (exhaustive)."""
    best = None
    z = s_mask
    while True:
        r = risk(inst, elem, s_mask, cut_edge, z, w)
        if best is None or r < best:
            best = r
        if z == 0:
            break
        z = (z - 1) & s_mask
    return best


@dataclass(frozen=True)
class HypothesisReport:
    passed: bool
    min_slack: Fraction
    worst: tuple[int, int] | None  # (elem, s_mask) attaining the slack


def check_hypothesis(inst, w):
    """For every hyperedge, the weight must dominate 1 plus the summed
    minimal risks of its parallel cut edges:

        w(S + {e}, S) >= 1 + sum over cut edges of min_risk.

    Returns the pass flag together with the tightest slack and where it
    occurs (negative slack = the worst violating hyperedge).
    """
    min_slack = None
    worst = None
    for elem, s_mask in inst.hyperedges():
        rhs = Fraction(1)
        for ce in inst.cut_edges(elem):
            rhs += min_risk(inst, elem, s_mask, ce, w)
        slack = w.edge_weight(s_mask, elem) - rhs
        if min_slack is None or slack < min_slack:
            min_slack = slack
            worst = (elem, s_mask)
    if min_slack is None:  # no hyperedges (edgeless ground set)
        return HypothesisReport(True, Fraction(0), None)
    return HypothesisReport(min_slack >= 0, min_slack, worst)


def check_conclusion(inst, w):
    """Verify the lemma's conclusion with exact probabilities:

    for every hyperedge, Pr(S valid) <= Pr(S + {e} valid) * w(edge), and
    between the full set and the empty set,
    Pr(all valid) >= Pr(empty valid) / min_weight(full, empty).
    """
    for elem, s_mask in inst.hyperedges():
        upper = s_mask | (1 << elem)
        lhs = Fraction(inst.valid_count(s_mask), inst.total_mass)
        rhs = Fraction(inst.valid_count(upper), inst.total_mass) * w.edge_weight(s_mask, elem)
        if lhs > rhs:
            return False
    full = (1 << inst.n_ground) - 1
    if inst.valid_count(0) > 0:
        lower_bound = inst.prob_valid(0) / w.min_path_weight(full, 0)
        if inst.prob_valid(full) < lower_bound:
            return False
    return True


def validate_cut(inst):
    """Exhaustively confirm the cut property: for every outcome and every
    hyperedge whose head (S) is valid but whose tail (S + {e}) is not,
    some parallel cut edge's predicate holds at that outcome."""
    for elem, s_mask in inst.hyperedges():
        upper = s_mask | (1 << elem)
        violated = inst._valid_array(s_mask) & ~inst._valid_array(upper)
        if not violated.any():
            continue
        covered = np.zeros(inst.n_outcomes, dtype=bool)
        for ce in inst.cut_edges(elem):
            covered |= inst._preds[ce.pred]
        if (violated & ~covered).any():
            return False
    return True


def validate_out_closed(inst):
    """Exhaustively confirm monotonicity: a valid subset stays valid after
    removing an element (validity is out-closed along hypercube edges)."""
    for elem, s_mask in inst.hyperedges():
        upper = s_mask | (1 << elem)
        if (inst._valid_array(upper) & ~inst._valid_array(s_mask)).any():
            return False
    return True


# -- builders ---------------------------------------------------------------

def _check_caps(n_edges, n_outcomes, max_outcomes):
    if n_edges > 12:
        raise EnumerationCapError(f"ground set too large: {n_edges} edges (max 12)")
    if n_outcomes > max_outcomes:
        raise EnumerationCapError(
            f"outcome space too large: {n_outcomes} > cap {max_outcomes}")


def _adjacent_pairs(g):
    pairs = []
    edge_adj = g.edge_adjacency()
    for e in range(g.edge_count):
        for f in edge_adj[e]:
            if f > e:
                pairs.append((e, f))
    return pairs


def _digit_equal(base, n_outcomes, e, f):
    """Boolean array: outcome digit of edge e equals digit of edge f."""
    out = np.empty(n_outcomes, dtype=bool)
    pe, pf = base ** e, base ** f
    for lo in range(0, n_outcomes, _BLOCK):
        hi = min(lo + _BLOCK, n_outcomes)
        idx = np.arange(lo, hi, dtype=np.int64)
        out[lo:hi] = (idx // pe % base) == (idx // pf % base)
    return out


def _digits(base, n_outcomes, e):
    out = np.empty(n_outcomes, dtype=np.int64)
    pe = base ** e
    for lo in range(0, n_outcomes, _BLOCK):
        hi = min(lo + _BLOCK, n_outcomes)
        idx = np.arange(lo, hi, dtype=np.int64)
        out[lo:hi] = idx // pe % base
    return out


def _class_split(cycle, elem=None):
    """Split a cycle's edges into the two alternation classes.

    With elem given, the first class is the one containing elem (the added
    edge plays the role of the traversal's first edge).
    """
    es = cycle.edges
    c0, c1 = list(es[0::2]), list(es[1::2])
    if elem is not None and elem in c1:
        c0, c1 = c1, c0
    return c0, c1


def build_acyclic_instance(g, palette, max_outcomes=MAX_OUTCOMES):
    """Instance for the uniform random coloring whose validity predicate is
    "the coloring restricted to the subset is acyclic".

    Cut edges at every hyperedge (S + {e}, S): one adjacency edge (in the
    cut when some edge adjacent to e shares e's color) and one edge per
    even cycle through e (in the cut when that cycle's two alternation
    classes are each monochromatic).
    """
    m = g.edge_count
    if palette < 1:
        raise ValueError("palette must be positive")
    n_outcomes = palette ** m
    _check_caps(m, n_outcomes, max_outcomes)

    pairs = _adjacent_pairs(g)
    pair_arrays = {p: _digit_equal(palette, n_outcomes, *p) for p in pairs}
    cycles = enumerate_cycles(g)
    even_cycles = [c for c in cycles if len(c) % 2 == 0]

    preds = []
    bad = []

    def add_pred(arr):
        preds.append(arr)
        return len(preds) - 1

    for (e, f), arr in pair_arrays.items():
        bad.append(((1 << e) | (1 << f), arr))

    cycle_pred = {}
    for c in even_cycles:
        c0, c1 = _class_split(c)
        arr = np.ones(n_outcomes, dtype=bool)
        for cls in (c0, c1):
            for other in cls[1:]:
                pk = (min(cls[0], other), max(cls[0], other))
                arr &= pair_arrays.get(pk) if pk in pair_arrays else \
                    _digit_equal(palette, n_outcomes, *pk)
        mask = 0
        for e in c.edges:
            mask |= 1 << e
        bad.append((mask, arr))
        cycle_pred[c.edge_set] = add_pred(arr)

    edge_adj = g.edge_adjacency()
    cuts = []
    for e in range(m):
        lst = []
        nbrs = edge_adj[e]
        if nbrs:
            arr = np.zeros(n_outcomes, dtype=bool)
            for f in nbrs:
                pk = (min(e, f), max(e, f))
                arr |= pair_arrays[pk]
            lst.append(CutEdge("adjacent", add_pred(arr), tuple(nbrs)))
        else:
            lst.append(CutEdge("adjacent", add_pred(np.zeros(n_outcomes, dtype=bool)),
                               ()))
        for c in even_cycles:
            if e in c.edge_set:
                lst.append(CutEdge("cycle", cycle_pred[c.edge_set], c.edges))
        cuts.append(lst)

    return CutInstance(g, n_outcomes, n_outcomes, None, bad, preds, cuts,
                       {"kind": "acyclic", "palette": palette})


def build_recolor_instance(g, psi, p, new_colors, length_threshold,
                           max_outcomes=MAX_OUTCOMES):
    """Instance for the keep/new recoloring of a proper base coloring psi.

    Each edge independently keeps its base color with probability 1-p or
    takes each of the `new_colors` fresh colors with probability
    p/new_colors. A subset is valid when the restricted coloring is
    proper, every bichromatic cycle inside it was already bichromatic
    under psi, and none of its bichromatic cycles has length >=
    length_threshold.

    Cut edges carry the five tags of the recoloring analysis:
      type1  per adjacent edge pair (both ends moved to the same new color),
      type2  per base-bichromatic cycle of length >= threshold (all kept),
      type3  per even cycle (bichromatic in two new colors),
      type4/type5  per even cycle whose alternation class through the
        added edge (resp. the other class) is monochromatic under psi
        (that class kept, the other moved to one new color).
    """
    m = g.edge_count
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    if new_colors < 1:
        raise ValueError("need at least one new color")
    if len(psi.colors) != m or not psi.is_total():
        raise ColoringError("base coloring must be total on the graph")
    from .coloring import is_proper
    if not is_proper(g, psi):
        raise ColoringError("base coloring must be proper")

    base = new_colors + 1  # digit 0 = keep, digit j >= 1 = new color j-1
    n_outcomes = base ** m
    _check_caps(m, n_outcomes, max_outcomes)

    # Per-edge probability numerators over denominator p.denominator*new_colors.
    denom_unit = p.denominator * new_colors
    keep_num = (p.denominator - p.numerator) * new_colors
    new_num = p.numerator
    total_mass = denom_unit ** m
    if total_mass > (1 << 62):
        raise EnumerationCapError("probability denominators overflow the mass cap")
    masses = np.ones(n_outcomes, dtype=np.int64)
    digits = {}
    for e in range(m):
        d = _digits(base, n_outcomes, e)
        digits[e] = d
        masses *= np.where(d == 0, keep_num, new_num)

    kept = {e: digits[e] == 0 for e in range(m)}

    def same_new(e, f):
        # Equal colors after recoloring is only possible via the same new
        # color: psi is proper (distinct base colors on adjacent edges) and
        # base/new palettes are disjoint.
        return (digits[e] == digits[f]) & ~kept[e]

    def phi_equal(e, f):
        # For same-class cycle edges (possibly non-adjacent): equal iff both
        # kept with equal base colors, or both on the same new color.
        both_kept = kept[e] & kept[f] if psi.colors[e] == psi.colors[f] else \
            np.zeros(n_outcomes, dtype=bool)
        return both_kept | same_new(e, f)

    preds = []

    def add_pred(arr):
        preds.append(arr)
        return len(preds) - 1

    pairs = _adjacent_pairs(g)
    conflict = {}
    for (e, f) in pairs:
        conflict[(e, f)] = same_new(e, f)

    cycles = enumerate_cycles(g)
    even_cycles = [c for c in cycles if len(c) % 2 == 0]
    psi_bich = {c.edge_set: is_bichromatic(c, psi) for c in cycles}

    def class_eq(cls):
        arr = np.ones(n_outcomes, dtype=bool)
        for other in cls[1:]:
            arr &= phi_equal(cls[0], other)
        return arr

    def all_kept(es):
        arr = np.ones(n_outcomes, dtype=bool)
        for e in es:
            arr &= kept[e]
        return arr

    def one_new(cls):
        arr = np.ones(n_outcomes, dtype=bool)
        for e in cls:
            arr &= ~kept[e]
        for other in cls[1:]:
            arr &= digits[cls[0]] == digits[other]
        return arr

    bad = []
    for (e, f), arr in conflict.items():
        bad.append(((1 << e) | (1 << f), arr))

    bich_arr = {}
    for c in even_cycles:
        c0, c1 = _class_split(c)
        arr = class_eq(c0) & class_eq(c1)
        bich_arr[c.edge_set] = arr
        if psi_bich[c.edge_set] and len(c) < length_threshold:
            continue  # an already-bichromatic short cycle never violates
        mask = 0
        for e in c.edges:
            mask |= 1 << e
        bad.append((mask, arr))

    # Shared predicate tables, built lazily per cycle.
    type1_pred = {pk: add_pred(arr) for pk, arr in conflict.items()}
    type2_pred = {}
    type3_pred = {}
    type45_pred = {}
    for c in even_cycles:
        key = c.edge_set
        if psi_bich[key] and len(c) >= length_threshold:
            type2_pred[key] = add_pred(all_kept(c.edges))
        type3_pred[key] = add_pred(one_new(list(c.edges[0::2])) &
                                   one_new(list(c.edges[1::2])))

    def type45(c, cls, other):
        k = (c.edge_set, frozenset(cls))
        if k not in type45_pred:
            type45_pred[k] = add_pred(all_kept(cls) & one_new(other))
        return type45_pred[k]

    edge_adj = g.edge_adjacency()
    cuts = []
    for e in range(m):
        lst = []
        for f in edge_adj[e]:
            pk = (min(e, f), max(e, f))
            lst.append(CutEdge("type1", type1_pred[pk], (e, f)))
        for c in even_cycles:
            if e not in c.edge_set:
                continue
            key = c.edge_set
            if key in type2_pred:
                lst.append(CutEdge("type2", type2_pred[key], c.edges))
            lst.append(CutEdge("type3", type3_pred[key], c.edges))
            cls_e, cls_other = _class_split(c, elem=e)
            if len({psi.colors[x] for x in cls_e}) == 1:
                lst.append(CutEdge("type4", type45(c, tuple(cls_e), tuple(cls_other)),
                                   c.edges))
            if len({psi.colors[x] for x in cls_other}) == 1:
                lst.append(CutEdge("type5", type45(c, tuple(cls_other), tuple(cls_e)),
                                   c.edges))
        cuts.append(lst)

    return CutInstance(g, n_outcomes, total_mass, masses, bad, preds, cuts,
                       {"kind": "recolor", "p": p, "new_colors": new_colors,
                        "length_threshold": length_threshold})
