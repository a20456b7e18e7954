"""Feasibility solvers for the palette-size inequalities.

Everything here is scalar numerics around three coloring regimes:

* ``solve_forbidden_h``: minimal free-color factor c such that a uniformly
  random (2+c)*Delta edge coloring of a K_{k,k}-free graph survives the
  weighted cut analysis, i.e. minimize  1/y + beta*Delta^(-delta) * y^2/(1-y^2)
  over the substitution variable y = omega/(2+c) in (0, 1).
* ``short_cycle_params``: the regime that breaks bichromatic cycles of
  length at most 2L in graphs of girth > 2r, with y = 2/eps and c = eps.
* ``long_cycle_params``: the sparse-recoloring regime that destroys
  bichromatic cycles of length at least L with about eps*Delta new colors,
  keeping each old color with probability 1-p.

All logarithms are natural.  No logarithm base is canonical here; any
other base rescales the coefficients a_eps and b_eps consistently, and
only their ratio and the verified inequalities matter.

Coefficients are exposed exactly as the expressions they come from:
a_eps = 1/(2 ln(2/eps)),  b_eps = 1/ln(p_eps/(eps^2 (1-p_eps))),
d_eps = b_eps * ln(4/eps^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BoundResult:
    """Output of a feasibility query.

    c is the free-color factor, y the substitution variable, omega the
    certified edge weight (>= 1 when feasible), palette_size the integer
    palette (additive new-color count for the long-cycle regime), L the
    cycle-length threshold and p the recoloring probability where the
    regime defines them.
    """
    feasible: bool
    c: float
    y: float
    omega: float
    palette_size: int
    L: int | None = None
    p: float | None = None


@dataclass(frozen=True)
class GirthRequirement:
    """Smallest girth parameter r making the two-phase pipeline close.

    L1 is the short-cycle guarantee (no bichromatic cycles of length <= L1
    after phase 1), L2 the long-cycle threshold of phase 2; the pipeline
    is feasible when L1 > L2 so the two ranges overlap.
    """
    r: int
    girth: int
    L1: float
    L2: float
    feasible: bool
    a: float
    b: float
    d: float


def _iceil(x, eps=1e-9):
    """Ceiling that forgives float noise just below an integer."""
    return math.ceil(x - eps)


def a_coeff(eps):
    """Short-cycle length coefficient a_eps = 1/(2 ln(2/eps)); needs eps < 2."""
    if not 0 < eps < 2:
        raise ValueError("a_eps needs eps in (0, 2)")
    return 1.0 / (2.0 * math.log(2.0 / eps))


def recolor_probability(eps):
    """The canonical keep/recolor mix p_eps = eps/(eps/2 + 1/eps)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    return eps / (eps / 2.0 + 1.0 / eps)


def b_coeff(eps):
    """Long-cycle length coefficient b_eps = 1/ln(p_eps/(eps^2 (1-p_eps)))."""
    p = recolor_probability(eps)
    ratio = p / (eps * eps * (1.0 - p))
    if ratio <= 1.0:
        raise ValueError("b_eps undefined: log argument must exceed 1")
    return 1.0 / math.log(ratio)


def d_coeff(eps):
    """Additive long-cycle term d_eps = b_eps * ln(4/eps^2)."""
    return b_coeff(eps) * math.log(4.0 / (eps * eps))


def check_epsilon_smallness(eps):
    """Truth of  2 eps^2 + eps^5/(1-eps^2) + 2 eps^2/(1-eps) <= eps/4.

    This is the slack condition under which the long-cycle regime's
    geometric tails are dominated. Holds for all small eps (left side is
    O(eps^2)); fails already at eps = 0.1.
    """
    if not 0 < eps < 1:
        raise ValueError("smallness check needs eps in (0, 1)")
    lhs = 2 * eps ** 2 + eps ** 5 / (1 - eps ** 2) + 2 * eps ** 2 / (1 - eps)
    return lhs <= eps / 4.0


def _golden_min(f, lo, hi, tol=1e-9, max_iter=300):
    """Golden-section minimum of a unimodal f on [lo, hi].

    Ties and flat stretches resolve toward the smaller argument.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = a if f(a) <= f(b) else b
    return x, f(x)


def eval_lcl_rhs_no_h(delta, k, c, omega):
    """Closed form of the weight inequality's right-hand side in the
    forbidden-K_{k,k} regime:

        1 + beta*Delta^(-delta) * y^2/(1-y^2) + 2y,   y = omega/(2+c).

    Requires y < 1 (the underlying geometric series diverges otherwise).
    The closed form is cross-checked against the summed series to 1e-9.
    """
    closed = _rhs_no_h_closed(delta, k, c, omega)
    series = eval_lcl_rhs_no_h_series(delta, k, c, omega)
    if abs(closed - series) > 1e-9 * max(1.0, abs(closed)):
        raise ArithmeticError(
            f"closed form {closed} and series {series} disagree beyond 1e-9")
    return closed


def _rhs_no_h_closed(delta, k, c, omega):
    from .extremal import kst_constants
    y = omega / (2.0 + c)
    if y >= 1.0:
        raise ValueError("omega/(2+c) must be below 1")
    beta = kst_constants(k).beta
    return 1.0 + beta * delta ** (-1.0 / k) * y * y / (1.0 - y * y) + 2.0 * y


def eval_lcl_rhs_no_h_series(delta, k, c, omega, tol=1e-15, max_terms=100000):
    """Independent evaluation of the same right-hand side by summing the
    per-cycle-length geometric series term by term until convergence."""
    from .extremal import kst_constants
    y = omega / (2.0 + c)
    if y >= 1.0:
        raise ValueError("omega/(2+c) must be below 1")
    beta = kst_constants(k).beta
    scale = beta * delta ** (-1.0 / k)
    total = 1.0 + 2.0 * y
    term = y * y
    for _ in range(max_terms):
        contrib = scale * term
        total += contrib
        if contrib <= tol * max(total, 1.0):
            break
        term *= y * y
    return total


def solve_forbidden_h(delta, k, tol=1e-9):
    """Minimal feasible free-color factor c for the forbidden-K_{k,k} regime.

    Minimizes 1/y + beta*Delta^(-delta)*y^2/(1-y^2) over y in (0,1) by
    golden-section search (the function is convex). The weight constraint
    omega = (2+c)*y >= 1 is implied by c >= 1/y and re-checked.
    """
    if delta < 2:
        raise ValueError("delta (max degree) must be at least 2")
    from .extremal import kst_constants
    beta = kst_constants(k).beta
    coef = beta * delta ** (-1.0 / k)

    def f(y):
        return 1.0 / y + coef * y * y / (1.0 - y * y)

    y, c = _golden_min(f, 1e-12, 1.0 - 1e-12, tol=tol)
    omega = (2.0 + c) * y
    if omega < 1.0 - 1e-9:
        raise ArithmeticError("internal: omega >= 1 should be automatic")
    return BoundResult(feasible=True, c=c, y=y, omega=omega,
                       palette_size=_iceil((2.0 + c) * delta))


def verify_short_inequality(delta, eps, r, L):
    """Term-by-term check of the short-cycle condition with the finite sum:

        c >= 1/y + Delta^(-r+1) * sum_{t=r+1}^{L} y^(2t-3),  y = 2/eps, c = eps.
    """
    y = 2.0 / eps
    total = sum(delta ** (-r + 1.0) * y ** (2 * t - 3) for t in range(r + 1, L + 1))
    return eps >= 1.0 / y + total


def short_cycle_params(delta, eps, r):
    """Parameters of the short-cycle regime: y = 2/eps, c = eps and

        L = floor( (2 ln(2/eps))^-1 (r-2) ln(Delta) ) + 1.

    Feasible when eps/2 >= Delta^(-r+2) * (2/eps)^(2L-3) and L <= Delta
    (the bound chain needs y > 1, hence the rejection of eps >= 2).
    Accepts r >= 2; at r = 2 the length coefficient vanishes and L = 1.
    """
    if not 0 < eps < 2:
        raise ValueError("short-cycle regime needs eps in (0, 2)")
    if r < 2:
        raise ValueError("girth parameter r must be at least 2")
    if delta < 2:
        raise ValueError("delta (max degree) must be at least 2")
    y = 2.0 / eps
    L = math.floor(a_coeff(eps) * (r - 2) * math.log(delta)) + 1
    feasible = (L <= delta) and (eps / 2.0 >= delta ** (-r + 2.0) * y ** (2 * L - 3))
    if feasible:
        assert verify_short_inequality(delta, eps, r, L)
    return BoundResult(feasible=feasible, c=eps, y=y, omega=(2.0 + eps) * y,
                       palette_size=_iceil((2.0 + eps) * delta), L=L)


def verify_long_inequality(delta, eps, p, L):
    """Check of the long-cycle condition at the substituted point:

        eps/p >= 1/eps + eps/4 + (Delta/eps) * (eps^2 (1-p)/p)^L.
    """
    return eps / p >= 1.0 / eps + eps / 4.0 + (delta / eps) * (
        eps * eps * (1.0 - p) / p) ** L


def long_cycle_params(delta, eps):
    """Parameters of the long-cycle recoloring regime:

        p = eps/(eps/2 + 1/eps),
        L = ceil( b_eps * ln(Delta) + d_eps ),

    with about eps*Delta new colors (palette_size is the additive new
    color count). Requires eps to pass check_epsilon_smallness.
    """
    if delta < 2:
        raise ValueError("delta (max degree) must be at least 2")
    if not check_epsilon_smallness(eps):
        raise ValueError(f"eps={eps} fails the smallness condition")
    p = recolor_probability(eps)
    L = _iceil(b_coeff(eps) * math.log(delta) + d_coeff(eps))
    feasible = verify_long_inequality(delta, eps, p, L)
    # The implied edge weight is omega = c*y/p with y = c = eps.
    omega = eps * eps / p
    assert omega >= 1.0 and (1.0 - p) * omega < 1.0 and p * omega / eps < 1.0
    assert eps < p / (eps * (1.0 - p))
    return BoundResult(feasible=feasible, c=eps, y=eps, omega=omega,
                       palette_size=max(1, _iceil(eps * delta)), L=L, p=p)


def girth_requirement(eps, delta):
    """Smallest r (and girth 2r+1) for which the two-phase pipeline can
    close at this eps, plus the resulting thresholds L1, L2 at this delta.

    Both phases run at eps/2. The pipeline closes when
    r - 2 > b_{eps/2} / (2 a_{eps/2}) and, at the given delta, L1 > L2 with
    L1 = 2 a_{eps/2} (r-2) ln(Delta) + 2 and L2 = b_{eps/2} ln(Delta) + d_{eps/2}.
    Precondition failures of either regime at eps/2 propagate as ValueError.
    """
    half = eps / 2.0
    if not check_epsilon_smallness(half):
        raise ValueError(f"eps/2={half} fails the smallness condition")
    a = a_coeff(half)
    b = b_coeff(half)
    d = d_coeff(half)
    q = b / (2.0 * a)
    r = math.floor(q) + 3  # smallest integer r with r-2 > q
    L1 = 2.0 * a * (r - 2) * math.log(delta) + 2.0
    L2 = b * math.log(delta) + d
    return GirthRequirement(r=r, girth=2 * r + 1, L1=L1, L2=L2,
                            feasible=L1 > L2, a=a, b=b, d=d)
