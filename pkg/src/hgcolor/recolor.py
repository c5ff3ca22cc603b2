"""Two-phase random recoloring for r-colorings and list colorings.

Phase 1 colors every vertex independently and uniformly (from {1..r}, or
from its list).  Phase 2 walks the vertices once in ascending index order;
vertex i draws a proposal eta_i (each admissible color with probability
p_recolor, no proposal with the remaining mass) and switches to it exactly
when three things line up:

* D_i: some edge through i was monochromatic in the Phase-1 coloring and
  every vertex of it processed so far has kept that color;
* eta_i is an actual proposal (nonzero);
* not A_i: no edge f through i is almost monochromatic in color u = eta_i
  (its count of non-u vertices under Phase 1 lies in [1, t+omega-2]) while
  all other vertices of f carry u (final colors before i, Phase-1 colors
  after i), i.e. the switch would complete f in u; vertices with
  eta_i = xi_i never switch colors in effect.

Otherwise the vertex keeps its Phase-1 color.  The walk can still leave
monochromatic edges behind, so color() wraps it in independent retries,
each on its own RNG stream (stream id = trial index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import default_omega, t_parameter
from .errors import ParameterError
from .hypergraph import Coloring, Hypergraph, ListAssignment, _color_seq

__all__ = [
    "RecoloringParams",
    "TrialOutcome",
    "derive_params",
    "is_almost_monochromatic",
    "phase1",
    "phase1_from_lists",
    "phase2",
    "color",
    "color_from_lists",
]


@dataclass(frozen=True)
class RecoloringParams:
    """Knobs of one recoloring trial.

    t and q normally come from derive_params; manual construction is for
    overrides and must still describe a valid proposal distribution
    (r * p_recolor <= 1).  condition1 / condition2 report whether the
    derived values sit inside the guarantee window (they will not at desk
    scale; the algorithm itself stays well defined) and q_clamped marks a
    q capped at (r-1)/r to keep the proposal distribution valid.
    """

    r: int
    alpha: float
    b: float
    t: int
    q: float
    p_recolor: float
    omega: int
    condition1: bool | None = None
    condition2: bool | None = None
    q_clamped: bool = False

    def __post_init__(self):
        if self.r < 2:
            raise ParameterError(f"need r >= 2, got {self.r}")
        if self.t < 1:
            raise ParameterError(f"need t >= 1, got {self.t}")
        if self.omega < 0:
            raise ParameterError(f"need omega >= 0, got {self.omega}")
        if not 0.0 < self.q < 1.0:
            raise ParameterError(f"need q in (0, 1), got {self.q}")
        if not 0.0 < self.p_recolor < 1.0:
            raise ParameterError(f"need p_recolor in (0, 1), got {self.p_recolor}")
        if abs(self.p_recolor - self.q / (self.r - 1)) > 1e-12:
            raise ParameterError(
                f"p_recolor must equal q/(r-1) = {self.q / (self.r - 1)}, "
                f"got {self.p_recolor}"
            )
        if self.r * self.p_recolor > 1.0 + 1e-12:
            raise ParameterError(
                f"proposal masses exceed 1: r * p_recolor = {self.r * self.p_recolor}; "
                "lower q (the cap is (r-1)/r)"
            )

    @property
    def am_window(self) -> int:
        """Upper edge t + omega - 2 of the almost-monochromatic count window."""
        return self.t + self.omega - 2


def derive_params(
    k: int,
    r: int,
    alpha: float = 2.0,
    b: float = 4.0,
    omega: int | None = None,
    *,
    clamp_q: bool = False,
) -> RecoloringParams:
    """Derive t = floor(sqrt(ln k / ln(alpha ln k))) and q = alpha ln(k) / k.

    Requires alpha * ln k > 1 so the inner log is positive.  At small k the
    derived q can exceed (r-1)/r, which makes the proposal distribution
    invalid (r * p_recolor > 1); such sets are rejected unless clamp_q is
    set, in which case q is capped at (r-1)/r and flagged.  The window
    flags condition1 (b <= t < k - omega) and condition2 (2/k <= q <= 1/2)
    are evaluated on the effective q and carried on the result.
    """
    if r < 2:
        raise ParameterError(f"need r >= 2, got {r}")
    t = t_parameter(k, alpha)  # validates k and alpha
    if omega is None:
        omega = default_omega(k)
    if omega < 0:
        raise ParameterError(f"need omega >= 0, got {omega}")
    q = alpha * math.log(k) / k
    q_clamped = False
    cap = (r - 1) / r
    if q > cap:
        if not clamp_q:
            raise ParameterError(
                f"derived q = {q:.6g} exceeds (r-1)/r = {cap:.6g} at k={k}, r={r}; "
                "pass clamp_q=True or override q"
            )
        q = cap
        q_clamped = True
    condition1 = b <= t < k - omega
    condition2 = 2.0 / k <= q <= 0.5
    return RecoloringParams(
        r=r,
        alpha=alpha,
        b=b,
        t=t,
        q=q,
        p_recolor=q / (r - 1),
        omega=omega,
        condition1=condition1,
        condition2=condition2,
        q_clamped=q_clamped,
    )


@dataclass(frozen=True)
class TrialOutcome:
    """Result of a color() / color_from_lists() run.

    recolored_count is the number of vertices whose final color differs
    from their Phase-1 color in the successful trial (0 on failure).
    params carries the effective parameters including the window flags.
    """

    success: bool
    coloring: Coloring | None
    trials_used: int
    recolored_count: int
    params: RecoloringParams

    def __post_init__(self):
        if self.success and self.coloring is None:
            raise ValueError("successful outcome needs its coloring")


def is_almost_monochromatic(h: Hypergraph, e: int, u: int, xi, params: RecoloringParams) -> bool:
    """True iff edge e has between 1 and t + omega - 2 vertices not colored u."""
    h._check_edge(e)
    if u < 1:
        raise ValueError(f"need a color >= 1, got {u}")
    seq = _color_seq(xi, h.n)
    non_u = sum(1 for v in h.edges[e] if seq[v - 1] != u)
    return 1 <= non_u <= params.am_window


def phase1(h: Hypergraph, params: RecoloringParams, rng) -> Coloring:
    """Independent uniform colors from {1..r} for every vertex."""
    return Coloring(tuple(int(x) for x in rng.integers(1, params.r + 1, size=h.n)))


def phase1_from_lists(h: Hypergraph, lists: ListAssignment, rng) -> Coloring:
    """Independent uniform colors, vertex i from its own list."""
    if len(lists) != h.n:
        raise ValueError(f"list assignment covers {len(lists)} vertices, need {h.n}")
    r = lists.r
    idx = rng.integers(0, r, size=h.n)
    return Coloring(tuple(sorted(lists[i])[idx[i]] for i in range(h.n)))


def _draw_proposals(h, params, rng, lists):
    """One eta per vertex: an admissible color w.p. p_recolor each, else 0."""
    us = rng.random(h.n)
    r, pr = params.r, params.p_recolor
    eta = []
    for i in range(h.n):
        if us[i] < r * pr:
            j = min(int(us[i] / pr), r - 1)
            eta.append((j + 1) if lists is None else sorted(lists[i])[j])
        else:
            eta.append(0)
    return eta


def phase2(
    h: Hypergraph,
    params: RecoloringParams,
    xi,
    rng=None,
    *,
    eta=None,
    lists: ListAssignment | None = None,
) -> Coloring:
    """One ordered recoloring pass over the Phase-1 coloring xi.

    eta is normally drawn from rng (one proposal per vertex, up front, so
    a trial's trace is a pure function of its stream); passing eta
    explicitly is the test hook for hand-built traces.  With lists given,
    proposals come from each vertex's list and the blocking events only
    consider colors common to the whole edge.
    """
    xi_t = _color_seq(xi, h.n)
    if eta is None:
        if rng is None:
            raise ValueError("phase2 needs an rng when eta is not forced")
        eta = _draw_proposals(h, params, rng, lists)
    else:
        eta = [int(x) for x in eta]
        if len(eta) != h.n:
            raise ValueError(f"eta length {len(eta)} != vertex count {h.n}")

    k = h.k
    window = params.am_window

    # Phase-1 color histogram per edge; monochromatic edges and their color.
    hist = []
    mono_color = []
    alive = []
    for vs in h.edges:
        counts: dict = {}
        for v in vs:
            c = xi_t[v - 1]
            counts[c] = counts.get(c, 0) + 1
        hist.append(counts)
        if len(counts) == 1:
            mono_color.append(next(iter(counts)))
            alive.append(True)
        else:
            mono_color.append(None)
            alive.append(False)

    common = None
    if lists is not None:
        common = []
        for vs in h.edges:
            inter = lists[vs[0] - 1]
            for v in vs[1:]:
                inter = inter & lists[v - 1]
            common.append(inter)

    zeta = list(xi_t)
    for v in range(1, h.n + 1):
        i = v - 1
        proposal = eta[i]
        # Switching to the Phase-1 color is a no-op, so only a genuinely
        # different nonzero proposal can change anything.
        if proposal != 0 and proposal != xi_t[i]:
            hit = any(alive[e] for e in h.incident_edges(v))
            if hit:
                u = proposal
                blocked = False
                for f in h.incident_edges(v):
                    non_u = k - hist[f].get(u, 0)
                    if not 1 <= non_u <= window:
                        continue
                    if common is not None and u not in common[f]:
                        continue
                    carried = 0
                    for s in h.edges[f]:
                        if s == v:
                            continue
                        cs = zeta[s - 1] if s < v else xi_t[s - 1]
                        if cs == u:
                            carried += 1
                    if carried == k - 1:
                        blocked = True
                        break
                if not blocked:
                    zeta[i] = u
        for e in h.incident_edges(v):
            if alive[e] and zeta[i] != mono_color[e]:
                alive[e] = False
    return Coloring(tuple(zeta))


def _trial_rng(seed: int, trial: int):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def color(
    h: Hypergraph,
    r: int,
    params: RecoloringParams | None = None,
    max_trials: int = 50,
    seed: int = 0,
) -> TrialOutcome:
    """Repeat independent (phase1, phase2) trials until a proper coloring.

    Trial j runs on the RNG stream SeedSequence(seed, spawn_key=(j,)), so
    outcomes are a pure function of (seed, trial index) and trials could
    equally run concurrently; the reported result is the first (lowest
    trial index) success.  Without explicit params they are derived from
    (h.k, r) at the defaults with q clamped when the derivation demands it.
    """
    if max_trials < 1:
        raise ValueError(f"need max_trials >= 1, got {max_trials}")
    if params is None:
        params = derive_params(h.k, r, clamp_q=True)
    if params.r != r:
        raise ParameterError(f"params built for r={params.r}, called with r={r}")
    for trial in range(max_trials):
        rng = _trial_rng(seed, trial)
        xi = phase1(h, params, rng)
        zeta = phase2(h, params, xi, rng)
        if h.is_proper(zeta):
            changed = sum(1 for a, b in zip(xi.colors, zeta.colors) if a != b)
            return TrialOutcome(True, zeta, trial + 1, changed, params)
    return TrialOutcome(False, None, max_trials, 0, params)


def color_from_lists(
    h: Hypergraph,
    lists: ListAssignment,
    params: RecoloringParams | None = None,
    max_trials: int = 50,
    seed: int = 0,
) -> TrialOutcome:
    """color(), with Phase 1/2 drawing from per-vertex lists.

    All lists share one size r.  Final colors always stay inside each
    vertex's list (a vertex only ever holds its Phase-1 draw or a proposal,
    both from its list).
    """
    if len(lists) != h.n:
        raise ValueError(f"list assignment covers {len(lists)} vertices, need {h.n}")
    if max_trials < 1:
        raise ValueError(f"need max_trials >= 1, got {max_trials}")
    r = lists.r
    if params is None:
        params = derive_params(h.k, r, clamp_q=True)
    if params.r != r:
        raise ParameterError(f"params built for r={params.r}, lists have size {r}")
    for trial in range(max_trials):
        rng = _trial_rng(seed, trial)
        xi = phase1_from_lists(h, lists, rng)
        zeta = phase2(h, params, xi, rng, lists=lists)
        assert all(zeta[i] in lists[i] for i in range(h.n))
        if h.is_proper(zeta):
            changed = sum(1 for a, b in zip(xi.colors, zeta.colors) if a != b)
            return TrialOutcome(True, zeta, trial + 1, changed, params)
    return TrialOutcome(False, None, max_trials, 0, params)
