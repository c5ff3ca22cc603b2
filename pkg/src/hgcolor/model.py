"""The binomial random hypergraph model H(n, k, p).

Every one of the C(n, k) possible k-subsets of {1..n} is an edge
independently with probability p.  Sampling never enumerates the edge
universe: the edges form a Bernoulli process over the colex-ordered
subsets, so we draw Geometric(p) skip lengths and unrank only the colex
indices that land in the sample.  Expected cost O(p * C(n, k)) unranking
steps, i.e. proportional to the number of edges produced.

RNG policy: numpy's PCG64 seeded through SeedSequence.  Callers that need
many independent streams derive child seeds with spawn keys (the sweep
harness uses spawn_key=(point_index, sample_index)); sample() itself is a
pure function of ModelParams including its seed field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import degree_bound, threshold_bound
from .errors import CapacityError
from .hypergraph import Hypergraph

__all__ = [
    "ModelParams",
    "sample",
    "sample_coupled",
    "expected_edge_count",
    "chernoff_tail",
    "threshold_p",
    "expected_max_degree_threshold",
    "colex_rank",
    "colex_unrank",
]

# Hard cap on the edge-universe size: ranks are kept below 2**63 so they
# stay exact in any 64-bit counter downstream.
MAX_UNIVERSE = 2**63


@dataclass(frozen=True)
class ModelParams:
    """Parameters (n, k, p) of the binomial model plus the RNG seed."""

    n: int
    k: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"need k >= 2, got k={self.k}")
        if self.n < self.k:
            raise ValueError(f"need n >= k, got n={self.n} k={self.k}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"need p in [0, 1], got {self.p}")
        if self.seed < 0:
            raise ValueError(f"need seed >= 0, got {self.seed}")


def colex_rank(subset, k: int) -> int:
    """Colex rank of a sorted tuple of 0-based elements: sum C(s_j, j+1)."""
    rank = 0
    for j, s in enumerate(subset):
        rank += math.comb(s, j + 1)
    return rank


def colex_unrank(rank: int, k: int) -> tuple:
    """Inverse of colex_rank: the k-subset (0-based, ascending) at a rank.

    Each coordinate is the largest c with C(c, j) <= remaining rank, found
    by binary search from the top coordinate down.
    """
    out = []
    r = rank
    hi_guess = k
    for j in range(k, 0, -1):
        # grow an upper bracket, then binary-search the coordinate
        lo, hi = j - 1, max(hi_guess, j)
        while math.comb(hi, j) <= r:
            lo = hi
            hi *= 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if math.comb(mid, j) <= r:
                lo = mid
            else:
                hi = mid
        out.append(lo)
        r -= math.comb(lo, j)
        hi_guess = lo
    out.reverse()
    return tuple(out)


def _universe_size(n: int, k: int) -> int:
    total = math.comb(n, k)
    if total >= MAX_UNIVERSE:
        raise CapacityError(
            f"C({n},{k}) = {total} exceeds the 2**63 edge-universe cap"
        )
    return total


def sample(params: ModelParams) -> Hypergraph:
    """Draw one hypergraph from H(n, k, p), deterministic in params.seed.

    Edges come out in ascending colex order of their vertex sets.
    """
    n, k, p = params.n, params.k, params.p
    total = _universe_size(n, k)
    if p == 0.0:
        return Hypergraph(n, k, [])
    rng = np.random.default_rng(np.random.SeedSequence(params.seed))
    edges = []
    if p == 1.0:
        for idx in range(total):
            edges.append([v + 1 for v in colex_unrank(idx, k)])
        return Hypergraph(n, k, edges)
    log1mp = math.log1p(-p)
    idx = -1
    while True:
        u = rng.random()
        # G ~ Geometric(p) on {1, 2, ...} by inversion; u == 0.0 maps to 1
        g = math.ceil(math.log1p(-u) / log1mp) if u > 0.0 else 1
        idx += max(g, 1)
        if idx >= total:
            break
        edges.append([v + 1 for v in colex_unrank(idx, k)])
    return Hypergraph(n, k, edges)


def sample_coupled(n: int, k: int, p_values, seed: int) -> list:
    """Coupled samples at several p values from shared per-edge uniforms.

    Slow test-mode path: materializes one uniform per possible edge, then
    includes an edge at level p iff its uniform is below p.  The returned
    hypergraphs are nested: whenever p1 <= p2 the p1 edge set is a subset
    of the p2 edge set.  Cost O(C(n, k)), intended for small n only.
    """
    for p in p_values:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"need p in [0, 1], got {p}")
    total = _universe_size(n, k)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    us = rng.random(total)
    out = []
    for p in p_values:
        edges = [
            [v + 1 for v in colex_unrank(idx, k)]
            for idx in range(total)
            if us[idx] < p
        ]
        out.append(Hypergraph(n, k, edges))
    return out


def expected_edge_count(params: ModelParams) -> float:
    """E|E| = C(n, k) * p."""
    return math.comb(params.n, params.k) * params.p


def chernoff_tail(mean: float, lam: float) -> float:
    """Binomial upper-tail bound P(X >= EX + lam) <= exp(-lam^2 / (2(EX + lam/3))).

    At lam = mean this specializes to exp(-(3/16) * (2 * mean)), the form
    used to control the maximum vertex degree.
    """
    if mean < 0:
        raise ValueError(f"need mean >= 0, got {mean}")
    if lam <= 0:
        raise ValueError(f"need lam > 0, got {lam}")
    return math.exp(-(lam * lam) / (2.0 * (mean + lam / 3.0)))


def threshold_p(n: int, k: int, r: int) -> float:
    """The package's sharpest guaranteed-colorability p bound.

    Value of the 'thm2' threshold bound, (1/2) r^(k-1) k^(-1-phi(k)) n/C(n,k),
    exponentiated back to linear scale.  May underflow to 0.0 for large
    parameters; bounds.threshold_bound('thm2', ...) exposes the log form.
    """
    return threshold_bound("thm2", n=n, k=k, r=r).to_float()


def expected_max_degree_threshold(n: int, k: int, r: int) -> float:
    """Degree scale r^(k-1) k^(-phi(k)) behind the main threshold bound.

    The regime of interest compares this value against 6 ln n; the n
    argument is validated for that comparison but the returned scale
    depends on k and r only.  Equals the 'thm3' degree bound.
    """
    if n < k:
        raise ValueError(f"need n >= k, got n={n} k={k}")
    return degree_bound("thm3", k=k, r=r).to_float()
