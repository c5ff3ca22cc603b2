"""Threshold and degree bounds, evaluated in log space.

Two families of closed-form bounds, addressed by short string ids:

* threshold bounds on the edge probability p of H(n, k, p) below (or above)
  which r-colorability holds asymptotically almost surely; every formula
  here carries the n / C(n, k) factor;
* lower/upper bounds on the extremal maximum vertex degree of a k-uniform
  non-r-colorable hypergraph.

On top of those sit the feasibility checks for the recoloring guarantee:
the parameter window check, the proposal-rate range check, the four-summand
sum that must stay below 1/4, the admissible-edge-degree cap, the full
dependency-neighborhood weight sum, and a plain numeric local-lemma margin.

Everything returns LogValue (or a BoundReport wrapping one) because the
factors r**(k-1) and r**(-(t+1)*(k-1)) leave binary64 range long before the
parameter regimes of interest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParameterError
from .logspace import LogValue, log_comb

__all__ = [
    "BoundReport",
    "THRESHOLD_IDS",
    "DEGREE_IDS",
    "phi",
    "default_omega",
    "t_parameter",
    "threshold_bound",
    "degree_bound",
    "d_max",
    "feasibility_report",
    "dependency_sum",
    "local_lemma_margin",
    "find_min_feasible_k",
]

THRESHOLD_IDS = (
    "lemma1",
    "lemma2",
    "akkt",
    "alon_spencer_upper",
    "akkt_2color",
    "ach_moore",
    "lemma3",
    "cor1_1",
    "cor1_2",
    "thm2",
    "lemma4",
    "cor_krivvu",
)

DEGREE_IDS = (
    "erdlov_lower",
    "erdlov_upper",
    "kost_rodl",
    "radh_srin",
    "shabanov",
    "kkr",
    "thm3",
)

_REQUIRED_INPUTS = {
    **{bid: ("n", "k", "r") for bid in THRESHOLD_IDS},
    **{bid: ("k", "r") for bid in DEGREE_IDS},
    "feasibility": ("k", "r", "omega", "alpha", "b"),
    "dependency_sum": ("k", "r", "omega", "t", "q", "p", "d"),
    "local_lemma": ("count",),
}


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound: id, the inputs used, value, optional verdict."""

    bound_id: str
    inputs: dict
    value: LogValue
    satisfied: bool | None = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        required = _REQUIRED_INPUTS.get(self.bound_id)
        if required is None:
            raise ValueError(f"unknown bound_id {self.bound_id!r}")
        missing = [name for name in required if name not in self.inputs]
        if missing:
            raise ValueError(
                f"bound {self.bound_id!r} is missing inputs: {', '.join(missing)}"
            )


# -- parameter formulas -------------------------------------------------------


def t_parameter(k: int, alpha: float) -> int:
    """floor(sqrt(ln k / ln(alpha ln k))), the recoloring window size."""
    if k < 3:
        raise ParameterError(f"need k >= 3, got {k}")
    if alpha <= 0 or alpha * math.log(k) <= 1.0:
        raise ParameterError(
            f"need alpha * ln(k) > 1 for the inner log, got alpha={alpha} k={k}"
        )
    t = math.floor(math.sqrt(math.log(k) / math.log(alpha * math.log(k))))
    if t < 1:
        raise ParameterError(
            f"derived t = 0 at k={k}, alpha={alpha}; this parameter set has no window"
        )
    return t


def phi(k: int) -> float:
    """Sub-polynomial exponent 4 / floor(sqrt(ln k / ln(2 ln k))).

    This is the k-exponent correction in the sharpest threshold bound and
    in the matching degree bound; it tends to 0 as k grows.
    """
    return 4.0 / t_parameter(k, 2.0)


def default_omega(k: int) -> int:
    """Per-edge triangle allowance floor(sqrt(ln k / ln ln k)), clamped >= 1."""
    if k < 3:
        raise ParameterError(f"need k >= 3, got {k}")
    lnk = math.log(k)
    lnlnk = math.log(lnk)
    if lnlnk <= 0:
        return 1
    return max(1, math.floor(math.sqrt(lnk / lnlnk)))


# -- bound catalogs -----------------------------------------------------------


def _common_factor(n: int, k: int) -> float:
    """log of n / C(n, k)."""
    if n < k:
        raise ParameterError(f"need n >= k, got n={n} k={k}")
    return math.log(n) - log_comb(n, k)


def threshold_bound(
    bound_id: str,
    n: int,
    k: int,
    r: int,
    eps: float = 0.01,
    c: float = 1.0,
    delta=None,
) -> LogValue:
    """Evaluate a named p-threshold bound at (n, k, r), in log space.

    eps feeds the (1 +- eps) bounds, c the unnamed-constant bounds
    (lemma1, lemma4), delta the supplied degree value for lemma3.  Every
    value includes the n / C(n, k) factor.
    """
    if bound_id not in THRESHOLD_IDS:
        raise ParameterError(f"unknown threshold bound id {bound_id!r}")
    if k < 3:
        raise ParameterError(f"{bound_id}: need k >= 3, got {k}")
    if r < 2:
        raise ParameterError(f"{bound_id}: need r >= 2, got {r}")
    if bound_id in ("alon_spencer_upper", "akkt_2color", "ach_moore") and r != 2:
        raise ParameterError(f"{bound_id} is a 2-color bound, got r={r}")
    if bound_id in ("cor1_1", "shabanov") and r < 3:
        raise ParameterError(f"{bound_id}: need r >= 3, got r={r}")
    if eps < 0:
        raise ParameterError(f"need eps >= 0, got {eps}")
    if bound_id in ("ach_moore", "cor_krivvu") and eps >= 1:
        raise ParameterError(f"{bound_id}: need eps < 1, got {eps}")
    if c <= 0:
        raise ParameterError(f"need c > 0, got {c}")

    lnr = math.log(r)
    lnk = math.log(k)
    common = _common_factor(n, k)

    if bound_id in ("lemma1", "lemma4"):
        log = math.log(c) + (k - 1) * lnr - 2 * lnk
    elif bound_id == "lemma2":
        log = math.log1p(eps) + (k - 1) * lnr + math.log(lnr)
    elif bound_id == "akkt":
        log = (
            lnr
            + math.lgamma(r + 2)
            - 2 * (r + 1) * math.log(r + 1)
            + (k - 1) * lnr
            - lnk
        )
    elif bound_id == "alon_spencer_upper":
        log = math.log1p(eps) + (k - 1) * math.log(2) + math.log(math.log(2))
    elif bound_id == "akkt_2color":
        log = -math.log(25) + (k - 1) * math.log(2) - lnk
    elif bound_id == "ach_moore":
        log = math.log1p(-eps) + (k - 1) * math.log(2) + math.log(math.log(2))
    elif bound_id == "lemma3":
        if delta is None:
            raise ParameterError("lemma3 needs the degree value delta")
        dv = delta if isinstance(delta, LogValue) else LogValue.from_float(float(delta))
        if dv.is_zero():
            return LogValue.zero()
        log = math.log(0.5) + dv.log - lnk
    elif bound_id == "cor1_1":
        log = math.log(3 / 32) + (k - 1) * lnr - 1.5 * lnk
    elif bound_id == "cor1_2":
        log = (
            math.log(3 / 16)
            + _kkr_core(k, r)
            - lnk
        )
    elif bound_id == "thm2":
        log = math.log(0.5) + (k - 1) * lnr - (1.0 + phi(k)) * lnk
    elif bound_id == "cor_krivvu":
        log = math.log1p(-eps) + (k - 1) * lnr + math.log(lnr) - lnk
    else:  # pragma: no cover
        raise AssertionError(bound_id)
    return LogValue.from_log(log + common)


def _kkr_core(k: int, r: int) -> float:
    """log of e^(-4 r^2) (k / ln k)^(g/(g+1)) r^k / k with g = floor(log2 r)."""
    lnk = math.log(k)
    if lnk <= 1:
        raise ParameterError(f"need k >= 3 so ln ln k is defined, got k={k}")
    g = r.bit_length() - 1
    expo = g / (g + 1)
    return -4.0 * r * r + expo * (lnk - math.log(lnk)) + k * math.log(r) - lnk


def degree_bound(bound_id: str, k: int, r: int) -> LogValue:
    """Evaluate a named extremal-degree bound at (k, r), in log space."""
    if bound_id not in DEGREE_IDS:
        raise ParameterError(f"unknown degree bound id {bound_id!r}")
    if k < 2:
        raise ParameterError(f"{bound_id}: need k >= 2, got {k}")
    if r < 2:
        raise ParameterError(f"{bound_id}: need r >= 2, got {r}")
    lnr = math.log(r)
    lnk = math.log(k)
    if bound_id == "erdlov_lower":
        log = (k - 1) * lnr - math.log(4) - lnk
    elif bound_id == "erdlov_upper":
        log = math.log(20) + 2 * lnk + (k + 1) * lnr
    elif bound_id == "kost_rodl":
        log = lnk + (k - 1) * lnr + math.log(lnr)
        # the stated bound is the ceiling; apply it while the value is small
        # enough for binary64 to hold it exactly, drop it above 2**53 where
        # the relative effect is below 2**-53
        if log < 53 * math.log(2):
            return LogValue.from_float(float(math.ceil(math.exp(log))))
    elif bound_id == "radh_srin":
        if r != 2:
            raise ParameterError(f"radh_srin is a 2-color bound, got r={r}")
        log = math.log(0.17) + k * math.log(2) - 0.5 * math.log(k * lnk)
    elif bound_id == "shabanov":
        if k < 3 or r < 3:
            raise ParameterError(f"shabanov: need k >= 3 and r >= 3, got k={k} r={r}")
        log = -math.log(8) - 0.5 * lnk + (k - 1) * lnr
    elif bound_id == "kkr":
        if k < 3:
            raise ParameterError(f"kkr: need k >= 3, got {k}")
        log = _kkr_core(k, r)
    elif bound_id == "thm3":
        if k < 3:
            raise ParameterError(f"thm3: need k >= 3, got {k}")
        log = (k - 1) * lnr - phi(k) * lnk
    else:  # pragma: no cover
        raise AssertionError(bound_id)
    return LogValue.from_log(log)


# -- feasibility for the recoloring guarantee ---------------------------------


def d_max(k: int, r: int, t: int, b: float) -> LogValue:
    """Largest admissible edge degree, r^(k-1) k^(1 - b/t) - 1, clamped at 0."""
    if t < 1:
        raise ParameterError(f"need t >= 1, got {t}")
    if k < 2 or r < 2:
        raise ParameterError(f"need k >= 2 and r >= 2, got k={k} r={r}")
    raw = LogValue.from_log((k - 1) * math.log(r) + (1.0 - b / t) * math.log(k))
    return raw - LogValue.one()


def feasibility_report(
    k: int,
    r: int,
    omega: int | None = None,
    alpha: float = 2.0,
    b: float = 4.0,
    d=None,
) -> BoundReport:
    """Check the three feasibility conditions at (k, alpha, b, omega).

    Derives t and q from (k, alpha) and evaluates:

    * condition1: the window b <= t < k - omega;
    * condition2: the proposal rate range 2/k <= q <= 1/2;
    * condition3: the four summands
        k^2 / 2^k,
        (t+1) k^(1-alpha) e^(alpha ln(k) (t+omega)/k) (alpha ln k)^(t+omega),
        ((t+1)^2 / t!) k^(2-b) (alpha ln k)^(t omega),
        (t+1) t (2 e alpha ln k / (t-1))^(t-1) k^(1+alpha-b)
      summing to less than 1/4.  t = 1 leaves summand 4 undefined (division
      by t - 1) and is reported as a condition3 failure.

    When d is given it is additionally checked against the d_max cap.
    The report's value is the condition3 sum; satisfied ANDs everything.
    """
    if k < 3:
        raise ParameterError(f"need k >= 3, got {k}")
    if r < 2:
        raise ParameterError(f"need r >= 2, got {r}")
    if omega is None:
        omega = default_omega(k)
    if omega < 0:
        raise ParameterError(f"need omega >= 0, got {omega}")
    if d is not None and d < 0:
        raise ParameterError(f"need d >= 0, got {d}")
    t = t_parameter(k, alpha)
    lnk = math.log(k)
    q = alpha * lnk / k

    condition1 = b <= t < k - omega
    condition2 = 2.0 / k <= q <= 0.5

    lal = math.log(alpha * lnk)
    s1 = LogValue.from_log(2 * lnk - k * math.log(2))
    s2 = LogValue.from_log(
        math.log(t + 1)
        + (1 - alpha) * lnk
        + alpha * lnk * (t + omega) / k
        + (t + omega) * lal
    )
    s3 = LogValue.from_log(
        2 * math.log(t + 1) - math.lgamma(t + 1) + (2 - b) * lnk + t * omega * lal
    )
    if t >= 2:
        s4 = LogValue.from_log(
            math.log(t + 1)
            + math.log(t)
            + (t - 1) * (math.log(2) + 1 + lal - math.log(t - 1))
            + (1 + alpha - b) * lnk
        )
        total = s1 + s2 + s3 + s4
        condition3 = total < LogValue.from_float(0.25)
    else:
        s4 = None
        total = s1 + s2 + s3
        condition3 = False

    cap = d_max(k, r, t, b)
    d_ok = None if d is None else LogValue.from_float(float(d)) <= cap

    satisfied = condition1 and condition2 and condition3 and d_ok is not False
    return BoundReport(
        bound_id="feasibility",
        inputs={"k": k, "r": r, "omega": omega, "alpha": alpha, "b": b, "d": d},
        value=total,
        satisfied=satisfied,
        extras={
            "t": t,
            "q": q,
            "summands": (s1, s2, s3, s4),
            "condition1": condition1,
            "condition2": condition2,
            "condition3": condition3,
            "d_ok": d_ok,
            "d_max": cap,
        },
    )


def dependency_sum(
    k: int,
    r: int,
    omega: int,
    t: int,
    q: float,
    p: float,
    d: float,
) -> BoundReport:
    """Total probability weight of one bad event's dependency neighborhood.

    W = (t+1)(d+1) [ r(r-1)(p/r)^k + r^(1-k)(1-q)^(k-t-omega)(kq)^(t+omega) ]
      + (t+1) [ (d+1)C(d,t) + (d+1) d C(d-1,t-1) ]
              r^(-(t+1)(k-1)) q^t (kq)^(t(t+omega-2))
      + (t+1) [ (d+1)C(d,t-1) + (d+1) d C(d-1,t-2) ]
              r^(-t(k-1)) (1+q)^k (2q)^(t-1)

    The guarantee needs W <= 1/4 (the report's satisfied flag).  Requires
    t >= 2: the last multiplicity's C(d-1, t-2) loses meaning below that,
    and small-t regimes are reported through feasibility_report instead.
    """
    if t < 2:
        raise ParameterError(f"need t >= 2, got {t}")
    if d < t:
        raise ParameterError(f"need d >= t, got d={d} t={t}")
    if not 0.0 < q < 1.0:
        raise ParameterError(f"need q in (0, 1), got {q}")
    if p < 0 or r * p > 1.0 + 1e-12:
        raise ParameterError(f"need 0 <= p and r*p <= 1, got p={p} r={r}")
    if k < 2 or r < 2 or omega < 0:
        raise ParameterError(f"domain: k={k} r={r} omega={omega}")

    lnr = math.log(r)
    lnk = math.log(k)
    lnq = math.log(q)

    if p == 0.0:
        q0 = LogValue.zero()
    else:
        q0 = LogValue.from_log(lnr + math.log(r - 1) + k * (math.log(p) - lnr))
    q1 = LogValue.from_log(
        (1 - k) * lnr + (k - t - omega) * math.log1p(-q) + (t + omega) * (lnk + lnq)
    )
    q2 = LogValue.from_log(
        -(t + 1) * (k - 1) * lnr + t * lnq + t * (t + omega - 2) * (lnk + lnq)
    )
    q3 = LogValue.from_log(
        (1 - k) * t * lnr + k * math.log1p(q) + (t - 1) * (math.log(2) + lnq)
    )

    dp1 = LogValue.from_float(d + 1)
    dv = LogValue.from_float(d)
    m1 = LogValue.from_float(t + 1) * dp1
    m2 = LogValue.from_float(t + 1) * (
        dp1 * LogValue.from_log(log_comb(d, t))
        + dp1 * dv * LogValue.from_log(log_comb(d - 1, t - 1))
    )
    m3 = LogValue.from_float(t + 1) * (
        dp1 * LogValue.from_log(log_comb(d, t - 1))
        + dp1 * dv * LogValue.from_log(log_comb(d - 1, t - 2))
    )

    total = m1 * (q0 + q1) + m2 * q2 + m3 * q3
    return BoundReport(
        bound_id="dependency_sum",
        inputs={"k": k, "r": r, "omega": omega, "t": t, "q": q, "p": p, "d": d},
        value=total,
        satisfied=total <= LogValue.from_float(0.25),
        extras={"event_probs": (q0, q1, q2, q3), "multiplicities": (m1, m2, m3)},
    )


def local_lemma_margin(probabilities) -> BoundReport:
    """Numeric local-lemma check over per-event neighborhood sums.

    Given the probabilities of the bad events seen by any one event's
    neighborhood, reports their sum, whether it stays <= 1/4, and the
    positive-probability lower bound prod(1 - 2 p_i) (0 as soon as some
    p_i >= 1/2).
    """
    probs = []
    for x in probabilities:
        lv = x if isinstance(x, LogValue) else LogValue.from_float(float(x))
        if lv.log > 0:
            raise ValueError(f"probability above 1: {lv.to_float()!r}")
        probs.append(lv)
    total = LogValue.zero()
    for lv in probs:
        total = total + lv
    log_prod = 0.0
    for lv in probs:
        pv = lv.to_float()
        if pv >= 0.5:
            log_prod = float("-inf")
            break
        log_prod += math.log1p(-2.0 * pv)
    product = math.exp(log_prod) if log_prod > float("-inf") else 0.0
    return BoundReport(
        bound_id="local_lemma",
        inputs={"count": len(probs)},
        value=total,
        satisfied=total <= LogValue.from_float(0.25),
        extras={"lower_bound": product},
    )


def find_min_feasible_k(
    k_lo: int,
    k_hi: int,
    omega=None,
    alpha: float = 2.0,
    b: float = 4.0,
) -> int | None:
    """Smallest k in [k_lo, k_hi] where the condition3 sum drops below 1/4.

    omega may be None (per-k default rule), a constant int, or a callable
    k -> omega.  The sum is not globally monotone in k (t and omega are
    step functions), so this scans a log-spaced grid for the first holding
    point, then bisects the bracket below it and re-verifies both sides of
    the returned value.  None when no k in range qualifies.
    """
    if k_lo < 3 or k_hi < k_lo:
        raise ParameterError(f"need 3 <= k_lo <= k_hi, got {k_lo}, {k_hi}")
    if omega is None:
        omega_of = default_omega
    elif callable(omega):
        omega_of = omega
    else:
        omega_of = lambda _k, _w=int(omega): _w

    def holds(k: int) -> bool:
        return feasibility_report(k, 2, omega_of(k), alpha, b).extras["condition3"]

    lo_log, hi_log = math.log(k_lo), math.log(k_hi)
    grid = sorted(
        {
            min(max(k_lo, round(math.exp(lo_log + (hi_log - lo_log) * i / 200))), k_hi)
            for i in range(201)
        }
    )
    first = None
    for j, kg in enumerate(grid):
        if holds(kg):
            first = j
            break
    if first is None:
        return None
    if grid[first] == k_lo:
        return k_lo
    lo, hi = grid[first - 1], grid[first]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    assert holds(hi) and not holds(hi - 1)
    return hi
