import math

import mpmath
import pytest

from hgcolor.bounds import (
    BoundReport,
    DEGREE_IDS,
    THRESHOLD_IDS,
    d_max,
    default_omega,
    degree_bound,
    dependency_sum,
    feasibility_report,
    find_min_feasible_k,
    local_lemma_margin,
    phi,
    t_parameter,
    threshold_bound,
)
from hgcolor.errors import ParameterError
from hgcolor.logspace import LogValue

mpmath.mp.dps = 60


# -- arbitrary-precision references --------------------------------------------


def mp_binomial(n, k):
    n = mpmath.mpf(n)
    return mpmath.gamma(n + 1) / (mpmath.gamma(k + 1) * mpmath.gamma(n - k + 1))


def mp_common(n, k):
    return mpmath.mpf(n) / mp_binomial(n, k)


def mp_threshold(bound_id, n, k, r, eps=0.01, c=1.0, delta=None):
    R, K = mpmath.mpf(r), mpmath.mpf(k)
    common = mp_common(n, k)
    if bound_id in ("lemma1", "lemma4"):
        core = c * R ** (k - 1) / K**2
    elif bound_id == "lemma2":
        core = (1 + eps) * R ** (k - 1) * mpmath.log(R)
    elif bound_id == "akkt":
        core = (
            R * mpmath.factorial(r + 1) / mpmath.mpf(r + 1) ** (2 * (r + 1))
            * R ** (k - 1) / K
        )
    elif bound_id == "alon_spencer_upper":
        core = (1 + eps) * mpmath.mpf(2) ** (k - 1) * mpmath.log(2)
    elif bound_id == "akkt_2color":
        core = mpmath.mpf(2) ** (k - 1) / (25 * K)
    elif bound_id == "ach_moore":
        core = (1 - eps) * mpmath.mpf(2) ** (k - 1) * mpmath.log(2)
    elif bound_id == "lemma3":
        core = mpmath.mpf(delta) / (2 * K)
    elif bound_id == "cor1_1":
        core = mpmath.mpf(3) / 32 * R ** (k - 1) / K**1.5
    elif bound_id == "cor1_2":
        g = r.bit_length() - 1
        core = (
            mpmath.mpf(3) / 16
            * mpmath.exp(-4 * R**2)
            * (K / mpmath.log(K)) ** (mpmath.mpf(g) / (g + 1))
            * R**k / K**2
        )
    elif bound_id == "thm2":
        core = R ** (k - 1) / (2 * K ** (1 + mpmath.mpf(phi(k))))
    elif bound_id == "cor_krivvu":
        core = (1 - eps) * R ** (k - 1) * mpmath.log(R) / K
    else:
        raise AssertionError(bound_id)
    return core * common


def mp_degree(bound_id, k, r):
    R, K = mpmath.mpf(r), mpmath.mpf(k)
    if bound_id == "erdlov_lower":
        return R ** (k - 1) / (4 * K)
    if bound_id == "erdlov_upper":
        return 20 * K**2 * R ** (k + 1)
    if bound_id == "kost_rodl":
        return mpmath.ceil(K * R ** (k - 1) * mpmath.log(R))
    if bound_id == "radh_srin":
        return mpmath.mpf("0.17") * 2**K / mpmath.sqrt(K * mpmath.log(K))
    if bound_id == "shabanov":
        return R ** (k - 1) / (8 * mpmath.sqrt(K))
    if bound_id == "kkr":
        g = r.bit_length() - 1
        return (
            mpmath.exp(-4 * R**2)
            * (K / mpmath.log(K)) ** (mpmath.mpf(g) / (g + 1))
            * R**k / K
        )
    if bound_id == "thm3":
        return R ** (k - 1) * K ** (-mpmath.mpf(phi(k)))
    raise AssertionError(bound_id)


def mp_dependency_sum(k, r, omega, t, q, p, d):
    K, R, Q, P, D = (mpmath.mpf(x) for x in (k, r, q, p, d))
    binom = mp_binomial
    part01 = (t + 1) * (D + 1) * (
        R * (R - 1) * (P / R) ** k
        + R ** (1 - k) * (1 - Q) ** (k - t - omega) * (K * Q) ** (t + omega)
    )
    part2 = (
        (t + 1)
        * ((D + 1) * binom(d, t) + (D + 1) * D * binom(d - 1, t - 1))
        * R ** (-(t + 1) * (k - 1))
        * Q**t
        * (K * Q) ** (t * (t + omega - 2))
    )
    part3 = (
        (t + 1)
        * ((D + 1) * binom(d, t - 1) + (D + 1) * D * binom(d - 1, t - 2))
        * R ** (-t * (k - 1))
        * (1 + Q) ** k
        * (2 * Q) ** (t - 1)
    )
    return part01 + part2 + part3


def mp_condition3_summands(k, alpha, b, t, omega):
    K = mpmath.mpf(k)
    lnk = mpmath.log(K)
    al = mpmath.mpf(alpha) * lnk
    s1 = K**2 / 2**K
    s2 = (t + 1) * K ** (1 - alpha) * mpmath.exp(al * (t + omega) / K) * al ** (t + omega)
    s3 = (t + 1) ** 2 / mpmath.factorial(t) * K ** (2 - b) * al ** (t * omega)
    s4 = None
    if t >= 2:
        s4 = (t + 1) * t * (2 * mpmath.e * al / (t - 1)) ** (t - 1) * K ** (1 + alpha - b)
    return s1, s2, s3, s4


# -- parameter formulas ----------------------------------------------------------


def test_t_parameter_values():
    assert t_parameter(10**6, 2.0) == 2
    assert t_parameter(100, 2.0) == 1
    assert t_parameter(3, 2.0) == 1
    assert t_parameter(10**18, 2.0) == 3  # ln k / ln(2 ln k) crosses 9 near e^41
    with pytest.raises(ParameterError):
        t_parameter(2, 2.0)
    with pytest.raises(ParameterError):
        t_parameter(100, 0.1)  # alpha ln k < 1


def test_phi_values():
    assert phi(10**6) == pytest.approx(2.0)
    assert phi(100) == pytest.approx(4.0)


def test_default_omega_values():
    assert default_omega(10**6) == 2
    assert default_omega(100) == 1
    # ln ln 3 is positive but tiny, so the raw formula inflates to 3
    assert default_omega(3) == 3
    with pytest.raises(ParameterError):
        default_omega(2)


# -- threshold bounds -------------------------------------------------------------


@pytest.mark.parametrize("bound_id", THRESHOLD_IDS)
def test_threshold_bounds_match_mpmath(bound_id):
    cases = {
        "lemma1": dict(n=200, k=12, r=3),
        "lemma2": dict(n=200, k=12, r=3, eps=0.05),
        "akkt": dict(n=200, k=12, r=4),
        "alon_spencer_upper": dict(n=200, k=12, r=2, eps=0.0),
        "akkt_2color": dict(n=200, k=12, r=2),
        "ach_moore": dict(n=200, k=12, r=2, eps=0.1),
        "lemma3": dict(n=200, k=12, r=3, delta=512.0),
        "cor1_1": dict(n=200, k=12, r=3),
        "cor1_2": dict(n=200, k=12, r=3),
        "thm2": dict(n=200, k=12, r=3),
        "lemma4": dict(n=200, k=12, r=5, c=2.5),
        "cor_krivvu": dict(n=200, k=12, r=3, eps=0.5),
    }
    kwargs = cases[bound_id]
    got = threshold_bound(bound_id, **kwargs)
    want = mp_threshold(bound_id, **kwargs)
    assert got.log == pytest.approx(float(mpmath.log(want)), abs=1e-8)


def test_thm2_large_scale_vs_mpmath():
    got = threshold_bound("thm2", n=10**6, k=100, r=3)
    want = mp_threshold("thm2", n=10**6, k=100, r=3)
    assert got.log == pytest.approx(float(mpmath.log(want)), abs=1e-8)


def test_lemma2_over_thm2_ratio():
    # ratio = 2 (1+eps) k^(1+phi(k)) ln r; at k=100, r=3, eps=0 its log is
    # ln 2 + 5 ln 100 + ln ln 3
    k, r = 100, 3
    a = threshold_bound("lemma2", n=10**6, k=k, r=r, eps=0.0)
    b = threshold_bound("thm2", n=10**6, k=k, r=r)
    ratio_log = a.log - b.log
    want = math.log(2) + (1 + phi(k)) * math.log(k) + math.log(math.log(r))
    assert ratio_log == pytest.approx(want, rel=1e-12)


def test_threshold_monotone_in_r():
    for bid in ("lemma1", "lemma2", "thm2"):
        lo = threshold_bound(bid, n=50, k=5, r=2)
        hi = threshold_bound(bid, n=50, k=5, r=3)
        assert lo < hi


def test_threshold_domain_errors():
    with pytest.raises(ParameterError):
        threshold_bound("nope", n=50, k=5, r=2)
    with pytest.raises(ParameterError):
        threshold_bound("akkt_2color", n=50, k=5, r=3)
    with pytest.raises(ParameterError):
        threshold_bound("cor1_1", n=50, k=5, r=2)
    with pytest.raises(ParameterError):
        threshold_bound("ach_moore", n=50, k=5, r=2, eps=1.0)
    with pytest.raises(ParameterError):
        threshold_bound("lemma3", n=50, k=5, r=2)  # delta missing
    with pytest.raises(ParameterError):
        threshold_bound("lemma1", n=4, k=5, r=2)  # n < k
    with pytest.raises(ParameterError):
        threshold_bound("lemma1", n=50, k=2, r=2)  # k too small
    with pytest.raises(ParameterError):
        threshold_bound("lemma1", n=50, k=5, r=1)


def test_lemma3_accepts_logvalue_delta():
    direct = threshold_bound("lemma3", n=60, k=6, r=2, delta=128.0)
    viaLV = threshold_bound("lemma3", n=60, k=6, r=2, delta=LogValue.from_float(128.0))
    assert direct.log == pytest.approx(viaLV.log, rel=1e-15)
    assert threshold_bound("lemma3", n=60, k=6, r=2, delta=0.0).is_zero()


# -- degree bounds ----------------------------------------------------------------


@pytest.mark.parametrize("bound_id", DEGREE_IDS)
def test_degree_bounds_match_mpmath(bound_id):
    cases = {
        "erdlov_lower": dict(k=12, r=3),
        "erdlov_upper": dict(k=12, r=3),
        "kost_rodl": dict(k=12, r=3),
        "radh_srin": dict(k=12, r=2),
        "shabanov": dict(k=12, r=3),
        "kkr": dict(k=12, r=3),
        "thm3": dict(k=12, r=3),
    }
    kwargs = cases[bound_id]
    got = degree_bound(bound_id, **kwargs)
    want = mp_degree(bound_id, **kwargs)
    assert got.log == pytest.approx(float(mpmath.log(want)), abs=1e-8)


def test_degree_frozen_values():
    assert degree_bound("erdlov_lower", 10, 2).to_float() == pytest.approx(
        12.8, rel=1e-12
    )
    assert degree_bound("shabanov", 4, 3).to_float() == pytest.approx(
        27 / 16, rel=1e-12
    )
    # ceil applied while representable: 3 * 4 * ln 2 = 8.317... -> 9
    # (exact up to the log-space round trip)
    assert degree_bound("kost_rodl", 3, 2).to_float() == pytest.approx(9.0, rel=1e-12)
    # far beyond 2**53 the ceiling is dropped; value matches the raw product
    big = degree_bound("kost_rodl", 500, 2)
    want = math.log(500) + 499 * math.log(2) + math.log(math.log(2))
    assert big.log == pytest.approx(want, rel=1e-12)


def test_thm3_large_k():
    got = degree_bound("thm3", 10**6, 2)
    want = (10**6 - 1) * math.log(2) - 2.0 * math.log(10**6)
    assert got.log == pytest.approx(want, rel=1e-12)


def test_degree_domain_errors():
    with pytest.raises(ParameterError):
        degree_bound("nope", 5, 2)
    with pytest.raises(ParameterError):
        degree_bound("radh_srin", 5, 3)
    with pytest.raises(ParameterError):
        degree_bound("shabanov", 5, 2)
    with pytest.raises(ParameterError):
        degree_bound("shabanov", 2, 3)
    with pytest.raises(ParameterError):
        degree_bound("kkr", 2, 3)


# -- d_max -------------------------------------------------------------------------


def test_d_max_values():
    assert d_max(20, 2, 2, 4.0).to_float() == pytest.approx(26213.4, rel=1e-9)
    assert d_max(5, 3, 2, 2.0).to_float() == pytest.approx(80.0, rel=1e-12)  # b = t
    assert d_max(3, 2, 1, 4.0).is_zero()  # negative clamps to zero
    with pytest.raises(ParameterError):
        d_max(5, 2, 0, 4.0)


# -- feasibility ---------------------------------------------------------------------


def test_feasibility_summands_match_mpmath_at_1e6():
    rep = feasibility_report(10**6, 2)
    assert rep.extras["t"] == 2
    assert rep.inputs["omega"] == 2
    s1, s2, s3, s4 = mp_condition3_summands(10**6, 2.0, 4.0, 2, 2)
    got = rep.extras["summands"]
    for got_lv, want in zip(got, (s1, s2, s3, s4)):
        assert got_lv.log == pytest.approx(float(mpmath.log(want)), abs=1e-9)
    # summand 2 dominates and alone breaks the 1/4 budget
    assert got[1].to_float() == pytest.approx(float(s2), rel=1e-9)
    assert got[1].to_float() > 0.25
    assert not rep.extras["condition3"]
    assert not rep.satisfied


def test_feasibility_holds_at_1e13():
    rep = feasibility_report(10**13, 2)
    assert rep.extras["condition3"]
    total = float(sum(x for x in mp_condition3_summands(10**13, 2.0, 4.0, 2, 2)))
    assert rep.value.to_float() == pytest.approx(total, rel=1e-9)
    assert rep.value.to_float() < 0.25
    # conditions 1 and 2 also hold there: b=4 <= t is false (t=2) -> cond1 false
    assert not rep.extras["condition1"]
    assert rep.extras["condition2"]
    assert not rep.satisfied  # condition1 still fails at alpha=2, b=4


def test_feasibility_t1_regime():
    rep = feasibility_report(100, 2)
    assert rep.extras["t"] == 1
    assert rep.extras["summands"][3] is None
    assert not rep.extras["condition3"]
    assert not rep.extras["condition1"]


def test_feasibility_d_check():
    # at k=20, alpha=2: t=1, so the cap is 2^19 * 20^(-3) - 1 = 64.536
    ok = feasibility_report(20, 2, omega=1, d=50.0)
    assert ok.extras["d_ok"] is True
    over = feasibility_report(20, 2, omega=1, d=100.0)
    assert over.extras["d_ok"] is False
    assert not over.satisfied
    none = feasibility_report(20, 2, omega=1)
    assert none.extras["d_ok"] is None


# -- dependency sum -----------------------------------------------------------------


def test_dependency_sum_matches_mpmath():
    q = 2 * math.log(30) / 30
    rep = dependency_sum(k=30, r=2, omega=1, t=2, q=q, p=q, d=100)
    want = mp_dependency_sum(30, 2, 1, 2, q, q, 100)
    assert rep.value.to_float() == pytest.approx(float(want), rel=1e-9)


def test_dependency_sum_p_zero_limit():
    q = 2 * math.log(30) / 30
    rep = dependency_sum(k=30, r=2, omega=1, t=2, q=q, p=0.0, d=100)
    want = mp_dependency_sum(30, 2, 1, 2, q, 0.0, 100)
    assert rep.value.to_float() == pytest.approx(float(want), rel=1e-9)
    assert rep.extras["event_probs"][0].is_zero()


def test_dependency_sum_monotone():
    q = 2 * math.log(30) / 30
    base = dependency_sum(k=30, r=2, omega=1, t=2, q=q, p=q, d=100).value
    more_d = dependency_sum(k=30, r=2, omega=1, t=2, q=q, p=q, d=101).value
    more_omega = dependency_sum(k=30, r=2, omega=2, t=2, q=q, p=q, d=100).value
    more_p = dependency_sum(k=30, r=2, omega=1, t=2, q=q, p=min(2 * q, 0.5), d=100).value
    assert base < more_d
    assert base < more_omega
    assert base < more_p


def test_dependency_sum_domain():
    q = 0.1
    with pytest.raises(ParameterError):
        dependency_sum(k=30, r=2, omega=1, t=1, q=q, p=q, d=100)
    with pytest.raises(ParameterError):
        dependency_sum(k=30, r=2, omega=1, t=2, q=q, p=q, d=1)
    with pytest.raises(ParameterError):
        dependency_sum(k=30, r=2, omega=1, t=2, q=1.5, p=q, d=100)
    with pytest.raises(ParameterError):
        dependency_sum(k=30, r=2, omega=1, t=2, q=q, p=0.9, d=100)  # r p > 1


# -- local lemma ---------------------------------------------------------------------


def test_local_lemma_margin_cases():
    empty = local_lemma_margin([])
    assert empty.value.is_zero()
    assert empty.satisfied
    assert empty.extras["lower_bound"] == 1.0

    ok = local_lemma_margin([0.1, 0.1])
    assert ok.value.to_float() == pytest.approx(0.2, rel=1e-12)
    assert ok.satisfied
    assert ok.extras["lower_bound"] == pytest.approx(0.64, rel=1e-12)

    bad = local_lemma_margin([0.3])
    assert not bad.satisfied
    assert bad.extras["lower_bound"] == pytest.approx(0.4, rel=1e-12)

    degenerate = local_lemma_margin([0.5, 0.1])
    assert degenerate.extras["lower_bound"] == 0.0

    with pytest.raises(ValueError):
        local_lemma_margin([1.5])


# -- min-k search ---------------------------------------------------------------------


def test_find_min_feasible_k_bracket():
    found = find_min_feasible_k(10**6, 10**13)
    assert found is not None
    assert 10**6 < found < 10**13
    assert feasibility_report(found, 2).extras["condition3"]
    assert not feasibility_report(found - 1, 2).extras["condition3"]


def test_find_min_feasible_k_at_lo():
    # condition3 already holds at 10^13, so the bracket collapses to k_lo
    assert find_min_feasible_k(10**13, 10**14) == 10**13


def test_find_min_feasible_k_not_found():
    assert find_min_feasible_k(1000, 10**6) is None


def test_find_min_feasible_k_constant_omega():
    via_const = find_min_feasible_k(10**6, 10**13, omega=2)
    via_rule = find_min_feasible_k(10**6, 10**13, omega=lambda k: 2)
    assert via_const == via_rule


# -- report container --------------------------------------------------------------


def test_bound_report_validation():
    with pytest.raises(ValueError):
        BoundReport(
            bound_id="nope", inputs={}, value=LogValue.one(), satisfied=None, extras={}
        )
    with pytest.raises(ValueError):
        BoundReport(
            bound_id="thm2",
            inputs={"n": 10, "k": 3},  # r missing
            value=LogValue.one(),
            satisfied=None,
            extras={},
        )
