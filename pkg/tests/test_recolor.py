import math

import numpy as np
import pytest

from hgcolor.errors import ParameterError
from hgcolor.hypergraph import Coloring, Hypergraph, ListAssignment
from hgcolor.model import ModelParams, sample
from hgcolor.recolor import (
    RecoloringParams,
    TrialOutcome,
    color,
    color_from_lists,
    derive_params,
    is_almost_monochromatic,
    phase1,
    phase1_from_lists,
    phase2,
    _draw_proposals,
)


def make_params(r=2, t=2, q=0.3, omega=1, alpha=2.0, b=4.0):
    return RecoloringParams(
        r=r, alpha=alpha, b=b, t=t, q=q, p_recolor=q / (r - 1), omega=omega
    )


# -- parameter derivation --------------------------------------------------------


def test_derive_params_k100_r3():
    p = derive_params(100, 3)
    assert p.t == 1
    assert p.q == pytest.approx(2 * math.log(100) / 100, rel=1e-12)
    assert p.q == pytest.approx(0.0921034, rel=1e-5)
    assert p.p_recolor == pytest.approx(0.0460517, rel=1e-5)
    assert p.condition1 is False  # b=4 > t=1
    assert not p.q_clamped


def test_derive_params_k1e6():
    p = derive_params(10**6, 2)
    assert p.t == 2
    assert p.omega == 2


def test_derive_params_small_k_q_overflow():
    # k=3: q = 2 ln 3 / 3 = 0.732; fine for r=4 (cap 0.75), over for r=2
    p4 = derive_params(3, 4)
    assert p4.q == pytest.approx(2 * math.log(3) / 3, rel=1e-12)
    assert p4.condition2 is False  # q > 1/2
    assert not p4.q_clamped
    with pytest.raises(ParameterError):
        derive_params(3, 2)
    clamped = derive_params(3, 2, clamp_q=True)
    assert clamped.q == pytest.approx(0.5)
    assert clamped.q_clamped
    assert clamped.p_recolor == pytest.approx(0.5)


def test_derive_params_rejects_bad_domain():
    with pytest.raises(ParameterError):
        derive_params(100, 1)
    with pytest.raises(ParameterError):
        derive_params(2, 2)
    with pytest.raises(ParameterError):
        derive_params(100, 2, alpha=0.1)  # alpha ln k < 1
    with pytest.raises(ParameterError):
        derive_params(100, 2, omega=-1)


def test_params_validation():
    with pytest.raises(ParameterError):
        RecoloringParams(r=1, alpha=2, b=4, t=1, q=0.1, p_recolor=0.1, omega=1)
    with pytest.raises(ParameterError):
        RecoloringParams(r=3, alpha=2, b=4, t=1, q=0.2, p_recolor=0.2, omega=1)
    with pytest.raises(ParameterError):  # r * p_recolor > 1
        RecoloringParams(r=3, alpha=2, b=4, t=1, q=0.9, p_recolor=0.45, omega=1)
    with pytest.raises(ParameterError):
        RecoloringParams(r=2, alpha=2, b=4, t=0, q=0.1, p_recolor=0.1, omega=1)


def test_trial_outcome_validation():
    p = make_params()
    with pytest.raises(ValueError):
        TrialOutcome(True, None, 1, 0, p)


# -- almost monochromatic ---------------------------------------------------------


def test_is_almost_monochromatic_window():
    h = Hypergraph(5, 5, [(1, 2, 3, 4, 5)])
    p = make_params(t=2, omega=2)  # window = t + omega - 2 = 2
    assert is_almost_monochromatic(h, 0, 7, (7, 7, 7, 7, 1), p)
    assert is_almost_monochromatic(h, 0, 7, (7, 7, 7, 1, 2), p)
    assert not is_almost_monochromatic(h, 0, 7, (7, 7, 1, 2, 3), p)  # 3 > window
    assert not is_almost_monochromatic(h, 0, 7, (7, 7, 7, 7, 7), p)  # 0 misses
    tight = make_params(t=1, q=0.2, omega=1)  # window 0: empty interval
    assert not is_almost_monochromatic(h, 0, 7, (7, 7, 7, 7, 1), tight)
    assert not is_almost_monochromatic(h, 0, 7, (7, 7, 7, 7, 7), tight)


# -- phase 1 ------------------------------------------------------------------------


def test_phase1_deterministic_and_in_range():
    h = Hypergraph(30, 3, [(1, 2, 3)])
    p = make_params(r=3, q=0.4, t=2)
    a = phase1(h, p, np.random.default_rng(7))
    b = phase1(h, p, np.random.default_rng(7))
    assert a.colors == b.colors
    assert all(1 <= c <= 3 for c in a.colors)


def test_phase1_uniformity():
    h = Hypergraph(500, 3, [(1, 2, 3)])
    p = make_params(r=4, q=0.5, t=2)
    counts = [0, 0, 0, 0]
    runs = 80
    for seed in range(runs):
        for c in phase1(h, p, np.random.default_rng(seed)).colors:
            counts[c - 1] += 1
    total = 500 * runs
    se = math.sqrt(total * 0.25 * 0.75)
    for c in counts:
        assert abs(c - total / 4) <= 4 * se


def test_phase1_from_lists_respects_lists():
    h = Hypergraph(6, 3, [(1, 2, 3), (4, 5, 6)])
    lists = ListAssignment(tuple(frozenset({2 * i + 1, 2 * i + 2}) for i in range(6)))
    p = make_params(r=2)
    xi = phase1_from_lists(h, lists, np.random.default_rng(0))
    assert all(xi[i] in lists[i] for i in range(6))


# -- proposal distribution -----------------------------------------------------------


def test_proposal_frequencies():
    h = Hypergraph(2000, 3, [(1, 2, 3)])
    p = make_params(r=3, q=0.3, t=2)  # p_recolor = 0.15, zero mass = 0.55
    rng = np.random.default_rng(11)
    counts = {0: 0, 1: 0, 2: 0, 3: 0}
    runs = 25
    for _ in range(runs):
        for e in _draw_proposals(h, p, rng, None):
            counts[e] += 1
    total = 2000 * runs
    for c in (1, 2, 3):
        se = math.sqrt(total * 0.15 * 0.85)
        assert abs(counts[c] - total * 0.15) <= 4 * se
    se0 = math.sqrt(total * 0.55 * 0.45)
    assert abs(counts[0] - total * 0.55) <= 4 * se0


# -- phase 2 hand traces ---------------------------------------------------------------


def test_phase2_single_edge_forced_trace():
    h = Hypergraph(3, 3, [(1, 2, 3)])
    p = make_params(r=2, t=2, omega=1)
    zeta = phase2(h, p, (1, 1, 1), eta=(2, 0, 0))
    assert zeta.colors == (2, 1, 1)
    assert h.is_proper(zeta)


def test_phase2_proper_xi_is_untouched():
    h = Hypergraph(4, 3, [(1, 2, 3), (2, 3, 4)])
    p = make_params(r=2, t=2, omega=1)
    xi = (1, 1, 2, 1)
    zeta = phase2(h, p, xi, eta=(2, 2, 1, 2))  # proposals everywhere, no D_i
    assert zeta.colors == tuple(xi)


def test_phase2_blocks_completing_am_edge():
    # e0 = {1,2,3} monochromatic 1; f = {3,4,5} almost monochromatic in 2
    # (only vertex 3 differs). eta proposes 2 at vertex 3: D_3 holds but the
    # switch would complete f in color 2, so A_3 blocks it.
    h = Hypergraph(5, 3, [(1, 2, 3), (3, 4, 5)])
    p = make_params(r=2, t=2, omega=1)  # window = 1
    xi = (1, 1, 1, 2, 2)
    zeta = phase2(h, p, xi, eta=(0, 0, 2, 0, 0))
    assert zeta.colors == tuple(xi)  # blocked, and nothing else moved

    # without f the same proposal goes through
    h2 = Hypergraph(5, 3, [(1, 2, 3)])
    zeta2 = phase2(h2, p, xi, eta=(0, 0, 2, 0, 0))
    assert zeta2.colors == (1, 1, 2, 2, 2)


def test_phase2_d_requires_still_monochromatic():
    # vertex 1 recolors the mono edge; by vertex 2's turn it is broken,
    # so vertex 2 keeps xi even with a live proposal.
    h = Hypergraph(3, 3, [(1, 2, 3)])
    p = make_params(r=3, q=0.4, t=2, omega=1)
    zeta = phase2(h, p, (1, 1, 1), eta=(2, 3, 0))
    assert zeta.colors == (2, 1, 1)


def test_phase2_zeta_subset_of_xi_eta():
    p = make_params(r=3, q=0.3, t=2, omega=1)
    for seed in range(30):
        h = sample(ModelParams(n=12, k=3, p=0.12, seed=seed))
        rng = np.random.default_rng(seed + 1000)
        xi = phase1(h, p, rng)
        eta = _draw_proposals(h, p, rng, None)
        zeta = phase2(h, p, xi, eta=eta)
        for i in range(h.n):
            assert zeta[i] in (xi[i], eta[i])
            assert zeta[i] != 0


def test_phase2_changed_vertices_lie_in_mono_edges():
    p = make_params(r=2, t=2, omega=1)
    hits = 0
    for seed in range(60):
        h = sample(ModelParams(n=20, k=4, p=0.02, seed=seed))
        rng = np.random.default_rng(seed)
        xi = phase1(h, p, rng)
        zeta = phase2(h, p, xi, rng)
        for i in range(h.n):
            if zeta[i] != xi[i]:
                hits += 1
                v = i + 1
                assert any(
                    all(xi[u - 1] == xi[h.edges[e][0] - 1] for u in h.edges[e])
                    for e in h.incident_edges(v)
                )
    assert hits > 0  # the scenario actually exercised recoloring


def test_phase2_needs_rng_or_eta():
    h = Hypergraph(3, 3, [(1, 2, 3)])
    p = make_params()
    with pytest.raises(ValueError):
        phase2(h, p, (1, 1, 1))
    with pytest.raises(ValueError):
        phase2(h, p, (1, 1, 1), eta=(0, 0))  # wrong length


# -- full trials -------------------------------------------------------------------


def test_color_empty_hypergraph():
    h = Hypergraph(5, 3, [])
    out = color(h, 2, params=make_params())
    assert out.success
    assert out.trials_used == 1
    assert h.is_proper(out.coloring)


def test_color_single_edge_always_succeeds():
    h = Hypergraph(3, 3, [(1, 2, 3)])
    for seed in range(200):
        out = color(h, 2, params=make_params(), max_trials=50, seed=seed)
        assert out.success
        assert h.is_proper(out.coloring)


def test_color_deterministic():
    h = sample(ModelParams(n=14, k=3, p=0.12, seed=5))
    a = color(h, 2, params=make_params(), seed=9)
    b = color(h, 2, params=make_params(), seed=9)
    assert a.success == b.success
    assert a.trials_used == b.trials_used
    if a.success:
        assert a.coloring.colors == b.coloring.colors


def test_color_success_is_proper_and_counts_changes():
    p = make_params(r=2, t=2, omega=1)
    for seed in range(50):
        h = sample(ModelParams(n=13, k=3, p=0.1, seed=seed))
        out = color(h, 2, params=p, max_trials=50, seed=seed)
        if out.success:
            assert h.is_proper(out.coloring)
            assert 0 <= out.recolored_count <= h.n
            assert 1 <= out.trials_used <= 50


def test_color_default_params_derive_with_clamp():
    h = Hypergraph(4, 3, [(1, 2, 3), (2, 3, 4)])
    out = color(h, 2, max_trials=20, seed=0)
    assert out.params.q_clamped  # k=3, r=2 forces the cap
    assert out.success


def test_color_rejects_mismatched_r():
    h = Hypergraph(3, 3, [(1, 2, 3)])
    with pytest.raises(ParameterError):
        color(h, 3, params=make_params(r=2))
    with pytest.raises(ValueError):
        color(h, 2, params=make_params(), max_trials=0)


# -- list variant ---------------------------------------------------------------------


def test_lists_identical_behaves_like_plain():
    h = sample(ModelParams(n=12, k=3, p=0.1, seed=3))
    lists = ListAssignment(tuple(frozenset({1, 2}) for _ in range(h.n)))
    plain_succ = 0
    list_succ = 0
    for seed in range(60):
        if color(h, 2, params=make_params(), seed=seed).success:
            plain_succ += 1
        if color_from_lists(h, lists, params=make_params(), seed=seed).success:
            list_succ += 1
    # same algorithm on the same streams: identical success pattern
    assert plain_succ == list_succ


def test_lists_disjoint_never_monochromatic():
    h = Hypergraph(3, 3, [(1, 2, 3)])
    lists = ListAssignment((frozenset({1, 2}), frozenset({3, 4}), frozenset({5, 6})))
    for seed in range(50):
        out = color_from_lists(h, lists, params=make_params(), seed=seed)
        assert out.success
        assert out.trials_used == 1
        assert out.recolored_count == 0  # nothing was ever monochromatic


def test_lists_colors_stay_in_lists():
    lists = ListAssignment(
        tuple(frozenset({i + 1, i + 2, 50 + i}) for i in range(10))
    )
    p = make_params(r=3, q=0.4, t=2)
    for seed in range(40):
        h = sample(ModelParams(n=10, k=3, p=0.15, seed=seed))
        out = color_from_lists(h, lists, params=p, max_trials=30, seed=seed)
        if out.success:
            assert all(out.coloring[i] in lists[i] for i in range(10))


def test_lists_blocking_traces():
    # Note u is in M(f) automatically whenever the block fires: the k-1
    # carriers hold u through their own lists and the proposer through eta.
    h = Hypergraph(5, 3, [(1, 2, 3), (3, 4, 5)])
    p = make_params(r=2, t=2, omega=1)  # window = 1

    # f = {3,4,5} almost monochromatic in 2 (only vertex 3 differs):
    # the proposal at vertex 3 would complete f, so it is blocked.
    uniform = ListAssignment(tuple(frozenset({1, 2}) for _ in range(5)))
    xi = (1, 1, 1, 2, 2)
    held = phase2(h, p, xi, eta=(0, 0, 2, 0, 0), lists=uniform)
    assert held.colors == tuple(xi)

    # with vertex 4 at a third color, f has two non-2 vertices, which is
    # outside the window: not almost monochromatic, so the switch goes through
    mixed = ListAssignment(
        (
            frozenset({1, 2}),
            frozenset({1, 2}),
            frozenset({1, 2}),
            frozenset({1, 3}),
            frozenset({2, 3}),
        )
    )
    xi2 = (1, 1, 1, 3, 2)
    went = phase2(h, p, xi2, eta=(0, 0, 2, 0, 0), lists=mixed)
    assert went.colors == (1, 1, 2, 3, 2)
    assert h.is_proper(went)


def test_color_from_lists_size_mismatch():
    h = Hypergraph(4, 3, [(1, 2, 3)])
    with pytest.raises(ValueError):
        color_from_lists(h, ListAssignment((frozenset({1, 2}),)), params=make_params())
