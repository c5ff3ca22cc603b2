"""Command-line front end.

Exit codes follow one convention everywhere: 0 success/true, 1 failure/
false, 2 unknown or capacity exceeded, 64 usage (bad flags, bad ids, bad
input files).  argparse's own usage failures are remapped from its
default exit 2, which this convention reserves for capacity.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

import numpy as np

from .bounds import (
    DEGREE_IDS,
    THRESHOLD_IDS,
    default_omega,
    degree_bound,
    feasibility_report,
    find_min_feasible_k,
    t_parameter,
    threshold_bound,
)
from .errors import CapacityError, ParameterError, ParseError
from .hypergraph import Hypergraph, read_hypergraph, write_hypergraph
from .model import ModelParams, expected_edge_count, sample
from .oracle import OracleLimits, chromatic_number, is_r_colorable
from .recolor import RecoloringParams, color, derive_params
from .sweep import SweepConfig, config_from_json, run_sweep, write_sweep_csv

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def _load(path: str) -> Hypergraph:
    with open(path, "r") as fh:
        return read_hypergraph(fh.read())


# -- gen ---------------------------------------------------------------------


def _cmd_gen(args, parser) -> int:
    params = ModelParams(n=args.n, k=args.k, p=args.p, seed=args.seed)
    h = sample(params)
    with open(args.out, "w") as fh:
        fh.write(write_hypergraph(h))
    print(f"m={h.m}")
    print(f"expected={expected_edge_count(params)!r}")
    return 0


# -- analyze -----------------------------------------------------------------


def _max_codegrees(h: Hypergraph):
    """Largest D(u', u) and d(v, u) over all admissible argument pairs."""
    max_edge = 0
    max_vertex = 0
    for u in range(h.m):
        tris = h.triangles_containing(u)
        if not tris:
            continue
        u_verts = set(h.edges[u])
        per_edge: Counter = Counter()
        per_vertex: Counter = Counter()
        for tri in tris:
            others = [e for e in tri if e != u]
            per_edge[others[0]] += 1
            per_edge[others[1]] += 1
            shared = set(h.edges[others[0]]) & set(h.edges[others[1]]) - u_verts
            for v in shared:
                per_vertex[v] += 1
        max_edge = max(max_edge, max(per_edge.values()))
        if per_vertex:
            max_vertex = max(max_vertex, max(per_vertex.values()))
    return max_edge, max_vertex


def _cmd_analyze(args, parser) -> int:
    h = _load(args.file)
    omega = args.omega if args.omega is not None else default_omega(h.k)
    max_tri = h.max_triangles_per_edge()
    max_edge_deg, max_vertex_deg = _max_codegrees(h)
    print(f"n={h.n}")
    print(f"k={h.k}")
    print(f"m={h.m}")
    print(f"max_degree={h.max_degree()}")
    print(f"l={args.l}")
    print(f"l_simple={_bool_str(h.is_l_simple(args.l))}")
    print(f"two_simple={_bool_str(h.is_l_simple(2))}")
    print(f"heavy_pairs_3={h.count_heavy_pairs(3)}")
    print(f"max_triangles_per_edge={max_tri}")
    print(f"omega={omega}")
    print(f"max_triangles_le_omega={_bool_str(max_tri <= omega)}")
    print(f"max_D={max_edge_deg}")
    print(f"max_d={max_vertex_deg}")
    print(f"max_D_le_4={_bool_str(max_edge_deg <= 4)}")
    print(f"max_d_le_4={_bool_str(max_vertex_deg <= 4)}")
    return 0


# -- color -------------------------------------------------------------------


def _manual_params(k: int, args) -> RecoloringParams:
    t = t_parameter(k, args.alpha)
    omega = args.omega if args.omega is not None else default_omega(k)
    q = args.q
    return RecoloringParams(
        r=args.r,
        alpha=args.alpha,
        b=args.b,
        t=t,
        q=q,
        p_recolor=q / (args.r - 1),
        omega=omega,
        condition1=args.b <= t < k - omega,
        condition2=2.0 / k <= q <= 0.5,
    )


def _cmd_color(args, parser) -> int:
    h = _load(args.file)
    if args.q is not None:
        params = _manual_params(h.k, args)
    else:
        params = derive_params(
            h.k, args.r, alpha=args.alpha, b=args.b, omega=args.omega, clamp_q=True
        )
    outcome = color(h, args.r, params=params, max_trials=args.max_trials, seed=args.seed)
    print(f"success={_bool_str(outcome.success)}")
    print(f"trials={outcome.trials_used}")
    print(f"q={params.q!r}")
    print(f"q_clamped={_bool_str(params.q_clamped)}")
    if outcome.success:
        print(f"recolored={outcome.recolored_count}")
        print("coloring=" + " ".join(str(c) for c in outcome.coloring.colors))
        return 0
    return 1


# -- oracle ------------------------------------------------------------------


def _cmd_oracle(args, parser) -> int:
    h = _load(args.file)
    limits = OracleLimits(max_vertices=args.max_vertices, max_assignments=args.budget)
    if args.chromatic:
        value = chromatic_number(h, limits)
        print(f"chromatic={value}")
        return 0
    if args.r is None:
        parser.error("oracle needs --r (or --chromatic)")
    res = is_r_colorable(h, args.r, limits)
    print(f"status={res.status}")
    print(f"nodes={res.nodes}")
    if res.status == "yes":
        print("coloring=" + " ".join(str(c) for c in res.witness.colors))
        return 0
    return 1 if res.status == "no" else 2


# -- bounds ------------------------------------------------------------------


def _print_logvalue(label: str, lv) -> None:
    print(f"{label}_log={lv.log!r}")
    print(f"{label}={lv.to_float()!r}")


def _cmd_bounds(args, parser) -> int:
    if args.check_feasibility:
        if args.k is None:
            parser.error("--check-theorem4 needs --k")
        rep = feasibility_report(
            args.k, args.r if args.r is not None else 2,
            omega=args.omega, alpha=args.alpha, b=args.b, d=args.d,
        )
        ex = rep.extras
        print(f"t={ex['t']}")
        print(f"q={ex['q']!r}")
        print(f"omega={rep.inputs['omega']}")
        for i, s in enumerate(ex["summands"], start=1):
            if s is None:
                print(f"summand{i}=undefined")
            else:
                _print_logvalue(f"summand{i}", s)
        _print_logvalue("total", rep.value)
        print(f"condition1={_bool_str(ex['condition1'])}")
        print(f"condition2={_bool_str(ex['condition2'])}")
        print(f"condition3={_bool_str(ex['condition3'])}")
        if ex["d_ok"] is not None:
            print(f"d_ok={_bool_str(ex['d_ok'])}")
            _print_logvalue("d_max", ex["d_max"])
        print(f"satisfied={_bool_str(rep.satisfied)}")
        return 0
    if args.min_k:
        if args.k_lo is None or args.k_hi is None:
            parser.error("--min-k needs --k-lo and --k-hi")
        found = find_min_feasible_k(
            args.k_lo, args.k_hi, omega=args.omega, alpha=args.alpha, b=args.b
        )
        print(f"min_k={found if found is not None else 'none'}")
        return 0
    bound_id = args.bound_id
    if bound_id is None:
        parser.error("give a bound id, --check-theorem4, or --min-k")
    if bound_id in THRESHOLD_IDS:
        for name in ("n", "k", "r"):
            if getattr(args, name) is None:
                parser.error(f"threshold bound {bound_id!r} needs --{name}")
        lv = threshold_bound(
            bound_id, args.n, args.k, args.r,
            eps=args.eps, c=args.c, delta=args.delta,
        )
    elif bound_id in DEGREE_IDS:
        for name in ("k", "r"):
            if getattr(args, name) is None:
                parser.error(f"degree bound {bound_id!r} needs --{name}")
        lv = degree_bound(bound_id, args.k, args.r)
    else:
        parser.error(f"unknown bound id {bound_id!r}")
    print(f"bound={bound_id}")
    _print_logvalue("value", lv)
    return 0


# -- sweep / plot --------------------------------------------------------------


def _grid_from_flags(args, parser):
    if args.p_grid is not None:
        try:
            return tuple(float(x) for x in args.p_grid.split(","))
        except ValueError:
            parser.error(f"bad --p-grid {args.p_grid!r}: use comma-separated floats")
    if args.p_from is not None or args.p_to is not None or args.p_steps is not None:
        if args.p_from is None or args.p_to is None or args.p_steps is None:
            parser.error("--p-from/--p-to/--p-steps must be given together")
        if args.p_steps < 2:
            parser.error("need --p-steps >= 2")
        return tuple(np.linspace(args.p_from, args.p_to, args.p_steps).tolist())
    return None


def _cmd_sweep(args, parser) -> int:
    grid = _grid_from_flags(args, parser)
    overrides = dict(
        n=args.n, k=args.k, r=args.r,
        samples_per_point=args.samples, method=args.method,
        max_trials=args.max_trials, seed=args.seed,
        alpha=args.alpha, b=args.b, omega=args.omega,
    )
    if args.config is not None:
        with open(args.config, "r") as fh:
            text = fh.read()
        if grid is not None:
            overrides["p_grid"] = list(grid)
        cfg = config_from_json(text, **overrides)
    else:
        if grid is None:
            parser.error("sweep needs --p-grid or --p-from/--p-to/--p-steps (or --config)")
        for name in ("n", "k", "r"):
            if getattr(args, name) is None:
                parser.error(f"sweep needs --{name} (or --config)")
        kwargs = {k: v for k, v in overrides.items() if v is not None}
        cfg = SweepConfig(p_grid=grid, **kwargs)
    records = run_sweep(cfg, workers=args.workers)
    write_sweep_csv(records, args.out)
    print(f"wrote {args.out} ({len(records)} rows)")
    if args.plot is not None:
        from .plots import render_sweep_plot

        render_sweep_plot(records, args.plot)
        print(f"plot {args.plot}")
    return 0


def _cmd_plot(args, parser) -> int:
    from .plots import render_sweep_plot
    from .sweep import read_sweep_csv

    records = read_sweep_csv(args.csv)
    if not records:
        parser.error(f"{args.csv} holds no rows")
    render_sweep_plot(records, args.out)
    print(f"plot {args.out}")
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hgcolor",
        description="Random k-uniform hypergraphs: generation, structure, "
        "coloring, exact oracles, probability bounds, threshold sweeps.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="sample H(n,k,p) to a file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("analyze", help="structural statistics of a hypergraph file")
    p.add_argument("file")
    p.add_argument("--l", type=int, default=2, help="simplicity level to test")
    p.add_argument("--omega", type=int, default=None,
                   help="triangle allowance (default: rule from k)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("color", help="run the two-phase recoloring colorer")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--b", type=float, default=4.0)
    p.add_argument("--omega", type=int, default=None)
    p.add_argument("--q", type=float, default=None,
                   help="override the derived recoloring rate")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("oracle", help="exact colorability by exhaustive search")
    p.add_argument("file")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--chromatic", action="store_true",
                   help="report the chromatic number instead of deciding one r")
    p.add_argument("--max-vertices", type=int, default=24)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bounds", help="evaluate named probability/degree bounds")
    p.add_argument("bound_id", nargs="?", default=None,
                   help=f"one of: {', '.join(THRESHOLD_IDS + DEGREE_IDS)}")
    p.add_argument("--check-theorem4", "--check-feasibility",
                   dest="check_feasibility", action="store_true",
                   help="evaluate the three feasibility conditions")
    p.add_argument("--min-k", action="store_true",
                   help="search [--k-lo, --k-hi] for the least feasible k")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=None,
                   help="max degree input for lemma3")
    p.add_argument("--omega", type=int, default=None)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--b", type=float, default=4.0)
    p.add_argument("--d", type=float, default=None)
    p.add_argument("--k-lo", type=int, default=None)
    p.add_argument("--k-hi", type=int, default=None)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sweep", help="Monte Carlo colorability sweep over p")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--p-grid", default=None, help="comma-separated probabilities")
    p.add_argument("--p-from", type=float, default=None)
    p.add_argument("--p-to", type=float, default=None)
    p.add_argument("--p-steps", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--method", choices=("recolor", "oracle", "both"), default=None)
    p.add_argument("--max-trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--omega", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--plot", default=None, help="also render a figure here")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("plot", help="render a figure from an existing sweep CSV")
    p.add_argument("csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    except OSError as exc:
        name = getattr(exc, "filename", None)
        detail = exc.strerror or str(exc)
        print(f"error: {name or 'i/o'}: {detail}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
