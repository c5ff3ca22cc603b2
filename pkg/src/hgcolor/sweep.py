"""Monte Carlo sweeps of the colorability probability along a p-grid.

Every (point, sample) pair owns the RNG streams derived from
SeedSequence(seed, spawn_key=(point, sample)), so a sample's outcome is a
pure function of the config and its two indices.  Results are gathered
and sorted by those indices before aggregation, which makes the CSV
byte-identical no matter how many worker processes ran the samples.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .errors import CapacityError, ParameterError
from .model import ModelParams, sample
from .oracle import is_r_colorable
from .recolor import derive_params, color

__all__ = [
    "SweepConfig",
    "SweepRecord",
    "CSV_COLUMNS",
    "wilson_ci",
    "run_sweep",
    "write_sweep_csv",
    "read_sweep_csv",
]

_METHODS = ("recolor", "oracle", "both")

# 95% two-sided normal quantile, to full double precision.
_Z95 = 1.959963984540054

CSV_SCHEMA_LINE = "# sweep-csv v1"
CSV_COLUMNS = (
    "n",
    "k",
    "r",
    "p",
    "samples",
    "successes",
    "estimate",
    "ci_low",
    "ci_high",
    "method",
    "seed",
    "mean_trials",
    "frac_2simple",
    "mean_max_triangles",
    "unknowns",
)


@dataclass(frozen=True)
class SweepConfig:
    """Immutable description of one sweep; workers share it read-only."""

    n: int
    k: int
    r: int
    p_grid: tuple
    samples_per_point: int = 100
    method: str = "recolor"
    max_trials: int = 50
    seed: int = 0
    alpha: float = 2.0
    b: float = 4.0
    omega: int | None = None

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ParameterError(
                f"method must be one of {_METHODS}, got {self.method!r}"
            )
        if self.samples_per_point < 1:
            raise ParameterError(
                f"need samples_per_point >= 1, got {self.samples_per_point}"
            )
        if self.max_trials < 1:
            raise ParameterError(f"need max_trials >= 1, got {self.max_trials}")
        if self.seed < 0:
            raise ParameterError(f"need seed >= 0, got {self.seed}")
        grid = tuple(float(p) for p in self.p_grid)
        if not grid:
            raise ParameterError("p_grid is empty")
        for p in grid:
            if not 0.0 <= p <= 1.0:
                raise ParameterError(f"grid probability {p} outside [0, 1]")
        for lo, hi in zip(grid, grid[1:]):
            if not lo < hi:
                raise ParameterError(
                    f"p_grid must be strictly increasing, saw {lo} before {hi}"
                )
        object.__setattr__(self, "p_grid", grid)


def config_from_json(text: str, **overrides) -> SweepConfig:
    """Build a SweepConfig from a JSON object; keyword overrides win.

    The grid comes either as an explicit "p_grid" array or as the triple
    "p_from"/"p_to"/"p_steps" (inclusive endpoints, p_steps >= 2 points).
    Override values equal to None are ignored, so CLI defaults pass
    through without clobbering file values.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParameterError("config must be a JSON object")
    known = {
        "n", "k", "r", "p_grid", "p_from", "p_to", "p_steps",
        "samples_per_point", "method", "max_trials", "seed",
        "alpha", "b", "omega",
    }
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ParameterError(f"unknown config keys: {', '.join(unknown)}")
    merged = dict(raw)
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    grid = merged.pop("p_grid", None)
    p_from = merged.pop("p_from", None)
    p_to = merged.pop("p_to", None)
    p_steps = merged.pop("p_steps", None)
    if grid is None:
        if p_from is None or p_to is None or p_steps is None:
            raise ParameterError("config needs p_grid or p_from/p_to/p_steps")
        if p_steps < 2:
            raise ParameterError(f"need p_steps >= 2, got {p_steps}")
        grid = np.linspace(float(p_from), float(p_to), int(p_steps)).tolist()
    for field in ("n", "k", "r"):
        if field not in merged:
            raise ParameterError(f"config is missing {field!r}")
    return SweepConfig(p_grid=tuple(grid), **merged)


@dataclass(frozen=True)
class SweepRecord:
    """One CSV row: a (p-point, method) aggregate over the samples.

    mean_trials is None for oracle rows (the oracle does not retry);
    unknowns counts samples the row could not decide (oracle budget or
    capacity), which still sit in the denominator of estimate.
    """

    n: int
    k: int
    r: int
    p: float
    samples: int
    successes: int
    estimate: float
    wilson_ci_low: float
    wilson_ci_high: float
    method: str
    seed: int
    mean_trials: float | None
    frac_2simple: float
    mean_max_triangles: float
    unknowns: int

    def __post_init__(self):
        if not 0 <= self.successes <= self.samples:
            raise ValueError(
                f"successes {self.successes} outside 0..{self.samples}"
            )
        if not math.isclose(self.estimate, self.successes / self.samples):
            raise ValueError("estimate must equal successes/samples")
        if not 0.0 <= self.wilson_ci_low <= self.estimate <= self.wilson_ci_high <= 1.0:
            raise ValueError("confidence interval must bracket the estimate in [0,1]")


def wilson_ci(successes: int, samples: int, z: float = _Z95) -> tuple:
    """Wilson score interval for a binomial proportion."""
    if samples < 1:
        raise ValueError(f"need samples >= 1, got {samples}")
    if not 0 <= successes <= samples:
        raise ValueError(f"successes {successes} outside 0..{samples}")
    phat = successes / samples
    z2 = z * z
    denom = 1.0 + z2 / samples
    center = (phat + z2 / (2 * samples)) / denom
    half = (z / denom) * math.sqrt(
        phat * (1 - phat) / samples + z2 / (4 * samples * samples)
    )
    # rounding can push an endpoint past phat by an ulp at phat in {0, 1};
    # the interval must bracket the point estimate
    lo = min(max(0.0, center - half), phat)
    hi = max(min(1.0, center + half), phat)
    return (lo, hi)


def _sample_seeds(cfg: SweepConfig, point: int, samp: int) -> tuple:
    ss = np.random.SeedSequence(cfg.seed, spawn_key=(point, samp))
    model_seed, color_seed = (int(x) for x in ss.generate_state(2, np.uint64))
    return model_seed, color_seed


def _run_sample(cfg: SweepConfig, point: int, samp: int) -> dict:
    """Run one (point, sample) cell; module-level so workers can pickle it.

    The returned dict is plain data: structural stats plus per-method
    outcomes ("success", "failure", "unknown").
    """
    p = cfg.p_grid[point]
    model_seed, color_seed = _sample_seeds(cfg, point, samp)
    out = {"point": point, "sample": samp}
    try:
        h = sample(ModelParams(n=cfg.n, k=cfg.k, p=p, seed=model_seed))
    except CapacityError:
        out["stats"] = None
        for method in ("recolor", "oracle"):
            out[method] = "unknown"
        return out
    out["stats"] = {
        "m": h.m,
        "two_simple": h.is_l_simple(2),
        "max_triangles": h.max_triangles_per_edge(),
    }
    if cfg.method in ("recolor", "both"):
        params = derive_params(
            cfg.k, cfg.r, alpha=cfg.alpha, b=cfg.b, omega=cfg.omega, clamp_q=True
        )
        outcome = color(
            h, cfg.r, params=params, max_trials=cfg.max_trials, seed=color_seed
        )
        out["recolor"] = "success" if outcome.success else "failure"
        out["trials"] = outcome.trials_used
    if cfg.method in ("oracle", "both"):
        try:
            res = is_r_colorable(h, cfg.r)
            out["oracle"] = {"yes": "success", "no": "failure"}.get(
                res.status, "unknown"
            )
        except CapacityError:
            out["oracle"] = "unknown"
    if cfg.method == "both" and out.get("recolor") == "success":
        # The recolorer verified its witness, so an exact "no" here would
        # mean one of the two is broken.
        assert out["oracle"] != "failure", "recoloring succeeded on an instance the oracle rejects"
    return out


def _aggregate(cfg: SweepConfig, point: int, cells: list, method: str) -> SweepRecord:
    samples = len(cells)
    successes = sum(1 for c in cells if c.get(method) == "success")
    unknowns = sum(1 for c in cells if c.get(method) == "unknown")
    stats = [c["stats"] for c in cells if c["stats"] is not None]
    if stats:
        frac_2simple = sum(1 for s in stats if s["two_simple"]) / len(stats)
        mean_max_triangles = sum(s["max_triangles"] for s in stats) / len(stats)
    else:
        frac_2simple = 0.0
        mean_max_triangles = 0.0
    mean_trials = None
    if method == "recolor":
        trials = [c["trials"] for c in cells if "trials" in c]
        if trials:
            mean_trials = sum(trials) / len(trials)
    low, high = wilson_ci(successes, samples)
    return SweepRecord(
        n=cfg.n,
        k=cfg.k,
        r=cfg.r,
        p=cfg.p_grid[point],
        samples=samples,
        successes=successes,
        estimate=successes / samples,
        wilson_ci_low=low,
        wilson_ci_high=high,
        method=method,
        seed=cfg.seed,
        mean_trials=mean_trials,
        frac_2simple=frac_2simple,
        mean_max_triangles=mean_max_triangles,
        unknowns=unknowns,
    )


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list:
    """Run the sweep and return SweepRecord rows, points in grid order.

    With method="both" each point yields a recolor row then an oracle row.
    workers > 1 fans the (point, sample) cells out to a process pool; the
    rows are identical to a single-process run by construction.
    """
    if workers < 1:
        raise ValueError(f"need workers >= 1, got {workers}")
    tasks = [
        (point, samp)
        for point in range(len(cfg.p_grid))
        for samp in range(cfg.samples_per_point)
    ]
    if workers == 1:
        cells = [_run_sample(cfg, pt, s) for pt, s in tasks]
    else:
        run_cell = partial(_run_sample, cfg)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(
                pool.map(
                    run_cell,
                    (pt for pt, _ in tasks),
                    (s for _, s in tasks),
                    chunksize=8,
                )
            )
    cells.sort(key=lambda c: (c["point"], c["sample"]))
    methods = ("recolor", "oracle") if cfg.method == "both" else (cfg.method,)
    records = []
    per_point = cfg.samples_per_point
    for point in range(len(cfg.p_grid)):
        chunk = cells[point * per_point : (point + 1) * per_point]
        for method in methods:
            records.append(_aggregate(cfg, point, chunk, method))
    return records


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_sweep_csv(records, out) -> None:
    """Write rows under the versioned header; out is a path or text file."""
    if isinstance(out, (str, bytes)):
        with open(out, "w", newline="") as fh:
            write_sweep_csv(records, fh)
        return
    out.write(CSV_SCHEMA_LINE + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(
            [
                _format_cell(v)
                for v in (
                    rec.n, rec.k, rec.r, rec.p, rec.samples, rec.successes,
                    rec.estimate, rec.wilson_ci_low, rec.wilson_ci_high,
                    rec.method, rec.seed, rec.mean_trials, rec.frac_2simple,
                    rec.mean_max_triangles, rec.unknowns,
                )
            ]
        )


def read_sweep_csv(src) -> list:
    """Parse a file written by write_sweep_csv back into SweepRecord rows."""
    if isinstance(src, (str, bytes)):
        with open(src, "r", newline="") as fh:
            return read_sweep_csv(fh)
    first = src.readline().rstrip("\n")
    if first != CSV_SCHEMA_LINE:
        raise ParameterError(f"not a sweep CSV: first line {first!r}")
    reader = csv.reader(src)
    header = next(reader, None)
    if header is None or tuple(header) != CSV_COLUMNS:
        raise ParameterError(f"unexpected CSV columns: {header}")
    records = []
    for row in reader:
        if not row:
            continue
        vals = dict(zip(CSV_COLUMNS, row))
        records.append(
            SweepRecord(
                n=int(vals["n"]),
                k=int(vals["k"]),
                r=int(vals["r"]),
                p=float(vals["p"]),
                samples=int(vals["samples"]),
                successes=int(vals["successes"]),
                estimate=float(vals["estimate"]),
                wilson_ci_low=float(vals["ci_low"]),
                wilson_ci_high=float(vals["ci_high"]),
                method=vals["method"],
                seed=int(vals["seed"]),
                mean_trials=float(vals["mean_trials"]) if vals["mean_trials"] else None,
                frac_2simple=float(vals["frac_2simple"]),
                mean_max_triangles=float(vals["mean_max_triangles"]),
                unknowns=int(vals["unknowns"]),
            )
        )
    return records


def sweep_csv_text(records) -> str:
    """The exact CSV bytes as a string (handy for determinism checks)."""
    buf = io.StringIO()
    write_sweep_csv(records, buf)
    return buf.getvalue()
