"""Figure rendering for sweep output.

Backend is forced to Agg before pyplot loads: rendering always goes to a
file, never a display, so the CLI works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["render_sweep_plot"]

_METHOD_STYLE = {
    "recolor": dict(color="tab:blue", marker="o"),
    "oracle": dict(color="tab:red", marker="s"),
}


def render_sweep_plot(records, out_path: str) -> str:
    """Render sweep rows to out_path and return the path.

    Top panel: estimated colorability probability against p, one curve
    per method with 95% CI bands.  Bottom panel: the structural
    companions (2-simple fraction, mean triangles per edge) that the
    rows carry.  The file format follows the out_path extension.
    """
    rows = list(records)
    if not rows:
        raise ValueError("no records to plot")
    methods = []
    for rec in rows:
        if rec.method not in methods:
            methods.append(rec.method)

    fig, (ax_top, ax_bot) = plt.subplots(
        2, 1, figsize=(7.0, 6.5), sharex=True,
        gridspec_kw={"height_ratios": [2.2, 1.0]},
    )
    for method in methods:
        sub = sorted((r for r in rows if r.method == method), key=lambda r: r.p)
        ps = [r.p for r in sub]
        est = [r.estimate for r in sub]
        lo = [r.wilson_ci_low for r in sub]
        hi = [r.wilson_ci_high for r in sub]
        style = _METHOD_STYLE.get(method, dict(marker="x"))
        ax_top.plot(ps, est, label=method, markersize=4, **style)
        ax_top.fill_between(ps, lo, hi, alpha=0.2, color=style.get("color"))
    ax_top.set_ylabel("P(proper coloring found)")
    ax_top.set_ylim(-0.02, 1.02)
    ax_top.legend(loc="best")
    ax_top.grid(True, alpha=0.3)

    first = rows[0]
    title = f"n={first.n}, k={first.k}, r={first.r}, {first.samples} samples/point"
    ax_top.set_title(title)

    # Structural stats are method-independent; take them from one method.
    base = sorted((r for r in rows if r.method == methods[0]), key=lambda r: r.p)
    ps = [r.p for r in base]
    ax_bot.plot(ps, [r.frac_2simple for r in base], color="tab:green",
                marker=".", label="2-simple fraction")
    ax_bot.set_ylabel("2-simple fraction", color="tab:green")
    ax_bot.set_ylim(-0.02, 1.02)
    ax_twin = ax_bot.twinx()
    ax_twin.plot(ps, [r.mean_max_triangles for r in base], color="tab:purple",
                 marker=".", linestyle="--", label="mean max triangles/edge")
    ax_twin.set_ylabel("mean max triangles/edge", color="tab:purple")
    ax_bot.set_xlabel("edge probability p")
    ax_bot.grid(True, alpha=0.3)

    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
