"""Random k-uniform hypergraphs: structure, coloring, and threshold bounds.

The package splits into small layers:

* hypergraph: immutable k-uniform hypergraphs, structural statistics,
  and the text format;
* model: seeded sampling of the binomial model H(n, k, p);
* recolor: the two-phase random recoloring colorer (plain and list);
* oracle: exact colorability for small instances;
* bounds: log-space evaluation of named threshold and degree bounds,
  feasibility conditions, and local-lemma style checks;
* sweep: reproducible Monte Carlo sweeps along a p-grid with CSV output;
* plots: figure rendering for sweep results;
* cli: the hgcolor command.
"""

from .bounds import (
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
from .errors import CapacityError, ParameterError, ParseError
from .hypergraph import (
    Coloring,
    Hypergraph,
    ListAssignment,
    read_hypergraph,
    write_hypergraph,
)
from .logspace import LogValue, log_add, log_comb
from .model import (
    ModelParams,
    chernoff_tail,
    colex_rank,
    colex_unrank,
    expected_edge_count,
    expected_max_degree_threshold,
    sample,
    sample_coupled,
    threshold_p,
)
from .oracle import (
    OracleLimits,
    OracleResult,
    chromatic_number,
    is_r_choosable_over_palette,
    is_r_colorable,
)
from .recolor import (
    RecoloringParams,
    TrialOutcome,
    color,
    color_from_lists,
    derive_params,
    is_almost_monochromatic,
    phase1,
    phase1_from_lists,
    phase2,
)
from .sweep import (
    SweepConfig,
    SweepRecord,
    read_sweep_csv,
    run_sweep,
    wilson_ci,
    write_sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CapacityError",
    "Coloring",
    "DEGREE_IDS",
    "Hypergraph",
    "ListAssignment",
    "LogValue",
    "ModelParams",
    "OracleLimits",
    "OracleResult",
    "ParameterError",
    "ParseError",
    "RecoloringParams",
    "SweepConfig",
    "SweepRecord",
    "THRESHOLD_IDS",
    "TrialOutcome",
    "chernoff_tail",
    "chromatic_number",
    "colex_rank",
    "colex_unrank",
    "color",
    "color_from_lists",
    "d_max",
    "default_omega",
    "degree_bound",
    "dependency_sum",
    "derive_params",
    "expected_edge_count",
    "expected_max_degree_threshold",
    "feasibility_report",
    "find_min_feasible_k",
    "is_almost_monochromatic",
    "is_r_choosable_over_palette",
    "is_r_colorable",
    "local_lemma_margin",
    "log_add",
    "log_comb",
    "phase1",
    "phase1_from_lists",
    "phase2",
    "phi",
    "read_hypergraph",
    "read_sweep_csv",
    "run_sweep",
    "sample",
    "sample_coupled",
    "t_parameter",
    "threshold_bound",
    "threshold_p",
    "wilson_ci",
    "write_hypergraph",
    "write_sweep_csv",
    "__version__",
]
