"""Exact colorability checks by pruned exhaustive search.

Only for small instances; limits are hard caps, not tuning advice.  Every
search is budgeted and reports "unknown" instead of running away, so the
three-valued status has to be threaded through callers (the sweep loop
keeps separate tallies for it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from .errors import CapacityError
from .hypergraph import Coloring, Hypergraph, ListAssignment

__all__ = [
    "OracleLimits",
    "OracleResult",
    "is_r_colorable",
    "chromatic_number",
    "is_r_choosable_over_palette",
]


@dataclass(frozen=True)
class OracleLimits:
    """max_vertices caps instance size up front; max_assignments caps work.

    For colorability max_assignments counts search-tree nodes (color
    assignments tried, including dead ends); for choosability it bounds
    the total node count across all list assignments, whose number is
    prechecked against it.
    """

    max_vertices: int = 24
    max_assignments: int = 2_000_000

    def __post_init__(self):
        if self.max_vertices < 1:
            raise ValueError(f"need max_vertices >= 1, got {self.max_vertices}")
        if self.max_assignments < 1:
            raise ValueError(f"need max_assignments >= 1, got {self.max_assignments}")


@dataclass(frozen=True)
class OracleResult:
    """status is "yes", "no", or "unknown" (budget ran out first).

    witness is a proper coloring for "yes" answers from is_r_colorable,
    and for a "no" from the choosability check it is the list assignment
    admitting no proper coloring.  nodes counts assignments tried.
    """

    status: str
    witness: object = None
    nodes: int = 0

    def __post_init__(self):
        if self.status not in ("yes", "no", "unknown"):
            raise ValueError(f"bad status {self.status!r}")

    def __bool__(self):
        raise TypeError("three-valued result; compare .status explicitly")


def _search(h: Hypergraph, lists, budget: int, symmetric: bool):
    """Backtracking core shared by the plain and list-colorability paths.

    lists[i] is the ordered tuple of colors vertex i+1 may take.  With
    symmetric=True all lists must equal 1..r and color symmetry is broken
    by never opening a color above (highest used so far) + 1.  Returns
    (status, coloring or None, nodes used).
    """
    n, k = h.n, h.k
    # High-degree vertices first: their assignments constrain the most edges.
    order = sorted(range(1, n + 1), key=lambda v: (-h.vertex_degree(v), v))

    cnt = [0] * h.m  # assigned vertices per edge
    by_color = [dict() for _ in range(h.m)]  # color -> count among assigned

    assigned = [0] * (n + 1)
    choice = [0] * n
    max_used = [0] * (n + 1)  # prefix maxima along the current branch
    nodes = 0
    depth = 0

    def place(v, c):
        """Try color c on v; undo and report False on a monochromatic edge."""
        done = []
        for e in h.incident_edges(v):
            cnt[e] += 1
            bc = by_color[e]
            bc[c] = bc.get(c, 0) + 1
            done.append(e)
            if bc[c] == k:
                for f in done:
                    cnt[f] -= 1
                    bcf = by_color[f]
                    bcf[c] -= 1
                    if not bcf[c]:
                        del bcf[c]
                return False
        assigned[v] = c
        return True

    def unplace(v):
        c = assigned[v]
        assigned[v] = 0
        for e in h.incident_edges(v):
            cnt[e] -= 1
            bc = by_color[e]
            bc[c] -= 1
            if not bc[c]:
                del bc[c]

    while True:
        v = order[depth]
        opts = lists[v - 1]
        limit = min(len(opts), max_used[depth] + 1) if symmetric else len(opts)
        advanced = False
        while choice[depth] < limit:
            c = opts[choice[depth]]
            choice[depth] += 1
            nodes += 1
            if nodes > budget:
                return "unknown", None, nodes
            if place(v, c):
                max_used[depth + 1] = max(max_used[depth], c)
                advanced = True
                break
        if advanced:
            depth += 1
            if depth == n:
                result = Coloring(tuple(assigned[1 : n + 1]))
                return "yes", result, nodes
            choice[depth] = 0
        else:
            if depth == 0:
                return "no", None, nodes
            depth -= 1
            unplace(order[depth])


def is_r_colorable(h: Hypergraph, r: int, limits: OracleLimits | None = None) -> OracleResult:
    """Exhaustively decide whether h admits a proper coloring with colors 1..r.

    A "yes" carries the witness coloring (checked against is_proper before
    being returned).  Instances above limits.max_vertices raise
    CapacityError; an exhausted node budget yields status "unknown".
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    limits = limits or OracleLimits()
    if h.n > limits.max_vertices:
        raise CapacityError(
            f"{h.n} vertices exceed the oracle cap of {limits.max_vertices}"
        )
    if h.m == 0:
        return OracleResult("yes", Coloring((1,) * h.n), 0)
    palette = tuple(range(1, r + 1))
    status, coloring, nodes = _search(
        h, [palette] * h.n, limits.max_assignments, symmetric=True
    )
    if status == "yes":
        assert h.is_proper(coloring)
        return OracleResult("yes", coloring, nodes)
    return OracleResult(status, None, nodes)


def chromatic_number(h: Hypergraph, limits: OracleLimits | None = None) -> int:
    """Least r admitting a proper r-coloring; 1 for edgeless hypergraphs.

    Raises CapacityError when any level of the search exhausts its budget,
    since a nondecision there would make the returned number unsound.
    Termination: every k-uniform hypergraph with k >= 2 is properly
    colorable once r reaches its vertex count.
    """
    limits = limits or OracleLimits()
    if h.m == 0:
        return 1
    r = 1
    while True:
        res = is_r_colorable(h, r, limits)
        if res.status == "yes":
            return r
        if res.status == "unknown":
            raise CapacityError(
                f"search budget exhausted deciding {r}-colorability "
                f"({res.nodes} nodes)"
            )
        r += 1


def is_r_choosable_over_palette(
    h: Hypergraph, r: int, palette_size: int, limits: OracleLimits | None = None
) -> OracleResult:
    """Decide r-choosability restricted to lists drawn from {1..palette_size}.

    Runs over every assignment of r-subsets of the palette to vertices and
    list-backtracks each; "yes" means every assignment admits a proper
    coloring, "no" carries the first failing assignment as witness.  The
    assignment count is prechecked against the budget and raises
    CapacityError when hopeless.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    if palette_size < r:
        raise ValueError(f"palette {palette_size} can not host lists of size {r}")
    limits = limits or OracleLimits()
    if h.n > limits.max_vertices:
        raise CapacityError(
            f"{h.n} vertices exceed the oracle cap of {limits.max_vertices}"
        )
    n_lists = math.comb(palette_size, r)
    total = n_lists**h.n
    if total > limits.max_assignments:
        raise CapacityError(
            f"{total} list assignments exceed the budget of {limits.max_assignments}"
        )
    if h.m == 0 or h.n == 0:
        return OracleResult("yes", None, 0)
    subsets = [tuple(sorted(s)) for s in combinations(range(1, palette_size + 1), r)]
    nodes = 0
    budget = limits.max_assignments
    for pick in product(range(n_lists), repeat=h.n):
        lists = [subsets[j] for j in pick]
        status, _, used = _search(h, lists, budget - nodes, symmetric=False)
        nodes += used
        if status == "unknown":
            return OracleResult("unknown", None, nodes)
        if status == "no":
            witness = ListAssignment(tuple(frozenset(s) for s in lists))
            return OracleResult("no", witness, nodes)
    return OracleResult("yes", None, nodes)
