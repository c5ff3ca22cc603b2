"""Immutable k-uniform hypergraphs and their structural queries.

Vertices are the integers 1..n.  Edges are k-element subsets, stored as
sorted tuples in a stable order (the sampling order for generated
instances), plus one arbitrary-precision bitmask per edge so that
intersection size is a single popcount.

The triangle machinery follows the 3-cycle definition used throughout:
three distinct edges e, f, h form a triangle when the three differences
(e & f) - h, (e & h) - f and (h & f) - e are all nonempty.  Derived
counts: T_e is the set of triangles containing e; D(u', u) counts the
triangles of T_u containing the edge u'; d(v, u) counts triangles
(u, u', u'') of T_u whose "far" intersection (u' & u'') - u contains the
vertex v (zero by convention for v in u).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError

__all__ = [
    "Hypergraph",
    "Coloring",
    "ListAssignment",
    "read_hypergraph",
    "write_hypergraph",
]


@dataclass(frozen=True)
class Coloring:
    """Vertex colors: entry i is the color of vertex i+1, a positive int."""

    colors: tuple

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        for i, c in enumerate(self.colors):
            if c < 1:
                raise ValueError(f"vertex {i + 1}: colors must be >= 1, got {c}")

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, i: int) -> int:
        return self.colors[i]


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color lists, all of one common size r."""

    lists: tuple

    def __post_init__(self):
        norm = []
        for i, lst in enumerate(self.lists):
            s = frozenset(int(c) for c in lst)
            if len(s) != len(tuple(lst)):
                raise ValueError(f"vertex {i + 1}: list has repeated colors")
            if any(c < 1 for c in s):
                raise ValueError(f"vertex {i + 1}: list colors must be >= 1")
            norm.append(s)
        if norm:
            sizes = {len(s) for s in norm}
            if len(sizes) != 1:
                raise ValueError(f"lists must share one size, got sizes {sorted(sizes)}")
        object.__setattr__(self, "lists", tuple(norm))

    @property
    def r(self) -> int:
        if not self.lists:
            raise ValueError("empty list assignment has no list size")
        return len(self.lists[0])

    def __len__(self) -> int:
        return len(self.lists)

    def __getitem__(self, i: int) -> frozenset:
        return self.lists[i]


def _color_seq(c, n: int) -> tuple:
    """Coerce a Coloring or plain sequence to a length-checked tuple."""
    seq = c.colors if isinstance(c, Coloring) else tuple(int(x) for x in c)
    if len(seq) != n:
        raise ValueError(f"coloring length {len(seq)} != vertex count {n}")
    return seq


class Hypergraph:
    """Immutable k-uniform hypergraph on vertices 1..n."""

    __slots__ = ("n", "k", "edges", "_masks", "_incident", "_triangle_cache")

    def __init__(self, n: int, k: int, edges: Iterable[Sequence[int]]):
        n = int(n)
        k = int(k)
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        if k < 2:
            raise ValueError(f"need k >= 2, got {k}")
        if k > n:
            raise ValueError(f"edge size k={k} exceeds vertex count n={n}")
        norm = []
        seen = set()
        for pos, e in enumerate(edges):
            vs = tuple(sorted(int(v) for v in e))
            if len(vs) != k or len(set(vs)) != k:
                raise ValueError(f"edge {pos}: needs {k} distinct vertices, got {e!r}")
            if vs[0] < 1 or vs[-1] > n:
                raise ValueError(f"edge {pos}: vertex out of range 1..{n} in {e!r}")
            if vs in seen:
                raise ValueError(f"edge {pos}: duplicate edge {vs!r}")
            seen.add(vs)
            norm.append(vs)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "edges", tuple(norm))
        masks = []
        for vs in norm:
            m = 0
            for v in vs:
                m |= 1 << v
            masks.append(m)
        object.__setattr__(self, "_masks", tuple(masks))
        incident = [[] for _ in range(n + 1)]
        for idx, vs in enumerate(norm):
            for v in vs:
                incident[v].append(idx)
        object.__setattr__(self, "_incident", tuple(tuple(lst) for lst in incident))
        object.__setattr__(self, "_triangle_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, m={self.m})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and self.k == other.k
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.edges))

    # -- incidence ---------------------------------------------------------

    def incident_edges(self, v: int) -> tuple:
        self._check_vertex(v)
        return self._incident[v]

    def vertex_degree(self, v: int) -> int:
        """Number of edges containing vertex v."""
        self._check_vertex(v)
        return len(self._incident[v])

    def max_degree(self) -> int:
        if self.m == 0:
            return 0
        return max(len(self._incident[v]) for v in range(1, self.n + 1))

    def edge_degree(self, e: int) -> int:
        """Number of other edges meeting edge e in at least one vertex."""
        self._check_edge(e)
        return len(self._neighbors(e))

    # -- pairwise structure -------------------------------------------------

    def is_l_simple(self, l: int) -> bool:
        """True iff every pair of distinct edges shares at most l vertices."""
        if l < 1:
            raise ValueError(f"need l >= 1, got {l}")
        if l >= self.k:
            return True
        masks = self._masks
        for i, j in self._meeting_pairs():
            if (masks[i] & masks[j]).bit_count() > l:
                return False
        return True

    def count_heavy_pairs(self, min_size: int) -> int:
        """Count unordered edge pairs with intersection size >= min_size."""
        if min_size < 1:
            raise ValueError(f"need min_size >= 1, got {min_size}")
        masks = self._masks
        return sum(
            1
            for i, j in self._meeting_pairs()
            if (masks[i] & masks[j]).bit_count() >= min_size
        )

    # -- triangles ----------------------------------------------------------

    def triangles_containing(self, e: int) -> list:
        """All triangles through edge e, as sorted edge-index triples.

        A triple {e, f, h} qualifies when (e&f)-h, (e&h)-f and (h&f)-e are
        all nonempty.  Enumeration walks unordered pairs of neighbors of e,
        so the cost is O(deg(e)^2) popcount checks rather than O(m^2).
        """
        self._check_edge(e)
        cached = self._triangle_cache.get(e)
        if cached is not None:
            return list(cached)
        masks = self._masks
        me = masks[e]
        nbrs = self._neighbors(e)
        out = []
        for a in range(len(nbrs)):
            f = nbrs[a]
            mf = masks[f]
            ef = me & mf
            for b in range(a + 1, len(nbrs)):
                h = nbrs[b]
                mh = masks[h]
                fh = mf & mh
                if fh == 0:
                    continue
                if (ef & ~mh) and ((me & mh) & ~mf) and (fh & ~me):
                    out.append(tuple(sorted((e, f, h))))
        out.sort()
        self._triangle_cache[e] = tuple(out)
        return out

    def max_triangles_per_edge(self) -> int:
        """max over edges e of the number of triangles containing e."""
        if self.m == 0:
            return 0
        return max(len(self.triangles_containing(e)) for e in range(self.m))

    def edge_degree_wrt(self, u_prime: int, u: int) -> int:
        """D(u', u): triangles of T_u that contain the edge u'."""
        self._check_edge(u_prime)
        self._check_edge(u)
        if u_prime == u:
            raise ValueError(f"edge indices must differ, both are {u}")
        return sum(1 for tri in self.triangles_containing(u) if u_prime in tri)

    def vertex_degree_wrt(self, v: int, u: int) -> int:
        """d(v, u): triangles (u, u', u'') of T_u with v in (u' & u'') - u.

        Zero whenever v lies in u itself.
        """
        self._check_vertex(v)
        self._check_edge(u)
        mu = self._masks[u]
        bit = 1 << v
        if mu & bit:
            return 0
        masks = self._masks
        count = 0
        for tri in self.triangles_containing(u):
            rest = [idx for idx in tri if idx != u]
            if masks[rest[0]] & masks[rest[1]] & bit:
                count += 1
        return count

    # -- colorings ----------------------------------------------------------

    def is_proper(self, c) -> bool:
        """True iff no edge is monochromatic under the coloring."""
        seq = _color_seq(c, self.n)
        for vs in self.edges:
            first = seq[vs[0] - 1]
            if all(seq[v - 1] == first for v in vs[1:]):
                return False
        return True

    # -- internals ----------------------------------------------------------

    def _check_vertex(self, v: int):
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range 1..{self.n}")

    def _check_edge(self, e: int):
        if not 0 <= e < self.m:
            raise ValueError(f"edge index {e} out of range 0..{self.m - 1}")

    def _neighbors(self, e: int) -> list:
        """Distinct edges meeting e, ascending."""
        seen = set()
        for v in self.edges[e]:
            seen.update(self._incident[v])
        seen.discard(e)
        return sorted(seen)

    def _meeting_pairs(self):
        """Unordered pairs (i, j), i < j, of edges sharing a vertex."""
        seen = set()
        for lst in self._incident[1:]:
            for a in range(len(lst)):
                for b in range(a + 1, len(lst)):
                    seen.add((lst[a], lst[b]))
        return seen


# -- text format -------------------------------------------------------------
#
# Header line "n k m", then m lines of k strictly increasing vertex ids.
# Lines starting with '#' (and blank lines) are ignored.


def read_hypergraph(text: str) -> Hypergraph:
    header = None
    edges = []
    seen = set()
    n = k = m = 0
    last_line = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(x) for x in fields]
        except ValueError:
            raise ParseError(line_no, f"non-integer token in {line!r}")
        if header is None:
            if len(values) != 3:
                raise ParseError(line_no, f"header must be 'n k m', got {line!r}")
            n, k, m = values
            if n < 1 or k < 2 or m < 0:
                raise ParseError(line_no, f"header out of range: n={n} k={k} m={m}")
            if k > n:
                raise ParseError(line_no, f"header has k={k} > n={n}")
            header = (n, k, m)
            continue
        if len(edges) >= m:
            raise ParseError(line_no, f"more than the {m} edges announced in the header")
        if len(values) != k:
            raise ParseError(line_no, f"expected {k} vertex ids, got {len(values)}")
        for a, b in zip(values, values[1:]):
            if b <= a:
                raise ParseError(line_no, f"vertex ids must be strictly increasing: {line!r}")
        if values[0] < 1 or values[-1] > n:
            raise ParseError(line_no, f"vertex out of range 1..{n}: {line!r}")
        key = tuple(values)
        if key in seen:
            raise ParseError(line_no, f"duplicate edge {line!r}")
        seen.add(key)
        edges.append(values)
    if header is None:
        raise ParseError(max(last_line, 1), "missing 'n k m' header")
    if len(edges) != m:
        raise ParseError(last_line, f"header announced {m} edges, found {len(edges)}")
    return Hypergraph(n, k, edges)


def write_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.k} {h.m}"]
    for vs in h.edges:
        lines.append(" ".join(str(v) for v in vs))
    return "\n".join(lines) + "\n"
