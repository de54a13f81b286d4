"""Graph primitives shared by all recognizers.

Vertices are small non-negative integer ids carrying printable names.
Adjacency is stored as one bitmask per vertex, so neighbourhood algebra
(intersection, subset and clique tests) costs a few machine-word
operations instead of per-element loops.

Directed edge sets are plain ``frozenset`` values of ``(tail, head)``
pairs; :func:`inverse`, :func:`hat` and :func:`is_transitive` provide
the algebra on them.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

__all__ = [
    "SimGraphError",
    "ParseError",
    "XInducedMismatch",
    "IllegalEdge",
    "IllegalForced",
    "ForcedNotSupported",
    "UnknownVertex",
    "NotAnEdge",
    "InvalidOrientation",
    "CompletionFailure",
    "CyclicUnion",
    "InconsistentOnX",
    "BudgetExceeded",
    "InternalInvariantError",
    "bits",
    "mask_of",
    "Graph",
    "inverse",
    "hat",
    "is_transitive",
    "find_peo",
    "is_peo",
]


class SimGraphError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SimGraphError):
    """Malformed instance or certificate text."""


class XInducedMismatch(SimGraphError):
    """The two input graphs disagree on an edge induced by the shared set."""


class IllegalEdge(SimGraphError):
    """Loop, duplicate edge, or an edge joining the two private sides."""


class IllegalForced(SimGraphError):
    """A forced edge whose endpoints are not one private vertex per side."""


class ForcedNotSupported(SimGraphError):
    """Operation does not accept instances with forced edges."""


class UnknownVertex(SimGraphError):
    """Vertex id or name outside the instance."""


class NotAnEdge(SimGraphError):
    """A directed pair whose underlying pair is not an edge of the graph."""


class InvalidOrientation(SimGraphError):
    """Orientation input fails its precondition (coverage or per-side transitivity)."""


class CompletionFailure(SimGraphError):
    """Completed orientation failed the transitivity assertion: upstream bug."""


class CyclicUnion(SimGraphError):
    """Union of the two orientations contains a directed cycle: upstream bug."""


class InconsistentOnX(SimGraphError):
    """Two total orders disagree on the shared vertex set."""


class BudgetExceeded(SimGraphError):
    """Brute-force search would exceed the configured budget."""


class InternalInvariantError(SimGraphError):
    """An invariant the algorithms guarantee was violated: implementation bug."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


class Graph:
    """Simple undirected graph: no loops, no parallel edges.

    ``names`` maps vertex id to display name; ids need not be contiguous
    (the two graphs of a shared instance use one global id space).
    """

    __slots__ = ("names", "vertices", "vmask", "adj", "edges", "_ids")

    def __init__(self, names: Mapping[int, str], edges: Iterable[tuple[int, int]] = ()):
        self.names = dict(names)
        self.vertices = tuple(sorted(self.names))
        self.vmask = mask_of(self.vertices)
        self._ids = {name: v for v, name in self.names.items()}
        adj = {v: 0 for v in self.vertices}
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise IllegalEdge(f"loop at vertex {u}")
            if u not in adj or v not in adj:
                raise IllegalEdge(f"edge ({u},{v}) has an endpoint outside the vertex set")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise IllegalEdge(f"duplicate edge {key}")
            seen.add(key)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = adj
        self.edges = frozenset(seen)

    @classmethod
    def from_names(cls, names: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> "Graph":
        """Build a graph over string names; ids are assigned in sorted-name order."""
        ordered = sorted(set(names))
        ids = {name: i for i, name in enumerate(ordered)}
        pairs = []
        for a, b in edges:
            if a not in ids or b not in ids:
                raise IllegalEdge(f"edge ({a},{b}) has an endpoint outside the vertex set")
            pairs.append((ids[a], ids[b]))
        return cls({i: n for n, i in ids.items()}, pairs)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def name(self, v: int) -> str:
        try:
            return self.names[v]
        except KeyError:
            raise UnknownVertex(f"no vertex with id {v}") from None

    def id_of(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UnknownVertex(f"no vertex named {name!r}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj.get(u, 0) >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        if v not in self.adj:
            raise UnknownVertex(f"no vertex with id {v}")
        return tuple(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        m = mask_of(vs)
        return all(not (m & ~self.adj[v] & ~(1 << v)) for v in vs)

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        ks = set(keep)
        names = {v: self.names[v] for v in ks}
        edges = [(u, v) for u, v in self.edges if u in ks and v in ks]
        return Graph(names, edges)

    def complement(self) -> "Graph":
        verts = self.vertices
        edges = [
            (u, v)
            for i, u in enumerate(verts)
            for v in verts[i + 1 :]
            if not self.has_edge(u, v)
        ]
        return Graph(self.names, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.names == other.names and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


def inverse(t: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Reverse every directed edge."""
    return frozenset((v, u) for u, v in t)


def hat(t: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Symmetric closure: the set together with its inverse."""
    s = frozenset(t)
    return s | inverse(s)


def is_transitive(t: Iterable[tuple[int, int]]) -> bool:
    """True iff (a,b) and (b,c) in the set always imply (a,c).

    A set containing both directions of a pair is never transitive
    (that would require a loop, and loops are excluded).
    """
    out: dict[int, int] = {}
    pairs = list(t)
    for u, v in pairs:
        if u == v:
            return False
        out[u] = out.get(u, 0) | (1 << v)
    for u, v in pairs:
        if out.get(v, 0) & ~out[u]:
            return False
    return True


def is_peo(g: Graph, order: Iterable[int]) -> bool:
    """Check that ``order`` is a perfect elimination ordering of ``g``.

    Each vertex must be simplicial in the subgraph induced by itself and
    its successors: its later neighbours form a clique.
    """
    seq = list(order)
    if sorted(seq) != list(g.vertices):
        return False
    pos = {v: i for i, v in enumerate(seq)}
    for v in seq:
        later = [u for u in bits(g.adj[v]) if pos[u] > pos[v]]
        if len(later) < 2:
            continue
        first = min(later, key=pos.__getitem__)
        m = mask_of(later) & ~(1 << first)
        if m & ~g.adj[first]:
            return False
    return True


def find_peo(g: Graph) -> tuple[int, ...] | None:
    """Perfect elimination ordering of ``g``, or None when ``g`` is not chordal.

    Maximum cardinality search produces a candidate order which is then
    checked explicitly, so a returned order always satisfies
    :func:`is_peo`. Deterministic: MCS ties go to the largest id, which
    makes the emitted order prefer small ids first.
    """
    n = g.n
    if n == 0:
        return ()
    weight = {v: 0 for v in g.vertices}
    visited = 0
    visit: list[int] = []
    remaining = set(g.vertices)
    for _ in range(n):
        best = max(remaining, key=lambda v: (weight[v], v))
        remaining.discard(best)
        visit.append(best)
        visited |= 1 << best
        for u in bits(g.adj[best] & ~visited):
            weight[u] += 1
    order = tuple(reversed(visit))
    return order if is_peo(g, order) else None
