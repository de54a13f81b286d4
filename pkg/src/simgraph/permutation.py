"""Simultaneous permutation recognition.

A pair is simultaneously a permutation pair exactly when it and its
complement pair are both simultaneously orientable.  The two
comparability certificates supply per-side transitive orientations of
each graph and of its complement; their union is an acyclic tournament,
so topologically sorting it (and the graph orientation reversed) gives
the two line orders of a segment representation.  The per-side orders
agree on the shared vertices by construction and are merged into one
global order pair.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .core import (
    CyclicUnion,
    ForcedNotSupported,
    InconsistentOnX,
    ParseError,
    bits,
    inverse,
)
from .instance import SharedInstance, complement_pair
from . import comparability
from .comparability import (
    ComparabilityCertificate,
    ForcingWitness,
    STAGE_CO_COMPARABILITY,
    STAGE_COMPARABILITY,
)

__all__ = [
    "OrderPair",
    "PermutationCertificate",
    "build_order_pair",
    "merge_orders",
    "recognize",
    "verify_certificate",
    "format_result",
    "parse_result",
]


@dataclass(frozen=True)
class OrderPair:
    """Orders along the two parallel lines of a segment diagram.

    Vertices adjacent in the realized graph appear in opposite relative
    order on ``top`` and ``bottom``; non-adjacent ones keep their order.
    """

    top: tuple[int, ...]
    bottom: tuple[int, ...]


@dataclass(frozen=True)
class PermutationCertificate:
    """YES evidence: a global order pair restricting to a realizer of
    each input graph, plus the two comparability certificates it came from."""

    pair: OrderPair
    comparability: ComparabilityCertificate
    co_comparability: ComparabilityCertificate


def _topo_min_id(arcs: Iterable[tuple[int, int]], verts: Iterable[int]) -> tuple[int, ...]:
    vs = sorted(verts)
    indeg = {v: 0 for v in vs}
    out = {v: [] for v in vs}
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    heap = [v for v in vs if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != len(vs):
        raise CyclicUnion("orientation union contains a directed cycle")
    return tuple(order)


def build_order_pair(
    graph_orientation: Iterable[tuple[int, int]],
    co_orientation: Iterable[tuple[int, int]],
    verts: Iterable[int],
) -> OrderPair:
    """Line orders from a graph orientation and a complement orientation.

    ``top`` sorts their union; ``bottom`` sorts the union with the graph
    orientation reversed, which is what flips exactly the adjacent
    pairs.  Both unions are acyclic whenever the inputs really are
    transitive orientations of a graph and of its complement; a cycle
    means an upstream bug and raises.
    """
    f = frozenset(graph_orientation)
    r = frozenset(co_orientation)
    vs = tuple(sorted(verts))
    top = _topo_min_id(f | r, vs)
    bottom = _topo_min_id(inverse(f) | r, vs)
    return OrderPair(top, bottom)


def merge_orders(
    o1: Iterable[int], o2: Iterable[int], shared: Iterable[int]
) -> tuple[int, ...]:
    """Interleave two total orders that agree on the shared vertices.

    Before each shared vertex (and after the last) the pending private
    vertices of the first order are emitted, then those of the second.
    """
    a, b = list(o1), list(o2)
    xs = set(shared)
    if [v for v in a if v in xs] != [v for v in b if v in xs]:
        raise InconsistentOnX("orders disagree on the shared vertices")
    out: list[int] = []
    i = j = 0
    for anchor in (v for v in a if v in xs):
        while a[i] != anchor:
            out.append(a[i])
            i += 1
        while b[j] != anchor:
            out.append(b[j])
            j += 1
        out.append(anchor)
        i += 1
        j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _restrict(t: frozenset[tuple[int, int]], keep: set[int]) -> frozenset[tuple[int, int]]:
    return frozenset((u, v) for u, v in t if u in keep and v in keep)


def recognize(inst: SharedInstance) -> PermutationCertificate | ForcingWitness:
    """Decide simultaneous permutation membership via the two
    comparability runs, forwarding whichever witness refutes it."""
    if inst.forced:
        raise ForcedNotSupported("permutation recognition does not take forced edges")
    comp = comparability.recognize(inst)
    if isinstance(comp, ForcingWitness):
        return comp
    co_inst = complement_pair(inst)
    co = comparability.recognize(co_inst)
    if isinstance(co, ForcingWitness):
        return ForcingWitness(co.conflict_edge, co.chain, co.class_edges, STAGE_CO_COMPARABILITY)

    v1, v2 = set(inst.g1.vertices), set(inst.g2.vertices)
    pairs = []
    for keep in (v1, v2):
        f = _restrict(comp.orientation, keep)
        r = _restrict(co.orientation, keep)
        pairs.append(build_order_pair(f, r, keep))
    top = merge_orders(pairs[0].top, pairs[1].top, inst.x)
    bottom = merge_orders(pairs[0].bottom, pairs[1].bottom, inst.x)
    return PermutationCertificate(OrderPair(top, bottom), comp, co)


def _realizes(inst: SharedInstance, pair: OrderPair) -> bool:
    tpos = {v: i for i, v in enumerate(pair.top)}
    bpos = {v: i for i, v in enumerate(pair.bottom)}
    for g in (inst.g1, inst.g2):
        vs = g.vertices
        for i, u in enumerate(vs):
            for v in vs[i + 1 :]:
                inverted = (tpos[u] < tpos[v]) != (bpos[u] < bpos[v])
                if inverted != g.has_edge(u, v):
                    return False
    return True


def verify_certificate(inst: SharedInstance, cert: PermutationCertificate) -> bool:
    """Re-check a YES answer: both orders are permutations of all
    vertices, each input graph is realized by inversions on restriction,
    and both embedded comparability certificates verify."""
    verts = sorted(inst.all_vertices)
    if sorted(cert.pair.top) != verts or sorted(cert.pair.bottom) != verts:
        return False
    if not _realizes(inst, cert.pair):
        return False
    if not comparability.verify_certificate(inst, cert.comparability):
        return False
    if inst.forced:
        return False
    return comparability.verify_certificate(complement_pair(inst), cert.co_comparability)


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def format_result(
    inst: SharedInstance, res: PermutationCertificate | ForcingWitness
) -> str:
    if isinstance(res, ForcingWitness):
        return comparability.format_witness(inst, res, with_stage=True)
    lines = [
        "YES",
        f"L: {' '.join(inst.names[v] for v in res.pair.top)}",
        f"P: {' '.join(inst.names[v] for v in res.pair.bottom)}",
        "COMP:",
        *comparability.certificate_lines(inst, res.comparability),
        "CO-COMP:",
        *comparability.certificate_lines(inst, res.co_comparability),
    ]
    return "\n".join(lines) + "\n"


def parse_result(
    inst: SharedInstance, text: str
) -> PermutationCertificate | ForcingWitness:
    """Parse the text emitted by :func:`format_result`."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] not in ("YES", "NO"):
        raise ParseError("expected YES or NO on the first line")
    if lines[0] == "NO":
        return comparability.parse_witness(inst, lines[1:])
    try:
        comp_at = lines.index("COMP:")
        co_at = lines.index("CO-COMP:")
    except ValueError:
        raise ParseError("YES result needs COMP: and CO-COMP: blocks") from None
    fields = {}
    for ln in lines[1:comp_at]:
        key, sep, rest = ln.partition(":")
        if not sep:
            raise ParseError(f"bad line {ln!r}")
        fields[key.strip()] = rest.split()
    if "L" not in fields or "P" not in fields:
        raise ParseError("YES result needs L: and P: lines")
    top = tuple(inst.id_of(n) for n in fields["L"])
    bottom = tuple(inst.id_of(n) for n in fields["P"])
    comp = comparability.parse_result(inst, "\n".join(["YES"] + lines[comp_at + 1 : co_at]))
    co = comparability.parse_result(inst, "\n".join(["YES"] + lines[co_at + 1 :]))
    return PermutationCertificate(OrderPair(top, bottom), comp, co)
