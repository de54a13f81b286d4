"""Simultaneous chordal recognition.

The recognizer repeatedly removes a vertex whose two split
neighbourhoods (taken in the running union, including accumulated fill
edges) induce cliques in their respective host graphs, adding the
cross-side fill its removal forces.  Emptying the instance yields a
certificate: the accumulated fill plus the removal order, which is a
perfect elimination ordering of the augmented union.  Getting stuck
yields a re-checkable diagnostic of the stuck state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Graph, ParseError, UnknownVertex, bits, find_peo, is_peo, mask_of
from .instance import SharedInstance, union_graph

__all__ = [
    "ChordalCertificate",
    "ChordalDiagnostic",
    "neighbors_split",
    "is_clique_in",
    "eliminable_vertex",
    "fill_edges",
    "recognize",
    "verify_certificate",
    "verify_diagnostic",
    "format_result",
    "parse_result",
]


@dataclass(frozen=True)
class ChordalCertificate:
    """YES evidence: augmenting edges and the elimination order that proves them."""

    augmenting: frozenset[tuple[int, int]]
    elimination_order: tuple[int, ...]


@dataclass(frozen=True)
class ChordalDiagnostic:
    """NO evidence: the stuck residual vertex set and the fill accumulated so far."""

    residual: tuple[int, ...]
    fill: frozenset[tuple[int, int]]


def _neighbor_mask(
    inst: SharedInstance, v: int, fill: Iterable[tuple[int, int]], alive_mask: int
) -> int:
    m = inst.g1.adj.get(v, 0) | inst.g2.adj.get(v, 0)
    for a, b in fill:
        if a == v:
            m |= 1 << b
        elif b == v:
            m |= 1 << a
    return m & alive_mask


def neighbors_split(
    inst: SharedInstance,
    v: int,
    fill: Iterable[tuple[int, int]] = (),
    alive: Iterable[int] | None = None,
) -> tuple[frozenset[int], frozenset[int]]:
    """Neighbours of ``v`` over E1, E2, the forced edges and ``fill``,
    split into the V1 part and the V2 part.

    Shared vertices belong to both sides, so a shared neighbour shows up
    in both returned sets.
    """
    if v not in inst.names:
        raise UnknownVertex(f"no vertex with id {v}")
    alive_mask = mask_of(alive) if alive is not None else mask_of(inst.all_vertices)
    m = _neighbor_mask(inst, v, set(inst.forced) | set(fill), alive_mask)
    n1 = m & inst.g1.vmask
    n2 = m & inst.g2.vmask
    return frozenset(bits(n1)), frozenset(bits(n2))


def is_clique_in(
    inst: SharedInstance,
    host: int,
    vertices: Iterable[int],
    peo: Iterable[int] | None = None,
) -> bool:
    """Does ``vertices`` induce a clique in host graph 1 or 2?

    With ``peo`` (a perfect elimination ordering of the host, filtered
    to whatever vertices are still of interest) the test is a single
    neighbourhood-superset check at the first member along the order.
    Without it, every pair is checked directly.
    """
    g = inst.g1 if host == 1 else inst.g2
    vs = set(vertices)
    if len(vs) <= 1:
        return True
    m = mask_of(vs)
    if peo is not None:
        first = next((u for u in peo if u in vs), None)
        if first is None:
            return False
        return not (m & ~g.adj[first] & ~(1 << first))
    return all(not (m & ~g.adj[u] & ~(1 << u)) for u in vs)


def eliminable_vertex(
    inst: SharedInstance,
    fill: Iterable[tuple[int, int]] = (),
    alive: Iterable[int] | None = None,
) -> int | None:
    """Smallest live vertex whose split neighbourhoods induce host cliques.

    Neighbourhoods are taken in the running union (original edges plus
    forced plus ``fill``) restricted to ``alive``; the clique tests use
    original host edges only.
    """
    live = tuple(sorted(alive)) if alive is not None else inst.all_vertices
    fillset = set(inst.forced) | set(fill)
    alive_mask = mask_of(live)
    for v in live:
        m = _neighbor_mask(inst, v, fillset, alive_mask)
        n1 = m & inst.g1.vmask
        n2 = m & inst.g2.vmask
        if is_clique_in(inst, 1, bits(n1)) and is_clique_in(inst, 2, bits(n2)):
            return v
    return None


def fill_edges(
    inst: SharedInstance,
    v: int,
    fill: Iterable[tuple[int, int]] = (),
    alive: Iterable[int] | None = None,
) -> frozenset[tuple[int, int]]:
    """Cross-side pairs forced by eliminating ``v``: every private V1
    neighbour paired with every private V2 neighbour."""
    n1, n2 = neighbors_split(inst, v, fill, alive)
    xs = set(inst.x)
    left = sorted(n1 - xs)
    right = sorted(n2 - xs)
    out = set()
    for a in left:
        for b in right:
            out.add((a, b) if a < b else (b, a))
    return frozenset(out)


def recognize(
    inst: SharedInstance, tie_break: str = "min"
) -> ChordalCertificate | ChordalDiagnostic:
    """Run the elimination loop to completion.

    ``tie_break`` selects which eliminable vertex is removed when several
    qualify ("min" or "max" id); the YES/NO answer does not depend on the
    choice, which the test suite exploits as an invariance check.
    """
    if tie_break not in ("min", "max"):
        raise ValueError("tie_break must be 'min' or 'max'")
    g1, g2 = inst.g1, inst.g2
    xs = set(inst.x)

    # Host coordinates follow a perfect elimination ordering when one
    # exists: the first live member of a clique candidate is then its
    # lowest set bit, and one superset test decides the clique question.
    def host_setup(g: Graph):
        peo = find_peo(g)
        order = peo if peo is not None else g.vertices
        pos = {v: i for i, v in enumerate(order)}
        padj = [0] * len(order)
        for v in order:
            row = 0
            for u in bits(g.adj[v]):
                row |= 1 << pos[u]
            padj[pos[v]] = row
        return pos, padj, peo is not None

    pos1, padj1, fast1 = host_setup(g1)
    pos2, padj2, fast2 = host_setup(g2)
    xpos1 = mask_of(pos1[v] for v in xs if v in pos1)
    xpos2 = mask_of(pos2[v] for v in xs if v in pos2)
    id_at1 = {p: v for v, p in pos1.items()}
    id_at2 = {p: v for v, p in pos2.items()}

    verts = inst.all_vertices
    np1 = {v: 0 for v in verts}
    np2 = {v: 0 for v in verts}
    in1 = set(g1.vertices)
    in2 = set(g2.vertices)

    def connect(u: int, v: int) -> None:
        if u in in1:
            np1[v] |= 1 << pos1[u]
        if u in in2:
            np2[v] |= 1 << pos2[u]
        if v in in1:
            np1[u] |= 1 << pos1[v]
        if v in in2:
            np2[u] |= 1 << pos2[v]

    fill_set: set[tuple[int, int]] = set(inst.forced)
    for u, v in set(g1.edges) | set(g2.edges) | inst.forced:
        connect(u, v)

    def clique_ok(s: int, padj: list[int], fast: bool) -> bool:
        if not s:
            return True
        if fast:
            i = (s & -s).bit_length() - 1
            return not (s & ~padj[i] & ~(1 << i))
        m = s
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            if s & ~padj[i] & ~low:
                return False
        return True

    alive = set(verts)
    scan = sorted(verts, reverse=(tie_break == "max"))
    death: list[int] = []
    while alive:
        found = None
        for v in scan:
            if v not in alive:
                continue
            if clique_ok(np1[v], padj1, fast1) and clique_ok(np2[v], padj2, fast2):
                found = v
                break
        if found is None:
            return ChordalDiagnostic(tuple(sorted(alive)), frozenset(fill_set))
        v = found
        left = [id_at1[p] for p in bits(np1[v] & ~xpos1)]
        right = [id_at2[p] for p in bits(np2[v] & ~xpos2)]
        for a in left:
            for b in right:
                key = (a, b) if a < b else (b, a)
                if key not in fill_set:
                    fill_set.add(key)
                    connect(a, b)
        alive.discard(v)
        death.append(v)
        if v in in1:
            vb = ~(1 << pos1[v])
            for u in alive:
                np1[u] &= vb
        if v in in2:
            vb = ~(1 << pos2[v])
            for u in alive:
                np2[u] &= vb
    return ChordalCertificate(frozenset(fill_set), tuple(death))


def verify_certificate(inst: SharedInstance, cert: ChordalCertificate) -> bool:
    """Re-check a YES answer from scratch.

    The augmenting set must consist of cross-side pairs, contain every
    forced edge, and the claimed elimination order must be a perfect
    elimination ordering of the augmented union.
    """
    p1, p2 = set(inst.private1), set(inst.private2)
    for u, v in cert.augmenting:
        if not ((u in p1 and v in p2) or (u in p2 and v in p1)):
            return False
    if not cert.augmenting >= inst.forced:
        return False
    g = union_graph(inst, cert.augmenting)
    return is_peo(g, cert.elimination_order)


def verify_diagnostic(inst: SharedInstance, diag: ChordalDiagnostic) -> bool:
    """Re-check the stuck state: no residual vertex is eliminable under the fill."""
    if not set(diag.residual) <= set(inst.all_vertices):
        return False
    return eliminable_vertex(inst, diag.fill, diag.residual) is None


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def format_result(
    inst: SharedInstance, res: ChordalCertificate | ChordalDiagnostic
) -> str:
    def edge_list(pairs):
        return " ".join(f"{inst.names[u]}-{inst.names[v]}" for u, v in sorted(pairs))

    if isinstance(res, ChordalCertificate):
        lines = [
            "YES",
            f"A: {edge_list(res.augmenting)}".rstrip(),
            f"PEO: {' '.join(inst.names[v] for v in res.elimination_order)}".rstrip(),
        ]
    else:
        lines = [
            "NO",
            f"RESIDUAL: {' '.join(inst.names[v] for v in res.residual)}".rstrip(),
            f"F: {edge_list(res.fill)}".rstrip(),
        ]
    return "\n".join(lines) + "\n"


def _parse_edges(inst: SharedInstance, tokens: list[str]) -> frozenset[tuple[int, int]]:
    out = set()
    for tok in tokens:
        parts = tok.split("-")
        if len(parts) != 2:
            raise ParseError(f"bad edge token {tok!r}")
        u, v = (inst.id_of(p) for p in parts)
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


def parse_result(
    inst: SharedInstance, text: str
) -> ChordalCertificate | ChordalDiagnostic:
    """Parse the text emitted by :func:`format_result` against an instance."""
    fields = {}
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] not in ("YES", "NO"):
        raise ParseError("expected YES or NO on the first line")
    for ln in lines[1:]:
        key, sep, rest = ln.partition(":")
        if not sep:
            raise ParseError(f"bad line {ln!r}")
        fields[key.strip()] = rest.split()
    if lines[0] == "YES":
        if "A" not in fields or "PEO" not in fields:
            raise ParseError("YES result needs A: and PEO: lines")
        order = tuple(inst.id_of(n) for n in fields["PEO"])
        return ChordalCertificate(_parse_edges(inst, fields["A"]), order)
    if "RESIDUAL" not in fields or "F" not in fields:
        raise ParseError("NO result needs RESIDUAL: and F: lines")
    residual = tuple(sorted(inst.id_of(n) for n in fields["RESIDUAL"]))
    return ChordalDiagnostic(residual, _parse_edges(inst, fields["F"]))
