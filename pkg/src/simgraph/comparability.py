"""Simultaneous comparability recognition.

Directed edges of the two-graph union are grouped into forcing classes:
two directed edges are linked when they share an endpoint, their other
endpoints are non-adjacent, and both lie in the same input graph.  The
pair is simultaneously orientable exactly when no class contains an
edge in both directions.  On success the classes are peeled off in a
specific order (one-sided classes first, then classes meeting the
shared edges) and concatenated into an orientation whose restriction to
each input graph is transitive; a completion step adds the cross-side
arcs that make the whole union transitive.  On failure the offending
class is returned together with a replayable chain of forcing steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import re

from .core import (
    ForcedNotSupported,
    Graph,
    InternalInvariantError,
    InvalidOrientation,
    CompletionFailure,
    NotAnEdge,
    ParseError,
    bits,
    is_transitive,
    mask_of,
)
from .instance import SharedInstance, complement_pair

__all__ = [
    "KIND_SIDE1",
    "KIND_SIDE2",
    "KIND_SHARED",
    "EdgeClass",
    "Decomposition",
    "ForcingStep",
    "ForcingWitness",
    "ComparabilityCertificate",
    "forces",
    "implication_classes",
    "composite_classes",
    "decompose",
    "complete_orientation",
    "orient",
    "recognize",
    "verify_certificate",
    "verify_witness",
    "format_result",
    "format_witness",
    "parse_result",
]

KIND_SIDE1 = "side1"
KIND_SIDE2 = "side2"
KIND_SHARED = "shared"

STAGE_COMPARABILITY = "comparability"
STAGE_CO_COMPARABILITY = "co-comparability"


@dataclass(frozen=True)
class EdgeClass:
    """A forcing class: directed edges that must all flip together.

    One-sided classes stay inside one graph's private edges and carry a
    signed pairing label (a class and its inverse get +k and -k); classes
    that meet an edge induced by the shared vertices are tagged
    ``shared`` and carry label 0.
    """

    edges: frozenset[tuple[int, int]]
    kind: str
    label: int


@dataclass(frozen=True)
class Decomposition:
    """Peeling order whose classes concatenate into a valid orientation."""

    one_sided: tuple[EdgeClass, ...]
    shared: tuple[EdgeClass, ...]

    def all_classes(self) -> tuple[EdgeClass, ...]:
        return self.one_sided + self.shared


@dataclass(frozen=True)
class ForcingStep:
    """One forcing hop: ``edge_a`` and ``edge_b`` share ``shared`` as tail
    or head inside graph ``side``, and ``nonedge`` is the non-adjacent
    opposite pair that makes the hop binding."""

    edge_a: tuple[int, int]
    edge_b: tuple[int, int]
    side: int
    shared: int
    nonedge: tuple[int, int]


@dataclass(frozen=True)
class ForcingWitness:
    """NO evidence: a chain forcing some edge into both directions."""

    conflict_edge: tuple[int, int]
    chain: tuple[ForcingStep, ...]
    class_edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    stage: str = STAGE_COMPARABILITY


@dataclass(frozen=True)
class ComparabilityCertificate:
    """YES evidence: ``orientation`` covers every union edge once and is
    transitive on each side; ``full_orientation`` adds ``augmenting_arcs``
    between the private sides and is transitive outright."""

    orientation: frozenset[tuple[int, int]]
    augmenting_arcs: frozenset[tuple[int, int]]
    full_orientation: frozenset[tuple[int, int]]


def forces(g: Graph, e: tuple[int, int], f: tuple[int, int]) -> bool:
    """Direction-forcing relation between two directed edges of one graph.

    True when the edges share a tail and their heads are non-adjacent,
    or share a head and their tails are non-adjacent.  Reflexive.
    """
    for u, v in (e, f):
        if not g.has_edge(u, v):
            raise NotAnEdge(f"({u},{v}) is not an edge")
    (i, j), (i2, j2) = e, f
    if i == i2 and not g.has_edge(j, j2):
        return True
    if j == j2 and not g.has_edge(i, i2):
        return True
    return False


# ---------------------------------------------------------------------------
# Closure machinery
# ---------------------------------------------------------------------------


class _EdgeSpace:
    """Directed-edge arrays for a union of one or two graphs."""

    __slots__ = ("dedges", "idx", "inv", "sides_of", "adjs", "pairs")

    def __init__(self, graphs: dict[int, Graph]):
        pairs: set[tuple[int, int]] = set()
        for g in graphs.values():
            pairs |= g.edges
        self.pairs = sorted(pairs)
        dedges = sorted([(u, v) for u, v in self.pairs] + [(v, u) for u, v in self.pairs])
        self.dedges = dedges
        self.idx = {e: i for i, e in enumerate(dedges)}
        self.inv = [self.idx[(v, u)] for u, v in dedges]
        self.adjs = {s: g.adj for s, g in graphs.items()}
        sides_of = []
        for u, v in dedges:
            p = (u, v) if u < v else (v, u)
            sides_of.append(tuple(s for s, g in sorted(graphs.items()) if p in g.edges))
        self.sides_of = sides_of


def _closure(space: _EdgeSpace):
    """Partition the directed edges; record the forcing step that first
    reached each edge so witness chains can be replayed later."""
    dedges, idx, sides_of, adjs = space.dedges, space.idx, space.sides_of, space.adjs
    total = len(dedges)
    cid = [-1] * total
    classes: list[list[int]] = []
    parents: list[tuple | None] = [None] * total
    for seed in range(total):
        if cid[seed] != -1:
            continue
        k = len(classes)
        members = [seed]
        cid[seed] = k
        queue = [seed]
        qi = 0
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            i, j = dedges[e]
            for s in sides_of[e]:
                a = adjs[s]
                m = a[i] & ~a[j] & ~(1 << j)
                while m:
                    low = m & -m
                    jp = low.bit_length() - 1
                    m ^= low
                    f = idx[(i, jp)]
                    if cid[f] == -1:
                        cid[f] = k
                        members.append(f)
                        parents[f] = (e, s, i, (j, jp))
                        queue.append(f)
                m = a[j] & ~a[i] & ~(1 << i)
                while m:
                    low = m & -m
                    ip = low.bit_length() - 1
                    m ^= low
                    f = idx[(ip, j)]
                    if cid[f] == -1:
                        cid[f] = k
                        members.append(f)
                        parents[f] = (e, s, j, (i, ip))
                        queue.append(f)
        classes.append(members)
    return cid, classes, parents


def implication_classes(g: Graph) -> list[frozenset[tuple[int, int]]]:
    """Forcing-closure classes of a single graph's directed edges.

    Deterministic: classes are discovered from the lexicographically
    smallest unclassified directed edge, and the inverse of every class
    is again a class of the output.
    """
    space = _EdgeSpace({1: g})
    _, classes, _ = _closure(space)
    return [frozenset(space.dedges[m] for m in members) for members in classes]


def _class_kinds_labels(inst: SharedInstance, space: _EdgeSpace, cid, classes):
    xs = set(inst.x)
    kinds: list[str] = []
    for members in classes:
        shared = any(
            space.dedges[m][0] in xs and space.dedges[m][1] in xs for m in members
        )
        if shared:
            kinds.append(KIND_SHARED)
        else:
            u, v = space.dedges[members[0]]
            p = (u, v) if u < v else (v, u)
            kinds.append(KIND_SIDE1 if p in inst.g1.edges else KIND_SIDE2)
    labels: list[int | None] = [None] * len(classes)
    counter = 0
    for k, members in enumerate(classes):
        if kinds[k] == KIND_SHARED:
            labels[k] = 0
        elif labels[k] is None:
            counter += 1
            labels[k] = counter
            invk = cid[space.inv[members[0]]]
            if invk != k:
                labels[invk] = -counter
    return kinds, [0 if l is None else l for l in labels]


def composite_classes(inst: SharedInstance) -> list[EdgeClass]:
    """Forcing classes of the union, with hops confined to single graphs.

    Edges induced by the shared vertices belong to both graphs and are
    the only bridges between the two sides; classes that reach one are
    tagged ``shared``.
    """
    space = _EdgeSpace({1: inst.g1, 2: inst.g2})
    cid, classes, _ = _closure(space)
    kinds, labels = _class_kinds_labels(inst, space, cid, classes)
    return [
        EdgeClass(frozenset(space.dedges[m] for m in members), kinds[k], labels[k])
        for k, members in enumerate(classes)
    ]


def _witness_chain(space: _EdgeSpace, parents, src: int, dst: int) -> tuple[ForcingStep, ...]:
    """Chain of forcing steps from ``src`` to ``dst`` through the search tree."""

    def to_root(e):
        nodes = [e]
        steps = []
        while parents[e] is not None:
            pe, s, shared, nonedge = parents[e]
            steps.append((e, pe, s, shared, nonedge))
            e = pe
            nodes.append(e)
        return nodes, steps

    na, sa = to_root(src)
    nb, sb = to_root(dst)
    where_a = {e: t for t, e in enumerate(na)}
    t = 0
    while nb[t] not in where_a:
        t += 1
    cut_a, cut_b = where_a[nb[t]], t
    raw = list(sa[:cut_a])
    raw += [(pe, e, s, shared, nonedge) for e, pe, s, shared, nonedge in reversed(sb[:cut_b])]
    return tuple(
        ForcingStep(space.dedges[x], space.dedges[y], s, shared, nonedge)
        for x, y, s, shared, nonedge in raw
    )


def decompose(inst: SharedInstance) -> Decomposition | ForcingWitness:
    """Peel off classes in an order that concatenates into an orientation.

    A class found to contain some edge in both directions stops the
    process: that class, with a replayable forcing chain between the two
    directions, refutes every consistent orientation.

    The peeling itself runs on a union-find over directed edges: when a
    class is deleted, every triangle it closed re-links the two
    remaining edges (and, in lock-step, their inverses), which is exactly
    how the residual graph's classes arise from the old ones.
    """
    space = _EdgeSpace({1: inst.g1, 2: inst.g2})
    cid, classes, parents = _closure(space)
    inv = space.inv
    dedges = space.dedges

    for k, members in enumerate(classes):
        conflicted = sorted(m for m in members if cid[inv[m]] == k)
        if conflicted:
            src = conflicted[0]
            return ForcingWitness(
                conflict_edge=dedges[src],
                chain=_witness_chain(space, parents, src, inv[src]),
                class_edges=frozenset(dedges[m] for m in members),
            )

    kinds, labels0 = _class_kinds_labels(inst, space, cid, classes)
    total = len(dedges)
    parent = list(range(total))

    def find(x: int) -> int:
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            parent[x], x = r, parent[x]
        return r

    mem: dict[int, list[int]] = {}
    label: dict[int, int] = {}
    size: dict[int, int] = {}
    for k, members in enumerate(classes):
        root = members[0]
        for m in members:
            parent[m] = root
        mem[root] = list(members)
        label[root] = labels0[k]
        size[root] = len(members)

    dead = [False] * total
    ladj = {1: dict(inst.g1.adj), 2: dict(inst.g2.adj)}
    xs = set(inst.x)
    g1e, g2e = inst.g1.edges, inst.g2.edges

    def merge(rx: int, ry: int, new_label: int) -> None:
        if size[rx] < size[ry]:
            rx, ry = ry, rx
        parent[ry] = rx
        mem[rx].extend(mem.pop(ry))
        size[rx] += size.pop(ry)
        label.pop(ry)
        label[rx] = new_label

    def delete_class(root: int) -> None:
        members = mem[root]
        inv_root = find(inv[members[0]])
        und = [dedges[e] for e in members]
        for e in members:
            dead[e] = True
        for e in mem[inv_root]:
            dead[e] = True
        for b, c in und:
            p = (b, c) if b < c else (c, b)
            if p in g1e:
                ladj[1][b] &= ~(1 << c)
                ladj[1][c] &= ~(1 << b)
            if p in g2e:
                ladj[2][b] &= ~(1 << c)
                ladj[2][c] &= ~(1 << b)
        for b, c in und:
            p = (b, c) if b < c else (c, b)
            sides = [s for s, es in ((1, g1e), (2, g2e)) if p in es]
            for s in sides:
                la = ladj[s]
                common = la[b] & la[c]
                for a in bits(common):
                    ab, ac = space.idx[(a, b)], space.idx[(a, c)]
                    ra, rc = find(ab), find(ac)
                    if ra == rc:
                        continue
                    new_label = 0 if (label[ra] == 0 or label[rc] == 0) else label[ra]
                    merge(ra, rc, new_label)
                    rb, rd = find(inv[ab]), find(inv[ac])
                    if rb == rd:
                        raise InternalInvariantError(
                            "inverse partner sets merged out of lock-step"
                        )
                    merge(rb, rd, -new_label)

    def first_live_root(require_label: bool) -> int | None:
        for e in range(total):
            if dead[e]:
                continue
            r = find(e)
            if require_label and label[r] == 0:
                continue
            return r
        return None

    def freeze(root: int) -> EdgeClass:
        members = sorted(mem[root])
        mset = set(members)
        if any(inv[e] in mset for e in members):
            raise InternalInvariantError("peeled class contains both directions of an edge")
        shared = any(dedges[m][0] in xs and dedges[m][1] in xs for m in members)
        if shared:
            kind = KIND_SHARED
        else:
            u, v = dedges[members[0]]
            p = (u, v) if u < v else (v, u)
            kind = KIND_SIDE1 if p in g1e else KIND_SIDE2
        return EdgeClass(frozenset(dedges[m] for m in members), kind, label[root])

    one_sided: list[EdgeClass] = []
    while (r := first_live_root(True)) is not None:
        cls = freeze(r)
        if cls.kind == KIND_SHARED:
            raise InternalInvariantError("labelled class meets the shared edges")
        one_sided.append(cls)
        delete_class(r)
    shared_classes: list[EdgeClass] = []
    while (r := first_live_root(False)) is not None:
        cls = freeze(r)
        shared_classes.append(cls)
        delete_class(r)
    return Decomposition(tuple(one_sided), tuple(shared_classes))


# ---------------------------------------------------------------------------
# Orientation
# ---------------------------------------------------------------------------


def complete_orientation(
    inst: SharedInstance, orientation
) -> tuple[frozenset[tuple[int, int]], frozenset[tuple[int, int]]]:
    """Extend a per-side-transitive orientation across the private sides.

    For every shared vertex b, each private arc a->b entering from one
    side composes with each arc b->c leaving into the other side to
    force a->c.  The extended set is asserted transitive; a failure
    there can only mean the input violated its precondition in a way the
    checks missed, so it raises instead of returning.
    """
    t = frozenset(orientation)
    pairs = set(inst.g1.edges) | set(inst.g2.edges)
    seen = set()
    for u, v in t:
        p = (u, v) if u < v else (v, u)
        if p not in pairs:
            raise InvalidOrientation(f"({u},{v}) does not orient an edge of the union")
        if p in seen:
            raise InvalidOrientation(f"edge {p} oriented in both directions")
        seen.add(p)
    if seen != pairs:
        raise InvalidOrientation("orientation does not cover every edge")
    t1 = frozenset(e for e in t if ((min(e), max(e)) in inst.g1.edges))
    t2 = frozenset(e for e in t if ((min(e), max(e)) in inst.g2.edges))
    if not is_transitive(t1) or not is_transitive(t2):
        raise InvalidOrientation("a side restriction is not transitive")

    tout = {v: 0 for v in inst.all_vertices}
    tin = {v: 0 for v in inst.all_vertices}
    for u, v in t:
        tout[u] |= 1 << v
        tin[v] |= 1 << u
    p1m = mask_of(inst.private1)
    p2m = mask_of(inst.private2)
    arcs: set[tuple[int, int]] = set()
    for b in inst.x:
        for a in bits(tin[b] & p1m):
            for c in bits(tout[b] & p2m):
                arcs.add((a, c))
        for a in bits(tin[b] & p2m):
            for c in bits(tout[b] & p1m):
                arcs.add((a, c))
    full = t | arcs
    if not is_transitive(full):
        raise CompletionFailure("completed orientation is not transitive")
    return frozenset(full), frozenset(arcs)


def orient(inst: SharedInstance) -> ComparabilityCertificate | ForcingWitness:
    """Concatenate the peeled classes into a certificate, or pass on the witness."""
    d = decompose(inst)
    if isinstance(d, ForcingWitness):
        return d
    t: set[tuple[int, int]] = set()
    for cls in d.all_classes():
        t |= cls.edges
    full, arcs = complete_orientation(inst, t)
    return ComparabilityCertificate(frozenset(t), arcs, full)


def recognize(inst: SharedInstance) -> ComparabilityCertificate | ForcingWitness:
    """Decide simultaneous comparability; forced edges are out of scope here."""
    if inst.forced:
        raise ForcedNotSupported("comparability recognition does not take forced edges")
    return orient(inst)


def verify_certificate(inst: SharedInstance, cert: ComparabilityCertificate) -> bool:
    """Re-check a YES answer from scratch; see ComparabilityCertificate."""
    pairs = set(inst.g1.edges) | set(inst.g2.edges)
    seen = set()
    for u, v in cert.orientation:
        p = (u, v) if u < v else (v, u)
        if p not in pairs or p in seen:
            return False
        seen.add(p)
    if seen != pairs:
        return False
    t1 = {e for e in cert.orientation if (min(e), max(e)) in inst.g1.edges}
    t2 = {e for e in cert.orientation if (min(e), max(e)) in inst.g2.edges}
    if not is_transitive(t1) or not is_transitive(t2):
        return False
    xs = set(inst.x)
    x1 = {e for e in t1 if e[0] in xs and e[1] in xs}
    x2 = {e for e in t2 if e[0] in xs and e[1] in xs}
    if x1 != x2:
        return False
    if cert.full_orientation != cert.orientation | cert.augmenting_arcs:
        return False
    if not is_transitive(cert.full_orientation):
        return False
    p1, p2 = set(inst.private1), set(inst.private2)
    for u, v in cert.augmenting_arcs:
        if not ((u in p1 and v in p2) or (u in p2 and v in p1)):
            return False
        if (min(u, v), max(u, v)) in pairs:
            return False
    return True


def verify_witness(inst: SharedInstance, w: ForcingWitness) -> bool:
    """Replay a forcing chain and confirm it links an edge to its reverse."""
    if w.stage == STAGE_CO_COMPARABILITY:
        inst = complement_pair(inst)
    elif w.stage != STAGE_COMPARABILITY:
        return False
    graphs = {1: inst.g1, 2: inst.g2}
    u, v = w.conflict_edge
    if u == v:
        return False
    cur = w.conflict_edge
    for step in w.chain:
        if step.edge_a != cur:
            return False
        g = graphs.get(step.side)
        if g is None:
            return False
        (i, j), (i2, j2) = step.edge_a, step.edge_b
        for a, b in (step.edge_a, step.edge_b):
            p = (a, b) if a < b else (b, a)
            if p not in g.edges:
                return False
        if i == i2 and step.shared == i:
            if set(step.nonedge) != {j, j2} or g.has_edge(j, j2):
                return False
        elif j == j2 and step.shared == j:
            if set(step.nonedge) != {i, i2} or g.has_edge(i, i2):
                return False
        else:
            return False
        cur = step.edge_b
    return cur == (v, u)


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def _arrow(inst: SharedInstance, e: tuple[int, int]) -> str:
    return f"{inst.names[e[0]]}->{inst.names[e[1]]}"


def format_witness(inst: SharedInstance, w: ForcingWitness, with_stage: bool = False) -> str:
    steps = " ".join(
        f"({_arrow(inst, s.edge_a)} ~ {_arrow(inst, s.edge_b)} via {s.side}, "
        f"nonedge {inst.names[s.nonedge[0]]}-{inst.names[s.nonedge[1]]})"
        for s in w.chain
    )
    lines = ["NO"]
    if with_stage:
        lines.append(f"STAGE: {w.stage}")
    lines.append(f"CONFLICT: {_arrow(inst, w.conflict_edge)}")
    lines.append(f"CHAIN: {steps}".rstrip())
    return "\n".join(lines) + "\n"


def certificate_lines(inst: SharedInstance, cert: ComparabilityCertificate) -> list[str]:
    t = " ".join(_arrow(inst, e) for e in sorted(cert.orientation))
    arcs = " ".join(_arrow(inst, e) for e in sorted(cert.augmenting_arcs))
    return [f"T: {t}".rstrip(), f"A': {arcs}".rstrip()]


def format_result(
    inst: SharedInstance, res: ComparabilityCertificate | ForcingWitness
) -> str:
    if isinstance(res, ForcingWitness):
        return format_witness(inst, res)
    return "\n".join(["YES"] + certificate_lines(inst, res)) + "\n"


_STEP_RE = re.compile(
    r"\((?P<a>[A-Za-z0-9_]+)->(?P<b>[A-Za-z0-9_]+) ~ "
    r"(?P<c>[A-Za-z0-9_]+)->(?P<d>[A-Za-z0-9_]+) via (?P<side>[12]), "
    r"nonedge (?P<x>[A-Za-z0-9_]+)-(?P<y>[A-Za-z0-9_]+)\)"
)


def _parse_arrow(inst: SharedInstance, tok: str) -> tuple[int, int]:
    parts = tok.split("->")
    if len(parts) != 2:
        raise ParseError(f"bad directed edge token {tok!r}")
    return inst.id_of(parts[0]), inst.id_of(parts[1])


def parse_witness(inst: SharedInstance, lines: list[str]) -> ForcingWitness:
    stage = STAGE_COMPARABILITY
    conflict = None
    chain: list[ForcingStep] = []
    for ln in lines:
        key, sep, rest = ln.partition(":")
        key = key.strip()
        rest = rest.strip()
        if not sep:
            raise ParseError(f"bad witness line {ln!r}")
        if key == "STAGE":
            if rest not in (STAGE_COMPARABILITY, STAGE_CO_COMPARABILITY):
                raise ParseError(f"unknown stage {rest!r}")
            stage = rest
        elif key == "CONFLICT":
            conflict = rest
        elif key == "CHAIN":
            for m in _STEP_RE.finditer(rest):
                ea = (inst.id_of(m["a"]), inst.id_of(m["b"]))
                eb = (inst.id_of(m["c"]), inst.id_of(m["d"]))
                nonedge = (inst.id_of(m["x"]), inst.id_of(m["y"]))
                shared = ea[0] if ea[0] == eb[0] else ea[1]
                chain.append(ForcingStep(ea, eb, int(m["side"]), shared, nonedge))
        else:
            raise ParseError(f"unexpected witness line {ln!r}")
    if conflict is None:
        raise ParseError("witness needs a CONFLICT: line")
    edge = _parse_arrow(inst, conflict)
    class_edges = frozenset({edge} | {s.edge_a for s in chain} | {s.edge_b for s in chain})
    return ForcingWitness(edge, tuple(chain), class_edges, stage)


def parse_result(
    inst: SharedInstance, text: str
) -> ComparabilityCertificate | ForcingWitness:
    """Parse the text emitted by :func:`format_result`."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] not in ("YES", "NO"):
        raise ParseError("expected YES or NO on the first line")
    if lines[0] == "NO":
        return parse_witness(inst, lines[1:])
    fields = {}
    for ln in lines[1:]:
        key, sep, rest = ln.partition(":")
        if not sep:
            raise ParseError(f"bad line {ln!r}")
        fields[key.strip()] = rest.split()
    if "T" not in fields or "A'" not in fields:
        raise ParseError("YES result needs T: and A': lines")
    t = frozenset(_parse_arrow(inst, tok) for tok in fields["T"])
    arcs = frozenset(_parse_arrow(inst, tok) for tok in fields["A'"])
    return ComparabilityCertificate(t, arcs, t | arcs)
