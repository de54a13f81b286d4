"""Shared-instance model, text format, and instance-level operations.

An instance is two graphs ``g1``/``g2`` over one global id space that
agree, edge for edge, on their shared vertices ``x``, plus an optional
set of forced augmenting edges between the two private sides.

Text format (one statement per line, ``#`` starts a comment)::

    V1: a b c
    V2: a b d
    E1: a-b b-c
    E2: a-b a-d
    F: c-d          # optional

Names match ``[A-Za-z0-9_]+``.  The shared set is implicit: the name
intersection of V1 and V2.  Serialization emits names in sorted order
and edges in lexicographic order, and round-trips exactly.
"""

from __future__ import annotations

import re
from importlib import resources
from typing import Iterable

from .core import (
    Graph,
    IllegalEdge,
    IllegalForced,
    ForcedNotSupported,
    ParseError,
    UnknownVertex,
    XInducedMismatch,
    mask_of,
)

__all__ = [
    "SharedInstance",
    "parse_instance",
    "serialize_instance",
    "complement_pair",
    "union_graph",
    "load_fixture",
    "fixture_text",
    "FIXTURE_NAMES",
]

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")

FIXTURE_NAMES = ("p3pair", "cycle8", "fan", "c5full", "c6full", "emptyx")


class SharedInstance:
    """Two graphs sharing the vertices ``x`` and the edges induced by them."""

    __slots__ = ("g1", "g2", "x", "forced", "names", "_ids")

    def __init__(self, g1: Graph, g2: Graph, forced: Iterable[tuple[int, int]] = ()):
        self.g1 = g1
        self.g2 = g2
        shared = sorted(set(g1.vertices) & set(g2.vertices))
        for v in shared:
            if g1.names[v] != g2.names[v]:
                raise ParseError(f"vertex id {v} has two names: {g1.names[v]!r} and {g2.names[v]!r}")
        self.x = tuple(shared)
        xmask = mask_of(shared)
        for v in shared:
            if (g1.adj[v] ^ g2.adj[v]) & xmask:
                raise XInducedMismatch(
                    f"graphs disagree on an edge at shared vertex {g1.names[v]!r}"
                )
        self.names = dict(g1.names)
        self.names.update(g2.names)
        self._ids = {n: v for v, n in self.names.items()}
        p1 = set(g1.vertices) - set(shared)
        p2 = set(g2.vertices) - set(shared)
        norm = set()
        for u, v in forced:
            if u in p1 and v in p2:
                pass
            elif u in p2 and v in p1:
                u, v = v, u
            else:
                raise IllegalForced(
                    f"forced edge ({self.names.get(u, u)},{self.names.get(v, v)}) "
                    "must join the two private sides"
                )
            norm.add((u, v) if u < v else (v, u))
        self.forced = frozenset(norm)

    @classmethod
    def from_names(
        cls,
        v1: Iterable[str],
        v2: Iterable[str],
        e1: Iterable[tuple[str, str]] = (),
        e2: Iterable[tuple[str, str]] = (),
        forced: Iterable[tuple[str, str]] = (),
    ) -> "SharedInstance":
        """Build an instance from names; ids are assigned in sorted-name order."""
        v1 = list(v1)
        v2 = list(v2)
        for side, vs in (("V1", v1), ("V2", v2)):
            seen = set()
            for name in vs:
                if not _NAME_RE.match(name):
                    raise ParseError(f"bad vertex name {name!r} in {side}")
                if name in seen:
                    raise ParseError(f"duplicate vertex {name!r} in {side}")
                seen.add(name)
        all_names = sorted(set(v1) | set(v2))
        ids = {name: i for i, name in enumerate(all_names)}
        v1set, v2set = set(v1), set(v2)

        def side_edges(tokens, vs, label):
            out = []
            for a, b in tokens:
                for name in (a, b):
                    if name not in ids:
                        raise ParseError(f"unknown vertex {name!r} in {label}")
                if a not in vs or b not in vs:
                    raise IllegalEdge(f"edge {a}-{b} in {label} leaves V{label[1]}")
                out.append((ids[a], ids[b]))
            return out

        g1 = Graph({ids[n]: n for n in v1}, side_edges(e1, v1set, "E1"))
        g2 = Graph({ids[n]: n for n in v2}, side_edges(e2, v2set, "E2"))
        fpairs = []
        for a, b in forced:
            for name in (a, b):
                if name not in ids:
                    raise ParseError(f"unknown vertex {name!r} in F")
            fpairs.append((ids[a], ids[b]))
        return cls(g1, g2, fpairs)

    # Derived views -----------------------------------------------------

    @property
    def v1(self) -> tuple[int, ...]:
        return self.g1.vertices

    @property
    def v2(self) -> tuple[int, ...]:
        return self.g2.vertices

    @property
    def all_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.names))

    @property
    def private1(self) -> tuple[int, ...]:
        xs = set(self.x)
        return tuple(v for v in self.g1.vertices if v not in xs)

    @property
    def private2(self) -> tuple[int, ...]:
        xs = set(self.x)
        return tuple(v for v in self.g2.vertices if v not in xs)

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

    def optional_pairs(self) -> list[tuple[int, int]]:
        """All augmenting pairs (one private vertex per side), sorted."""
        return sorted(
            (p, q) if p < q else (q, p) for p in self.private1 for q in self.private2
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SharedInstance):
            return NotImplemented
        return (
            self.g1 == other.g1
            and self.g2 == other.g2
            and self.forced == other.forced
        )

    def __repr__(self) -> str:
        return (
            f"SharedInstance(|V1|={self.g1.n}, |V2|={self.g2.n}, "
            f"|X|={len(self.x)}, |F|={len(self.forced)})"
        )


def _parse_edge_token(tok: str, lineno: int) -> tuple[str, str]:
    parts = tok.split("-")
    if len(parts) != 2 or not all(_NAME_RE.match(p) for p in parts):
        raise ParseError(f"line {lineno}: bad edge token {tok!r}")
    return parts[0], parts[1]


def parse_instance(text: str) -> SharedInstance:
    """Parse the instance text format; see the module docstring."""
    sections: dict[str, tuple[int, list[str]]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        key = head.strip()
        if not sep or key not in ("V1", "V2", "E1", "E2", "F"):
            raise ParseError(f"line {lineno}: expected one of V1:/V2:/E1:/E2:/F:")
        if key in sections:
            raise ParseError(f"line {lineno}: duplicate {key} statement")
        sections[key] = (lineno, rest.split())
    for key in ("V1", "V2", "E1", "E2"):
        if key not in sections:
            raise ParseError(f"missing {key} statement")
    for key in ("V1", "V2"):
        lineno, toks = sections[key]
        for t in toks:
            if not _NAME_RE.match(t):
                raise ParseError(f"line {lineno}: bad vertex name {t!r}")
    edges = {}
    for key in ("E1", "E2", "F"):
        if key in sections:
            lineno, toks = sections[key]
            edges[key] = [_parse_edge_token(t, lineno) for t in toks]
        else:
            edges[key] = []
    return SharedInstance.from_names(
        sections["V1"][1], sections["V2"][1], edges["E1"], edges["E2"], edges["F"]
    )


def serialize_instance(inst: SharedInstance) -> str:
    """Canonical text for an instance; ``parse_instance`` inverts it exactly."""

    def names(ids):
        return " ".join(inst.names[v] for v in ids)

    def edge_list(pairs):
        return " ".join(f"{inst.names[u]}-{inst.names[v]}" for u, v in sorted(pairs))

    lines = [
        f"V1: {names(inst.g1.vertices)}".rstrip(),
        f"V2: {names(inst.g2.vertices)}".rstrip(),
        f"E1: {edge_list(inst.g1.edges)}".rstrip(),
        f"E2: {edge_list(inst.g2.edges)}".rstrip(),
    ]
    if inst.forced:
        lines.append(f"F: {edge_list(inst.forced)}")
    return "\n".join(lines) + "\n"


def complement_pair(inst: SharedInstance) -> SharedInstance:
    """Complement each side on its own vertex set.

    The complements still agree on the shared set, so the result is a
    valid instance.  Instances with forced edges are not supported.
    """
    if inst.forced:
        raise ForcedNotSupported("cannot complement an instance with forced edges")
    return SharedInstance(inst.g1.complement(), inst.g2.complement())


def union_graph(inst: SharedInstance, augmenting: Iterable[tuple[int, int]] = ()) -> Graph:
    """Graph on V1 union V2 with E1, E2, the forced edges and ``augmenting``."""
    p1 = set(inst.private1)
    p2 = set(inst.private2)
    extra = set(inst.forced)
    for u, v in augmenting:
        if (u in p1 and v in p2) or (u in p2 and v in p1):
            extra.add((u, v) if u < v else (v, u))
        else:
            raise IllegalEdge(
                f"({inst.names.get(u, u)},{inst.names.get(v, v)}) is not an augmenting pair"
            )
    edges = set(inst.g1.edges) | set(inst.g2.edges) | extra
    return Graph(inst.names, sorted(edges))


def fixture_text(name: str) -> str:
    """Raw text of a canonical fixture (see FIXTURE_NAMES)."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
    return resources.files(__package__).joinpath(f"fixtures/{name}.txt").read_text()


def load_fixture(name: str) -> SharedInstance:
    """Parse one of the canonical fixtures shipped with the package."""
    return parse_instance(fixture_text(name))
