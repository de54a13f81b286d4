"""Shared helpers: brute-force reference implementations and builders.

The brute implementations here are intentionally naive and separate
from both the library and its oracle module, so tests can triangulate.
"""

from __future__ import annotations

import itertools

import pytest

from simgraph import Graph, load_fixture
from simgraph.comparability import forces
from simgraph.core import bits, mask_of
from simgraph.oracle import SplitMix64


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in ("p3pair", "cycle8", "fan", "c5full", "c6full", "emptyx")}


def graph_from_pairs(n: int, pairs) -> Graph:
    return Graph({i: f"v{i}" for i in range(n)}, pairs)


def random_graph(n: int, prob: float, seed: int) -> Graph:
    rng = SplitMix64(seed)
    pairs = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.chance(prob)
    ]
    return graph_from_pairs(n, pairs)


def cycle_graph(n: int) -> Graph:
    return graph_from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return graph_from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return graph_from_pairs(n, list(itertools.combinations(range(n), 2)))


def edge_names(inst, pairs):
    return {tuple(sorted((inst.names[u], inst.names[v]))) for u, v in pairs}


def arc_names(inst, arcs):
    return {(inst.names[u], inst.names[v]) for u, v in arcs}


def ids_of(inst, *names):
    return tuple(inst.id_of(n) for n in names)


def brute_peo_exists(g: Graph) -> bool:
    """Search over elimination orderings, pruning non-simplicial prefixes."""
    adj = g.adj
    seen: dict[int, bool] = {}

    def simplicial(v: int, alive: int) -> bool:
        nb = adj[v] & alive
        m = nb
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            if nb & ~adj[u] & ~low:
                return False
        return True

    def search(alive: int) -> bool:
        if alive == 0:
            return True
        if alive in seen:
            return seen[alive]
        ok = False
        for v in bits(alive):
            if simplicial(v, alive & ~(1 << v)):
                if search(alive & ~(1 << v)):
                    ok = True
                    break
        seen[alive] = ok
        return ok

    return search(mask_of(g.vertices))


def brute_transitive(t) -> bool:
    """Definitional triple loop."""
    t = set(t)
    vs = sorted({u for e in t for u in e})
    for a in vs:
        for b in vs:
            for c in vs:
                if (a, b) in t and (b, c) in t and (a, c) not in t:
                    return False
    return True


def brute_forcing_closure(side_graphs: dict[int, Graph]):
    """Fixpoint of the per-side forcing relation, as a set of frozensets."""
    pairs = set()
    for g in side_graphs.values():
        pairs |= g.edges
    dedges = sorted([(u, v) for u, v in pairs] + [(v, u) for u, v in pairs])
    parent = {e: e for e in dedges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for e in dedges:
        for f in dedges:
            pe = (min(e), max(e))
            pf = (min(f), max(f))
            for g in side_graphs.values():
                if pe in g.edges and pf in g.edges and forces(g, e, f):
                    union(e, f)
                    break
    groups: dict = {}
    for e in dedges:
        groups.setdefault(find(e), set()).add(e)
    return {frozenset(v) for v in groups.values()}
