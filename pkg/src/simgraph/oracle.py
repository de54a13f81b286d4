"""Brute-force ground truth and seeded instance generators.

Everything here is deliberately independent of the recognizers: the
chordality check hunts for long induced cycles instead of elimination
orders, the comparability check enumerates orientations instead of
building forcing classes, and the permutation check composes the two.
The generators use an explicitly specified 64-bit generator so any
reimplementation can reproduce instances byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Graph, BudgetExceeded, bits, mask_of
from .instance import SharedInstance

__all__ = [
    "CHORDAL",
    "COMPARABILITY",
    "PERMUTATION",
    "CLASSES",
    "OracleBudget",
    "DEFAULT_BUDGET",
    "SplitMix64",
    "is_member",
    "is_simultaneous",
    "permutation_by_order_search",
    "planted_yes",
    "random_instance",
    "nonisomorphic_graphs",
]

CHORDAL = "chordal"
COMPARABILITY = "comparability"
PERMUTATION = "permutation"
CLASSES = (CHORDAL, COMPARABILITY, PERMUTATION)

# The induced-cycle search is quadratic in the worst case per vertex
# pair; past this many vertices the sweep is no longer desk scale.
_CHORDAL_VERTEX_CAP = 12

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class OracleBudget:
    """Caps on the exhaustive searches; the oracle refuses to exceed them."""

    max_subsets: int = 1 << 20
    max_orientations: int = 1 << 18
    max_factorial_n: int = 8

    def __post_init__(self):
        if self.max_subsets <= 0 or self.max_orientations <= 0 or self.max_factorial_n <= 0:
            raise ValueError("budget caps must be positive")


DEFAULT_BUDGET = OracleBudget()


class SplitMix64:
    """SplitMix64 stream, written out so other ports can match it bit for bit.

    state(n+1) = (state(n) + 0x9E3779B97F4A7C15) mod 2^64
    output(n):  z = state(n+1)
                z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
                z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
                z = z ^ (z >> 31)

    Derived draws: ``next_below(n)`` is ``next_u64() % n``; ``chance(p)``
    compares the top 53 bits of one draw against ``round(p * 2^53)``;
    ``shuffle`` is a Fisher-Yates pass from the last index down using
    ``next_below(i + 1)``.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, n: int) -> int:
        return self.next_u64() % n

    def chance(self, prob: float) -> bool:
        return (self.next_u64() >> 11) < round(prob * (1 << 53))

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.next_below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]


# ---------------------------------------------------------------------------
# Membership checks
# ---------------------------------------------------------------------------


def _has_long_induced_cycle(adj: dict[int, int], verts: tuple[int, ...]) -> bool:
    """Search for an induced cycle of length at least four.

    For every vertex x and non-adjacent pair u, w of its neighbours,
    breadth-first search for a u-w path avoiding the rest of N[x]; any
    such path closes a chordless cycle through x.
    """
    vmask = mask_of(verts)
    for x in verts:
        nb = adj[x]
        closed = nb | (1 << x)
        nbl = list(bits(nb))
        for i, u in enumerate(nbl):
            for w in nbl[i + 1 :]:
                if adj[u] >> w & 1:
                    continue
                allowed = (vmask & ~closed) | (1 << u) | (1 << w)
                reach = 1 << u
                frontier = reach
                wbit = 1 << w
                while frontier:
                    nxt = 0
                    for y in bits(frontier):
                        nxt |= adj[y]
                    frontier = nxt & allowed & ~reach
                    reach |= frontier
                    if reach & wbit:
                        return True
    return False


def _transitive_orientation_exists(
    adj: dict[int, int], edges: list[tuple[int, int]]
) -> bool:
    """Backtracking over edge orientations with dead-branch pruning.

    A partial orientation dies as soon as some two-step path w->a->b has
    no edge (w,b) to carry the composition, or has it oriented b->w.
    Leaves reached this way are exactly the transitive orientations.
    """
    m = len(edges)
    if m == 0:
        return True
    # Order edges so each one touches the already-oriented region.
    order: list[tuple[int, int]] = []
    rest = sorted(edges)
    touched = 0
    while rest:
        pick = None
        if touched:
            for k, (u, v) in enumerate(rest):
                if touched >> u & 1 or touched >> v & 1:
                    pick = k
                    break
        if pick is None:
            pick = 0
        u, v = rest.pop(pick)
        order.append((u, v))
        touched |= (1 << u) | (1 << v)

    out = {v: 0 for v in adj}
    inn = {v: 0 for v in adj}

    def ok(a: int, b: int) -> bool:
        ws = inn[a]
        if ws & ~adj[b] or ws & out[b]:
            return False
        cs = out[b]
        if cs & ~adj[a] or cs & inn[a]:
            return False
        return True

    def place(i: int) -> bool:
        if i == m:
            return True
        u, v = order[i]
        for a, b in ((u, v), (v, u)):
            if ok(a, b):
                out[a] |= 1 << b
                inn[b] |= 1 << a
                if place(i + 1):
                    return True
                out[a] &= ~(1 << b)
                inn[b] &= ~(1 << a)
        return False

    return place(0)


def _check_comparability_budget(m: int, budget: OracleBudget) -> None:
    if m >= budget.max_orientations.bit_length():
        raise BudgetExceeded(
            f"orientation space 2^{m} exceeds the cap of {budget.max_orientations}"
        )


def is_member(g: Graph, cls: str, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Exhaustively decide membership of a single graph in one of the classes."""
    if cls == CHORDAL:
        if g.n > _CHORDAL_VERTEX_CAP:
            raise BudgetExceeded(
                f"chordality oracle is capped at {_CHORDAL_VERTEX_CAP} vertices"
            )
        return not _has_long_induced_cycle(g.adj, g.vertices)
    if cls == COMPARABILITY:
        _check_comparability_budget(len(g.edges), budget)
        return _transitive_orientation_exists(g.adj, sorted(g.edges))
    if cls == PERMUTATION:
        co = g.complement()
        _check_comparability_budget(len(g.edges), budget)
        _check_comparability_budget(len(co.edges), budget)
        return _transitive_orientation_exists(
            g.adj, sorted(g.edges)
        ) and _transitive_orientation_exists(co.adj, sorted(co.edges))
    raise ValueError(f"unknown class {cls!r}")


def permutation_by_order_search(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Definitional permutation check: try every top-line order.

    For a fixed top order L the bottom order is forced pair by pair
    (edges invert, non-edges keep their order), giving a tournament; a
    realizer exists iff that tournament is acyclic, i.e. its indegree
    sequence is 0..n-1.
    """
    n = g.n
    if n > budget.max_factorial_n:
        raise BudgetExceeded(f"order search is capped at n={budget.max_factorial_n}")
    if n <= 1:
        return True
    verts = g.vertices
    adj = g.adj
    full = list(range(n))
    for perm in itertools.permutations(verts):
        prefix = 0
        indegs = []
        for v in perm:
            before = prefix
            prefix |= 1 << v
            # arcs into v: earlier non-neighbours point at v, later neighbours point at v
            d = (before & ~adj[v]).bit_count() + (adj[v] & ~before & ~(1 << v)).bit_count()
            indegs.append(d)
        if sorted(indegs) == full:
            return True
    return False


# ---------------------------------------------------------------------------
# Simultaneous membership by subset enumeration
# ---------------------------------------------------------------------------


def is_simultaneous(
    inst: SharedInstance, cls: str, budget: OracleBudget = DEFAULT_BUDGET
) -> bool:
    """True iff some augmenting superset of the forced edges lands in ``cls``.

    Enumerates every subset of the optional augmenting pairs and tests
    the union graph with the same membership routines as
    :func:`is_member`.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    optional = [p for p in inst.optional_pairs() if p not in inst.forced]
    k = len(optional)
    if k >= budget.max_subsets.bit_length():
        raise BudgetExceeded(f"2^{k} augmentation subsets exceed {budget.max_subsets}")

    verts = inst.all_vertices
    n = len(verts)
    base_adj = {v: 0 for v in verts}
    base_edges: set[tuple[int, int]] = set(inst.g1.edges) | set(inst.g2.edges) | set(inst.forced)
    for u, v in base_edges:
        base_adj[u] |= 1 << v
        base_adj[v] |= 1 << u

    if cls == CHORDAL and n > _CHORDAL_VERTEX_CAP:
        raise BudgetExceeded(f"chordality oracle is capped at {_CHORDAL_VERTEX_CAP} vertices")
    if cls in (COMPARABILITY, PERMUTATION):
        _check_comparability_budget(len(base_edges) + k, budget)
    if cls == PERMUTATION:
        co_edges = n * (n - 1) // 2 - len(base_edges)
        _check_comparability_budget(co_edges, budget)

    all_pairs = [
        (u, v) for i, u in enumerate(verts) for v in verts[i + 1 :]
    ]

    for mask in range(1 << k):
        adj = dict(base_adj)
        chosen = [optional[i] for i in bits(mask)]
        for u, v in chosen:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if cls == CHORDAL:
            if not _has_long_induced_cycle(adj, verts):
                return True
            continue
        edges = sorted(base_edges | set(chosen))
        if cls == COMPARABILITY:
            if _transitive_orientation_exists(adj, edges):
                return True
            continue
        # permutation: graph and complement must both orient transitively
        if not _transitive_orientation_exists(adj, edges):
            continue
        co_adj = {v: 0 for v in verts}
        co_edges = []
        for u, v in all_pairs:
            if not (adj[u] >> v & 1):
                co_adj[u] |= 1 << v
                co_adj[v] |= 1 << u
                co_edges.append((u, v))
        if _transitive_orientation_exists(co_adj, co_edges):
            return True
    return False


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _default_chordal_prob(total: int) -> float:
    return min(0.3, 4.0 / max(total, 1))


def _planted_member_edges(cls: str, total: int, rng: SplitMix64, edge_prob: float | None):
    """Random member of ``cls`` on vertex ids 0..total-1, as an edge set."""
    edges: set[tuple[int, int]] = set()
    if cls == CHORDAL:
        p = _default_chordal_prob(total) if edge_prob is None else edge_prob
        adj = {v: 0 for v in range(total)}
        for u in range(total):
            for v in range(u + 1, total):
                if rng.chance(p):
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        order = list(range(total))
        rng.shuffle(order)
        alive = mask_of(order)
        # eliminate along the random order, completing each live neighbourhood
        for v in order:
            alive &= ~(1 << v)
            nb = list(bits(adj[v] & alive))
            for i, a in enumerate(nb):
                for b in nb[i + 1 :]:
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
        for u in range(total):
            for v in bits(adj[u]):
                if v > u:
                    edges.add((u, v))
    elif cls == COMPARABILITY:
        q = 0.5 if edge_prob is None else edge_prob
        order = list(range(total))
        rng.shuffle(order)
        direct = {v: 0 for v in range(total)}
        for i in range(total):
            for j in range(i + 1, total):
                if rng.chance(q):
                    direct[order[i]] |= 1 << order[j]
        succ = {v: 0 for v in range(total)}
        for i in range(total - 1, -1, -1):
            v = order[i]
            s = direct[v]
            for w in bits(direct[v]):
                s |= succ[w]
            succ[v] = s
        for u in range(total):
            for v in bits(succ[u]):
                edges.add((u, v) if u < v else (v, u))
    elif cls == PERMUTATION:
        bottom = list(range(total))
        rng.shuffle(bottom)
        bpos = {v: i for i, v in enumerate(bottom)}
        for u in range(total):
            for v in range(u + 1, total):
                if bpos[u] > bpos[v]:
                    edges.add((u, v))
    else:
        raise ValueError(f"unknown class {cls!r}")
    return edges


def _group_names(nx: int, np1: int, np2: int) -> tuple[list[str], list[str], list[str]]:
    width = len(str(max(nx, np1, np2, 1)))
    xs = [f"x{i:0{width}d}" for i in range(nx)]
    aa = [f"a{i:0{width}d}" for i in range(np1)]
    bb = [f"b{i:0{width}d}" for i in range(np2)]
    return xs, aa, bb


def planted_yes(
    cls: str,
    n1: int,
    n2: int,
    nx: int,
    seed: int,
    edge_prob: float | None = None,
) -> SharedInstance:
    """Guaranteed-YES instance: a random member of ``cls``, split in two.

    The member graph is generated on n1+n2-nx vertices, the vertex set
    is split into shared and private parts, and every edge between the
    two private parts is dropped; the dropped edges witness that the
    instance can be augmented back into the class.  Deterministic per
    seed.
    """
    if nx > min(n1, n2):
        raise ValueError("shared count exceeds a side")
    total = n1 + n2 - nx
    rng = SplitMix64(seed)
    edges = _planted_member_edges(cls, total, rng, edge_prob)

    ids = list(range(total))
    rng.shuffle(ids)
    x_ids = set(ids[:nx])
    p1_ids = set(ids[nx:n1])
    xs, aa, bb = _group_names(nx, n1 - nx, n2 - nx)
    name = {}
    for rank, v in enumerate(sorted(x_ids)):
        name[v] = xs[rank]
    for rank, v in enumerate(sorted(p1_ids)):
        name[v] = aa[rank]
    for rank, v in enumerate(sorted(set(ids) - x_ids - p1_ids)):
        name[v] = bb[rank]

    side1 = x_ids | p1_ids
    side2 = set(ids) - p1_ids
    e1 = [(name[u], name[v]) for u, v in sorted(edges) if u in side1 and v in side1]
    e2 = [(name[u], name[v]) for u, v in sorted(edges) if u in side2 and v in side2]
    return SharedInstance.from_names(
        sorted(name[v] for v in side1), sorted(name[v] for v in side2), e1, e2
    )


def random_instance(
    n1: int, n2: int, nx: int, edge_prob: float, seed: int
) -> SharedInstance:
    """Erdos-Renyi pair: the shared block is sampled once, copied to both sides.

    Pair sampling order (fixes the random stream): shared-block pairs in
    name order, then remaining V1 pairs, then remaining V2 pairs.
    """
    if nx > min(n1, n2):
        raise ValueError("shared count exceeds a side")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must be a probability")
    rng = SplitMix64(seed)
    xs, aa, bb = _group_names(nx, n1 - nx, n2 - nx)
    e1: list[tuple[str, str]] = []
    e2: list[tuple[str, str]] = []
    for i in range(nx):
        for j in range(i + 1, nx):
            if rng.chance(edge_prob):
                e1.append((xs[i], xs[j]))
                e2.append((xs[i], xs[j]))
    v1 = sorted(xs + aa)
    for i, u in enumerate(v1):
        for v in v1[i + 1 :]:
            if u in xs and v in xs:
                continue
            if rng.chance(edge_prob):
                e1.append((u, v))
    v2 = sorted(xs + bb)
    for i, u in enumerate(v2):
        for v in v2[i + 1 :]:
            if u in xs and v in xs:
                continue
            if rng.chance(edge_prob):
                e2.append((u, v))
    return SharedInstance.from_names(v1, v2, e1, e2)


# ---------------------------------------------------------------------------
# Exhaustive isomorphism-class enumeration (small n)
# ---------------------------------------------------------------------------


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of graphs on ``n`` vertices.

    Breadth-first over edge counts: every class with m+1 edges contains
    a class with m edges plus one edge, so adding single edges to the
    level-m representatives and canonicalizing reaches everything.
    Practical for n <= 6 (156 classes at n = 6).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > 7:
        raise BudgetExceeded("isomorphism-class enumeration is capped at n=7")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pidx = {p: k for k, p in enumerate(pairs)}
    perm_maps = []
    for perm in itertools.permutations(range(n)):
        pm = [0] * len(pairs)
        for k, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            pm[k] = pidx[(a, b) if a < b else (b, a)]
        perm_maps.append(pm)

    def canon(mask: int) -> int:
        best = None
        for pm in perm_maps:
            out = 0
            m = mask
            while m:
                low = m & -m
                out |= 1 << pm[low.bit_length() - 1]
                m ^= low
            if best is None or out < best:
                best = out
        return best if best is not None else 0

    level = {0}
    all_masks = [0]
    for _ in range(len(pairs)):
        nxt = set()
        for g in level:
            for k in range(len(pairs)):
                if not (g >> k & 1):
                    nxt.add(canon(g | (1 << k)))
        level = nxt
        all_masks.extend(sorted(level))

    names = [f"v{i}" for i in range(n)]
    out = []
    for mask in all_masks:
        edges = [pairs[k] for k in bits(mask)]
        out.append(Graph(dict(enumerate(names)), edges))
    return out
