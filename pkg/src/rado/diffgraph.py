"""Difference graphs: vertices are integers, ``u ~ v`` iff ``|u - v|`` is in a connection set.

Also the independence machinery used by the extraction chains: Shearer-type
lower bounds, short odd cycle detection and the translation of 3- and
5-cycles into solutions of ``x_1 + ... + x_12 = y_1 + ... + y_9``, exact
maximum independent sets, and the signed-sum candidate independent sets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from rado.equations import LinearEquation, SolutionWitness, check_solution, extend_solution

DEFAULT_MIS_CAP = 200
BOUND_TOL = 1e-9

TARGET_EQUATION = LinearEquation.balanced(12, 9)


class ShortOddCycleError(ValueError):
    """A graph handed to a girth-restricted bound contains a short odd cycle."""

    def __init__(self, message: str, cycle: tuple[int, ...]):
        super().__init__(f"{message}: {cycle}")
        self.cycle = cycle


class TriangleError(ShortOddCycleError):
    pass


class MISCapExceeded(ValueError):
    pass


class IndependenceViolation(ValueError):
    """A signed-sum family was not independent, so A was not solution-free."""

    def __init__(self, family: str, edge: tuple[int, int]):
        super().__init__(f"family {family} contains the edge {edge}")
        self.family = family
        self.edge = edge


@dataclass(frozen=True)
class DifferenceGraph:
    vertices: tuple[int, ...]
    connection: frozenset[int]

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        vs = set(self.vertices)
        diffs = sorted(self.connection)
        adj = {}
        for v in self.vertices:
            nbrs = {v - a for a in diffs if v - a in vs} | {v + a for a in diffs if v + a in vs}
            adj[v] = tuple(sorted(nbrs))
        return adj

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.index

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def adjacent(self, u: int, v: int) -> bool:
        return abs(u - v) in self.connection and u in self.index and v in self.index

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in self.vertices for v in self.adjacency[u] if u < v)

    @cached_property
    def masks(self) -> list[int]:
        """Neighbourhood bitmasks over vertex positions."""
        out = []
        for v in self.vertices:
            m = 0
            for u in self.adjacency[v]:
                m |= 1 << self.index[u]
            out.append(m)
        return out

    def is_independent(self, S: Iterable[int]) -> bool:
        return find_edge_in(self, S) is None

    def matrix(self) -> np.ndarray:
        M = np.zeros((len(self), len(self)), dtype=np.int64)
        for u, v in self.edges:
            M[self.index[u], self.index[v]] = M[self.index[v], self.index[u]] = 1
        return M


def build(X: Iterable[int], A: Iterable[int]) -> DifferenceGraph:
    A = frozenset(int(a) for a in A)
    if any(a <= 0 for a in A):
        raise ValueError("connection set must hold positive integers")
    return DifferenceGraph(tuple(sorted(set(X))), A)


def find_edge_in(G: DifferenceGraph, S: Iterable[int]) -> Optional[tuple[int, int]]:
    """Smallest edge ``(u, v)`` with ``u < v`` both in ``S``, or None."""
    members = sorted(set(S))
    ms = set(members)
    diffs = sorted(G.connection)
    for u in members:
        for a in diffs:
            if u + a in ms:
                return u, u + a
    return None


def bfs_layers(G: DifferenceGraph, v: int, depth: Optional[int] = None) -> list[list[int]]:
    """Vertices at distance 1, 2, ... from ``v`` (layer 0 omitted)."""
    if v not in G:
        raise KeyError(f"vertex {v} not in graph")
    dist = {v: 0}
    layers: list[list[int]] = []
    frontier = [v]
    while frontier and (depth is None or len(layers) < depth):
        nxt = []
        for u in frontier:
            for w in G.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        if not nxt:
            break
        layers.append(sorted(nxt))
        frontier = nxt
    return layers


def distance_profile(G: DifferenceGraph, v: int, m: int) -> tuple[int, ...]:
    """``(d_1(v), ..., d_m(v))``: how many vertices sit at each distance from ``v``."""
    layers = bfs_layers(G, v, m)
    sizes = [len(layer) for layer in layers]
    return tuple(sizes + [0] * (m - len(sizes)))


def _find_triangle(G: DifferenceGraph) -> Optional[tuple[int, int, int]]:
    for u in G.vertices:
        nu = set(G.neighbors(u))
        for v in G.neighbors(u):
            if v <= u:
                continue
            for w in G.neighbors(v):
                if w > v and w in nu:
                    return u, v, w
    return None


def _has_closed_5_walk(G: DifferenceGraph) -> bool:
    # in a triangle-free graph a closed 5-walk exists iff a 5-cycle does
    M = G.matrix()
    M2 = M @ M
    return int(np.einsum("ij,ji->", M2 @ M2, M)) > 0


def _find_pentagon(G: DifferenceGraph) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest 5-cycle ``(s, a, b, c, d)`` with ``s`` minimal and ``a < d``."""
    for s in G.vertices:
        ns = set(w for w in G.neighbors(s) if w > s)
        for a in sorted(ns):
            for b in G.neighbors(a):
                if b <= s:
                    continue
                for c in G.neighbors(b):
                    if c <= s or c == a:
                        continue
                    for d in G.neighbors(c):
                        if d > a and d != b and d in ns:
                            return s, a, b, c, d
    return None


def find_short_odd_cycle(G: DifferenceGraph) -> Optional[tuple[int, ...]]:
    """A triangle if there is one, else a 5-cycle, else None."""
    tri = _find_triangle(G)
    if tri is not None:
        return tri
    if len(G) < 5 or not G.edges or not _has_closed_5_walk(G):
        return None
    return _find_pentagon(G)


def shortest_odd_cycle(G: DifferenceGraph) -> Optional[tuple[int, ...]]:
    """A shortest odd cycle, via BFS from every vertex; None for bipartite graphs.

    From a root ``s``, an edge ``uv`` with ``dist(u) == dist(v)`` closes an
    odd walk; cutting the two tree paths at their last common vertex gives
    an odd cycle, and the root on a shortest odd cycle attains its length.
    """
    best: Optional[tuple[int, ...]] = None
    for s in G.vertices:
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= len(best):
                break
            for w in G.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif dist[w] == dist[u] and u < w:
                    pu, pw = [u], [w]
                    while pu[-1] != pw[-1]:
                        pu.append(parent[pu[-1]])
                        pw.append(parent[pw[-1]])
                    cycle = tuple(pu + pw[-2::-1])
                    if best is None or len(cycle) < len(best):
                        best = cycle
    return best


def odd_girth(G: DifferenceGraph) -> Optional[int]:
    cycle = shortest_odd_cycle(G)
    return None if cycle is None else len(cycle)


def _check_cycle(cycle: Sequence[int], A: frozenset[int]) -> None:
    if len(cycle) not in (3, 5) or len(set(cycle)) != len(cycle):
        raise ValueError(f"{tuple(cycle)} is not a 3- or 5-cycle")
    for u, v in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
        if abs(u - v) not in A:
            raise ValueError(f"{u}-{v} is not an edge (difference {abs(u - v)} not in A)")


def cycle_relation(cycle: Sequence[int], A: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Orient the cycle and split its edge lengths by direction: sum(left) == sum(right).

    The longer side is returned first.  A triangle ``u < v < w`` gives the
    Schur relation ``(v - u) + (w - v) = w - u``.
    """
    A = frozenset(A)
    _check_cycle(cycle, A)
    if len(cycle) == 3:
        u, v, w = sorted(cycle)
        return tuple(sorted((v - u, w - v))), (w - u,)
    steps = [b - a for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],))]
    up = tuple(sorted(d for d in steps if d > 0))
    down = tuple(sorted(-d for d in steps if d < 0))
    return (up, down) if len(up) >= len(down) else (down, up)


# (t, w_pad) taking each relation shape to (12, 9)
_EXTENSIONS = {(2, 1): (3, 6), (3, 2): (3, 3), (4, 1): (1, 8)}


def cycle_to_solution(cycle: Sequence[int], A: Iterable[int]) -> SolutionWitness:
    """A witness for ``x_1 + ... + x_12 = y_1 + ... + y_9`` with values in ``A``."""
    left, right = cycle_relation(cycle, A)
    t, w_pad = _EXTENSIONS[(len(left), len(right))]
    eq = LinearEquation.balanced(len(left), len(right))
    ext_eq, w = extend_solution(eq, SolutionWitness(left + right), t, w_pad)
    assert ext_eq == TARGET_EQUATION and check_solution(ext_eq, w)
    return w


def shearer_triangle_free_bound(G: DifferenceGraph) -> float:
    """``sum_v d_1(v) / (1 + d_1(v) + d_2(v))``, a lower bound on alpha for triangle-free G."""
    tri = _find_triangle(G)
    if tri is not None:
        raise TriangleError("graph is not triangle-free", tri)
    total = 0.0
    for v in G.vertices:
        d1, d2 = distance_profile(G, v, 2)
        if d1:
            total += d1 / (1 + d1 + d2)
    return total


def shearer_terms(G: DifferenceGraph, m: int) -> list[tuple[int, tuple[int, ...], float]]:
    """Per-vertex ``(v, profile, contribution)`` rows of the odd-girth bound."""
    rows = []
    for v in G.vertices:
        prof = distance_profile(G, v, m)
        d1 = prof[0]
        term = 0.0
        if d1:
            term = (d1 * 2.0 ** (-(m - 2)) / (1 + sum(prof))) ** (1.0 / (m - 1))
        rows.append((v, prof, term))
    return rows


def shearer_girth_bound(G: DifferenceGraph, m: int) -> float:
    """Lower bound on alpha for graphs with no odd cycle of length <= 2m + 1 (m >= 2)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    cycle = shortest_odd_cycle(G)
    if cycle is not None and len(cycle) <= 2 * m + 1:
        raise ShortOddCycleError(f"odd cycle of length {len(cycle)} <= {2 * m + 1}", cycle)
    return sum(term for _, _, term in shearer_terms(G, m))


# --- independent sets -------------------------------------------------------


def _clique_cover_bound(cand: int, masks: list[int]) -> int:
    # greedy colouring of the complement restricted to cand
    cliques = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        clique_common = masks[v]
        rest ^= low
        pick = rest & clique_common
        while pick:
            lb = pick & -pick
            u = lb.bit_length() - 1
            rest ^= lb
            clique_common &= masks[u]
            pick = rest & clique_common
        cliques += 1
    return cliques


def _mis_mask(masks: list[int], cand: int) -> int:
    best = [0, 0]  # size, mask

    def rec(cand: int, chosen: int, size: int) -> None:
        # vertices with no candidate neighbours go in for free
        while cand:
            free = 0
            c = cand
            while c:
                lb = c & -c
                v = lb.bit_length() - 1
                c ^= lb
                if not masks[v] & cand:
                    free |= lb
            if not free:
                break
            chosen |= free
            size += bin(free).count("1")
            cand &= ~free
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _clique_cover_bound(cand, masks) <= best[0]:
            return
        # degree-1 vertex: taking it is always safe
        c = cand
        pivot, pivot_deg = -1, -1
        while c:
            lb = c & -c
            v = lb.bit_length() - 1
            c ^= lb
            deg = bin(masks[v] & cand).count("1")
            if deg == 1:
                rec(cand & ~masks[v] & ~lb, chosen | lb, size + 1)
                return
            if deg > pivot_deg:
                pivot, pivot_deg = v, deg
        bit = 1 << pivot
        rec(cand & ~masks[pivot] & ~bit, chosen | bit, size + 1)
        rec(cand & ~bit, chosen, size)

    rec(cand, 0, 0)
    return best[1]


def max_independent_set_exact(G: DifferenceGraph, cap: int = DEFAULT_MIS_CAP) -> frozenset[int]:
    """A maximum independent set by branch and bound (max-degree branching, clique-cover pruning)."""
    if len(G) > cap:
        raise MISCapExceeded(
            f"graph has {len(G)} vertices, above the exact cap {cap}; use greedy_independent_set"
        )
    masks = G.masks
    full = (1 << len(G)) - 1
    # solve each connected component separately
    result = 0
    seen = 0
    for i in range(len(G)):
        if seen >> i & 1:
            continue
        comp = 1 << i
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                lb = f & -f
                f ^= lb
                nxt |= masks[lb.bit_length() - 1]
            frontier = nxt & ~comp & full
            comp |= frontier
        seen |= comp
        result |= _mis_mask(masks, comp)
    return frozenset(G.vertices[i] for i in range(len(G)) if result >> i & 1)


def independence_number(G: DifferenceGraph, cap: int = DEFAULT_MIS_CAP) -> int:
    return len(max_independent_set_exact(G, cap))


def greedy_independent_set(G: DifferenceGraph) -> frozenset[int]:
    """Repeatedly take a minimum-degree vertex (smallest on ties) and drop its neighbours."""
    alive = set(G.vertices)
    chosen = []
    while alive:
        v = min(alive, key=lambda u: (sum(1 for w in G.neighbors(u) if w in alive), u))
        chosen.append(v)
        alive.discard(v)
        alive.difference_update(G.neighbors(v))
    return frozenset(chosen)


# --- signed-sum families ------------------------------------------------------

# sign patterns per depth: number of '+' terms from depth down to 0
_FAMILY_SIGNS = {
    depth: [(+1,) * plus + (-1,) * (depth - plus) for plus in range(depth, -1, -1)]
    for depth in (1, 2, 3)
}


def _family_name(signs: tuple[int, ...]) -> str:
    return "a" + "".join(("+" if s > 0 else "-") + v for s, v in zip(signs, "xyz"))


@dataclass(frozen=True)
class CandidateFamilies:
    anchor: int
    depth: int
    families: tuple[tuple[str, frozenset[int]], ...]

    @property
    def best(self) -> frozenset[int]:
        return max((f for _, f in self.families), key=len)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for _, f in self.families)

    @property
    def union(self) -> frozenset[int]:
        return frozenset().union(*(f for _, f in self.families))


def signed_sum_families(
    G: DifferenceGraph, A: Iterable[int], a: int, depth: int
) -> CandidateFamilies:
    """The sets ``{a +- x +- y ...}`` intersected with G's vertices, one per sign pattern.

    Depth 1 gives the two sets ``a + A`` and ``a - A``, depth 2 the three with
    two summands, depth 3 the four with three summands.
    """
    if depth not in _FAMILY_SIGNS:
        raise ValueError("depth must be 1, 2 or 3")
    diffs = sorted(set(A))
    vs = set(G.vertices)
    families = []
    for signs in _FAMILY_SIGNS[depth]:
        reach = {a + sum(s * x for s, x in zip(signs, xs)) for xs in product(diffs, repeat=depth)}
        families.append((_family_name(signs), frozenset(reach & vs)))
    return CandidateFamilies(a, depth, tuple(families))


def candidate_independent_sets(
    G: DifferenceGraph, A: Iterable[int], a: int, depth: int
) -> CandidateFamilies:
    """Signed-sum families, each checked to be independent in G.

    Independence holds whenever A is free of ``x_1+x_2+x_3 = y_1+y_2``
    (depths 1, 2) or of ``x_1+..+x_4 = y_1+y_2+y_3`` (depth 3); an edge
    inside a family raises :class:`IndependenceViolation`.
    """
    fams = signed_sum_families(G, A, a, depth)
    for name, members in fams.families:
        edge = find_edge_in(G, members)
        if edge is not None:
            raise IndependenceViolation(name, edge)
    return fams
