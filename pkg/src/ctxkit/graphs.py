"""Exact graph invariants on bitset graphs.

``Graph`` stores adjacency as one Python int per vertex (bit u of adj[v] set
iff u ~ v). On top of it:

    independence_number          (weighted) alpha with a verified witness
    independence_degree          largest independent set through a vertex
    minimal_independence_number  minimum independence degree, optionally
                                 stopping at the first vertex below a threshold
    maximal_cliques              Bron-Kerbosch via networkx
    fractional_packing_number    alpha*, exact LP over maximal cliques

The independence solver is a colour-bound branch and bound: candidates are
greedily partitioned into cliques of G (an independent set takes at most one
vertex per clique), classes are visited from the last one backwards, and a
branch is cut once its running weight plus the class bound cannot beat the
incumbent. A caller-supplied clique cover (the contexts of an exclusivity
graph) adds a global bound that ends the search as soon as it is met.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .config import CANONICAL_WITNESS_LIMIT, DEFAULT_VERTEX_CAP
from .exceptions import CapExceededError, DomainError
from .simplex import maximize

logger = logging.getLogger(__name__)

Weights = Optional[Sequence[Fraction]]


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ------------------------------- graph ------------------------------


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..n-1."""
    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        adj = tuple(self.adj)
        object.__setattr__(self, "adj", adj)
        if len(adj) != self.n:
            raise DomainError(f"graph on {self.n} vertices has {len(adj)} adjacency rows")
        for v, row in enumerate(adj):
            if row >> v & 1:
                raise DomainError(f"self-loop at vertex {v}")
            if row >> self.n:
                raise DomainError(f"vertex {v} has a neighbour outside the graph")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(bin(row).count("1") for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def non_neighbors(self, v: int) -> int:
        """Bitset of vertices neither adjacent nor equal to ``v``."""
        return self.all_vertices & ~self.adj[v] & ~(1 << v)

    def complement(self) -> "Graph":
        full = self.all_vertices
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph on ``vertices``, renumbered 0..k-1 in the given order."""
        position = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            row = 0
            for u in bits(self.adj[v]):
                i = position.get(u)
                if i is not None:
                    row |= 1 << i
            adj.append(row)
        return Graph(len(vertices), tuple(adj))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        m = mask_of(vs)
        return all(not (self.adj[v] & m) for v in vs)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class MISResult:
    """An optimum ``value`` and an independent set attaining it."""
    value: Fraction
    witness: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "witness", tuple(sorted(self.witness)))


# ---------------------------- the solver ----------------------------


def _integer_weights(n: int, weights: Weights) -> Tuple[List[int], int]:
    """Scale rational weights to integers; returns (weights, scale)."""
    if weights is None:
        return [1] * n, 1
    if len(weights) != n:
        raise DomainError(f"{len(weights)} weights given for {n} vertices")
    ws = [Fraction(w) for w in weights]
    if any(w < 0 for w in ws):
        raise DomainError("vertex weights must be nonnegative")
    scale = 1
    for w in ws:
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    return [int(w * scale) for w in ws], scale


class _Search:
    """One branch-and-bound run; internal vertices are sorted by degree."""

    def __init__(self, g: Graph, weights: List[int], candidates: int,
                 cover: Sequence[int], goal: Optional[int]):
        # High-degree vertices get low internal indices, so they seed the
        # colour classes and are branched on last.
        order = sorted(bits(candidates), key=lambda v: (-g.degree(v), v))
        self.order = order
        inner = {v: i for i, v in enumerate(order)}
        self.w = [weights[v] for v in order]
        self.adj = []
        for v in order:
            row = 0
            for u in bits(g.adj[v] & candidates):
                row |= 1 << inner[u]
            self.adj.append(row)
        self.nonadj = [((1 << len(order)) - 1) & ~row & ~(1 << i)
                       for i, row in enumerate(self.adj)]

        bound = sum(self.w)
        if cover:
            covered = 0
            cover_bound = 0
            for clique in cover:
                members = clique & candidates
                covered |= members
                if members:
                    cover_bound += max(weights[v] for v in bits(members))
            cover_bound += sum(weights[v] for v in bits(candidates & ~covered))
            bound = min(bound, cover_bound)
        self.goal = bound if goal is None else min(goal, bound)
        self.best_value = 0
        self.best_set: List[int] = []
        self.nodes = 0
        self._seed()

    def _seed(self) -> None:
        # Greedy start: repeatedly take the vertex with the fewest remaining neighbours.
        P = (1 << len(self.order)) - 1
        chosen, total = [], 0
        while P:
            v = min(bits(P), key=lambda i: (bin(self.adj[i] & P).count("1"), -self.w[i], i))
            chosen.append(v)
            total += self.w[v]
            P &= self.nonadj[v]
        if total > self.best_value:
            self.best_value, self.best_set = total, chosen

    def done(self) -> bool:
        return self.best_value >= self.goal

    def _colour(self, P: int) -> Tuple[List[int], List[int]]:
        order: List[int] = []
        bounds: List[int] = []
        total = 0
        U = P
        while U:
            Q = U
            members = []
            top = 0
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                members.append(v)
                if self.w[v] > top:
                    top = self.w[v]
                Q &= self.adj[v]
                U &= ~low
            total += top
            order.extend(members)
            bounds.extend([total] * len(members))
        return order, bounds

    def expand(self, P: int, weight: int, current: List[int]) -> None:
        self.nodes += 1
        order, bounds = self._colour(P)
        for k in range(len(order) - 1, -1, -1):
            if weight + bounds[k] <= self.best_value or self.done():
                return
            v = order[k]
            P &= ~(1 << v)
            new_weight = weight + self.w[v]
            current.append(v)
            if new_weight > self.best_value:
                self.best_value = new_weight
                self.best_set = list(current)
            sub = P & self.nonadj[v]
            if sub:
                self.expand(sub, new_weight, current)
            current.pop()

    def solve(self) -> Tuple[int, List[int]]:
        if not self.done() and self.order:
            self.expand((1 << len(self.order)) - 1, 0, [])
        return self.best_value, sorted(self.order[i] for i in self.best_set)


def _check_cap(g: Graph, vertex_cap: int) -> None:
    if g.n > vertex_cap:
        raise CapExceededError(
            f"graph has {g.n} vertices, above the vertex cap of {vertex_cap}",
            cap=vertex_cap, size=g.n, what="vertices")


def _solve(g: Graph, weights: List[int], candidates: int,
           cover: Sequence[int], goal: Optional[int]) -> Tuple[int, List[int]]:
    search = _Search(g, weights, candidates, cover, goal)
    value, witness = search.solve()
    logger.debug("mis: %d candidates, value %d, %d nodes",
                 len(search.order), value, search.nodes)
    return value, witness


def _canonical_witness(g: Graph, weights: List[int], candidates: int,
                       cover: Sequence[int], value: int) -> List[int]:
    """Lexicographically smallest independent set of total weight ``value``."""
    chosen: List[int] = []
    total = 0
    allowed = candidates
    while total < value:
        for v in bits(allowed):
            rest = allowed & g.non_neighbors(v) & ~((1 << (v + 1)) - 1)
            need = value - total - weights[v]
            if need <= 0:
                reached = 0
            else:
                reached, _ = _solve(g, weights, rest, cover, need)
            if weights[v] + reached >= value - total:
                chosen.append(v)
                total += weights[v]
                allowed = rest
                break
        else:
            raise AssertionError("canonical witness search lost the optimum")
    return chosen


def independence_number(g: Graph, weights: Weights = None, *,
                        clique_cover: Sequence[int] = (),
                        candidates: Optional[int] = None,
                        goal: Optional[Fraction] = None,
                        vertex_cap: int = DEFAULT_VERTEX_CAP,
                        canonical: bool = True) -> MISResult:
    """Maximum (weight) independent set of ``g``.

    ``clique_cover`` is a list of vertex bitsets known to be cliques.
    ``candidates`` restricts the search to a vertex subset. With ``goal`` the
    search stops once an independent set of at least that weight is found,
    so the returned value is exact only when it is below ``goal``.
    Zero-weight vertices never appear in the witness. For graphs up to
    CANONICAL_WITNESS_LIMIT vertices the witness is the lexicographically
    smallest optimal set.
    """
    _check_cap(g, vertex_cap)
    ws, scale = _integer_weights(g.n, weights)
    pool = g.all_vertices if candidates is None else candidates & g.all_vertices
    pool &= mask_of(v for v in bits(pool) if ws[v] > 0)
    int_goal = None
    if goal is not None:
        int_goal = math.ceil(Fraction(goal) * scale)
    value, witness = _solve(g, ws, pool, clique_cover, int_goal)
    if canonical and int_goal is None and g.n <= CANONICAL_WITNESS_LIMIT and value > 0:
        witness = _canonical_witness(g, ws, pool, clique_cover, value)
    result = MISResult(Fraction(value, scale), tuple(witness))
    if not g.is_independent(result.witness):
        raise AssertionError("independence solver returned a dependent set")
    return result


def independence_degree(g: Graph, v: int, *, clique_cover: Sequence[int] = (),
                        goal: Optional[int] = None,
                        vertex_cap: int = DEFAULT_VERTEX_CAP) -> MISResult:
    """Largest independent set containing ``v``: 1 + alpha of its non-neighbourhood."""
    if not isinstance(v, int) or not 0 <= v < g.n:
        raise DomainError(f"vertex {v!r} is not in the graph")
    inner_goal = None if goal is None else goal - 1
    rest = independence_number(g, clique_cover=clique_cover, candidates=g.non_neighbors(v),
                               goal=inner_goal, vertex_cap=vertex_cap,
                               canonical=goal is None)
    return MISResult(rest.value + 1, rest.witness + (v,))


@dataclass(frozen=True)
class MinimalIndependence:
    """Result of a minimal-independence scan.

    ``value`` is the independence degree of ``vertex``. When ``exhaustive``
    is False the scan stopped at the first vertex below its threshold before
    its last batch, so ``value`` only bounds the minimal independence number
    from above.
    """
    value: int
    vertex: int
    witness: Tuple[int, ...]
    exhaustive: bool


def scan_order(g: Graph) -> List[int]:
    """Vertices by ascending non-neighbourhood size, then index."""
    return sorted(range(g.n), key=lambda v: (bin(g.non_neighbors(v)).count("1"), v))


def minimal_independence_number(g: Graph, *, threshold: Optional[int] = None,
                                clique_cover: Sequence[int] = (),
                                threads: int = 1,
                                vertex_cap: int = DEFAULT_VERTEX_CAP) -> MinimalIndependence:
    """Minimum independence degree over all vertices of ``g``.

    With ``threshold`` the scan stops at the first vertex (in scan order)
    whose degree is below it. Vertices are solved in batches of ``threads``
    on a thread pool; each batch only uses bounds from earlier batches, so
    without a threshold the result does not depend on the thread count.
    """
    if g.n == 0:
        raise DomainError("minimal independence number of the empty graph is undefined")
    _check_cap(g, vertex_cap)
    order = scan_order(g)
    best: Optional[Tuple[int, int, MISResult]] = None  # (value, position, result)
    batch = max(1, threads)

    def degree(v: int, limit: Optional[int]) -> MISResult:
        return independence_degree(g, v, clique_cover=clique_cover, goal=limit,
                                   vertex_cap=vertex_cap)

    executor = ThreadPoolExecutor(max_workers=batch) if batch > 1 else None
    try:
        for start in range(0, len(order), batch):
            chunk = order[start:start + batch]
            # Only "is it smaller than the incumbent?" matters for each vertex.
            limit = None if best is None else best[0]
            if threshold is not None:
                limit = threshold if limit is None else min(limit, threshold)
            if executor is None:
                results = [degree(v, limit) for v in chunk]
            else:
                results = list(executor.map(lambda v: degree(v, limit), chunk))
            for offset, (v, res) in enumerate(zip(chunk, results)):
                value = int(res.value)
                if limit is not None and value >= limit:
                    continue
                if best is None or value < best[0]:
                    best = (value, start + offset, res)
            if threshold is not None and best is not None and best[0] < threshold:
                v = order[best[1]]
                logger.debug("minimal independence: vertex %d has degree %d < %d",
                             v, best[0], threshold)
                # Stopping in the last batch still examined every vertex.
                return MinimalIndependence(best[0], v, best[2].witness,
                                           start + batch >= len(order))
    finally:
        if executor is not None:
            executor.shutdown()

    if best is None:
        # Every degree reached the threshold. If the cover already caps alpha
        # there, all degrees equal it; otherwise rescan without a threshold.
        if clique_cover_bound(g, clique_cover) <= threshold:
            v = order[0]
            return MinimalIndependence(threshold, v, degree(v, threshold).witness, True)
        return minimal_independence_number(g, clique_cover=clique_cover, threads=threads,
                                           vertex_cap=vertex_cap)
    return MinimalIndependence(best[0], order[best[1]], best[2].witness, True)


def clique_cover_bound(g: Graph, clique_cover: Sequence[int]) -> int:
    """Upper bound on alpha from a family of cliques; uncovered vertices count once each."""
    covered = 0
    bound = 0
    for clique in clique_cover:
        members = clique & g.all_vertices
        if members:
            covered |= members
            bound += 1
    return bound + bin(g.all_vertices & ~covered).count("1")


# ----------------------------- cliques ------------------------------


def maximal_cliques(g: Graph) -> List[Tuple[int, ...]]:
    """All maximal cliques, each sorted, in lexicographic order."""
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(g.to_networkx()))


def fractional_packing_number(g: Graph, weights: Weights = None) -> Fraction:
    """alpha*(G, w): max sum w_i p_i subject to sum_{i in K} p_i <= 1 per maximal clique K."""
    ws = [Fraction(1)] * g.n if weights is None else [Fraction(w) for w in weights]
    if len(ws) != g.n:
        raise DomainError(f"{len(ws)} weights given for {g.n} vertices")
    if any(w < 0 for w in ws):
        raise DomainError("vertex weights must be nonnegative")
    live = [v for v in range(g.n) if ws[v] > 0]
    if not live:
        return Fraction(0)
    sub = g.induced(live)
    cliques = maximal_cliques(sub)
    rows = []
    for clique in cliques:
        row = [Fraction(0)] * len(live)
        for v in clique:
            row[v] = Fraction(1)
        rows.append(row)
    logger.debug("fractional packing: %d vertices, %d maximal cliques", len(live), len(cliques))
    result = maximize([ws[v] for v in live], rows, [Fraction(1)] * len(rows))
    if not result.is_optimal:
        raise AssertionError(f"clique LP ended {result.status.value}")
    return result.value
