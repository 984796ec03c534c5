"""Immutable bounded-degree graphs with ordered incidence lists.

Vertices are the integers ``1..n``.  Each vertex stores an ordered list of
neighbours; the position of a neighbour in that list is its *slot*
(1-based), which is what a neighbour probe ``(v, i)`` reads.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import DomainError

#: Girth of a forest.  ``math.inf`` compares greater than every integer.
INFINITE = math.inf


class EdgeKey(NamedTuple):
    """Canonical edge identity ``(lo, hi)`` with ``lo < hi``.

    Tuple comparison is lexicographic, so ``<`` on keys is exactly the
    rank order: smaller minimum endpoint first, then smaller maximum.
    """

    lo: int
    hi: int

    @classmethod
    def of(cls, u: int, v: int) -> "EdgeKey":
        if u == v:
            raise DomainError(f"self-loop ({u}, {v}) is not an edge")
        return cls(u, v) if u < v else cls(v, u)


def rank_less(e1: EdgeKey, e2: EdgeKey) -> bool:
    """True iff ``e1`` has strictly smaller rank than ``e2``."""
    return (e1.lo, e1.hi) < (e2.lo, e2.hi)


class Graph:
    """Undirected simple graph on vertices ``1..n`` with a degree bound.

    ``adjacency[v - 1]`` is the ordered neighbour list of ``v``.  The
    constructor validates symmetry, the absence of loops and duplicates,
    and that every list fits in ``d_max``.  When ``d_max`` is omitted the
    maximum degree is used (at least 1).
    """

    __slots__ = ("n", "d_max", "_adj", "_edges")

    def __init__(self, adjacency: Sequence[Sequence[int]], d_max: Optional[int] = None):
        adj = tuple(tuple(int(x) for x in nbrs) for nbrs in adjacency)
        n = len(adj)
        if n < 1:
            raise DomainError("a graph needs at least one vertex")
        max_deg = max(len(a) for a in adj)
        if d_max is None:
            d_max = max(1, max_deg)
        if d_max < 1:
            raise DomainError(f"degree bound must be positive, got {d_max}")
        sets = []
        for v, nbrs in enumerate(adj, start=1):
            if len(nbrs) > d_max:
                raise DomainError(f"vertex {v} has degree {len(nbrs)} > d_max={d_max}")
            s = set(nbrs)
            if len(s) != len(nbrs):
                raise DomainError(f"vertex {v} lists a neighbour twice")
            if v in s:
                raise DomainError(f"vertex {v} has a self-loop")
            for u in nbrs:
                if not 1 <= u <= n:
                    raise DomainError(f"vertex {v} lists neighbour {u} outside 1..{n}")
            sets.append(s)
        for v, nbrs in enumerate(adj, start=1):
            for u in nbrs:
                if v not in sets[u - 1]:
                    raise DomainError(f"asymmetric adjacency: {u} in list of {v} but not vice versa")
        self.n = n
        self.d_max = int(d_max)
        self._adj = adj
        self._edges = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], d_max: Optional[int] = None) -> "Graph":
        """Build a graph whose neighbour lists are sorted by id."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise DomainError(f"edge ({u}, {v}) outside 1..{n}")
            if u == v:
                raise DomainError(f"self-loop at {u}")
            nbrs[u - 1].add(v)
            nbrs[v - 1].add(u)
        return cls([sorted(s) for s in nbrs], d_max)

    # -- access -------------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v - 1]

    def degree(self, v: int) -> int:
        return len(self._adj[v - 1])

    def slot(self, v: int, i: int) -> Optional[int]:
        """The ``i``-th neighbour of ``v`` or None.  Not a counted probe."""
        nbrs = self._adj[v - 1]
        return nbrs[i - 1] if i <= len(nbrs) else None

    def slot_of(self, v: int, u: int) -> int:
        """1-based position of ``u`` in the list of ``v``."""
        return self._adj[v - 1].index(u) + 1

    def has_edge(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and v in self._adj[u - 1]

    def edges(self) -> tuple[EdgeKey, ...]:
        """All edges in increasing rank order."""
        if self._edges is None:
            self._edges = tuple(
                sorted(EdgeKey(v, u) for v in self.vertices for u in self._adj[v - 1] if v < u)
            )
        return self._edges

    @property
    def m(self) -> int:
        return len(self.edges())

    def max_degree(self) -> int:
        return max(len(a) for a in self._adj)

    def min_degree(self) -> int:
        return min(len(a) for a in self._adj)

    def is_regular(self, d: int) -> bool:
        return all(len(a) == d for a in self._adj)

    def without_edges(self, removed: Iterable[EdgeKey]) -> "Graph":
        """Copy with the given edges deleted; remaining order is preserved."""
        gone = {EdgeKey.of(*e) for e in removed}
        adj = [
            [u for u in self._adj[v - 1] if EdgeKey.of(v, u) not in gone]
            for v in self.vertices
        ]
        return Graph(adj, self.d_max)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.d_max == other.d_max and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self.d_max, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, d_max={self.d_max})"


# -- traversal -----------------------------------------------------------------


def bfs_distances(G: Graph, source: int, within: Optional[frozenset[int]] = None) -> dict[int, int]:
    """Hop distances from ``source``, optionally inside a vertex subset."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in G.neighbors(x):
            if y not in dist and (within is None or y in within):
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def connected_components(G: Graph, within: Optional[Iterable[int]] = None) -> list[frozenset[int]]:
    """Components (of the induced subgraph on ``within``), ordered by least vertex."""
    pool = frozenset(G.vertices if within is None else within)
    seen: set[int] = set()
    comps = []
    for v in sorted(pool):
        if v in seen:
            continue
        comp = frozenset(bfs_distances(G, v, pool))
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(G: Graph) -> bool:
    return len(bfs_distances(G, 1)) == G.n


def diameter(G: Graph) -> int:
    if not is_connected(G):
        raise DomainError("diameter of a disconnected graph is undefined")
    return max(max(bfs_distances(G, v).values()) for v in G.vertices)


def bridges(G: Graph) -> list[EdgeKey]:
    """Edges whose removal increases the number of components.

    Iterative low-link DFS; output sorted by rank.
    """
    disc = [0] * (G.n + 1)
    low = [0] * (G.n + 1)
    timer = 1
    found = []
    for root in G.vertices:
        if disc[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, 0, iter(G.neighbors(root)))]
        while stack:
            x, parent, it = stack[-1]
            advanced = False
            for y in it:
                if y == parent:
                    continue
                if disc[y]:
                    low[x] = min(low[x], disc[y])
                else:
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((y, x, iter(G.neighbors(y))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent:
                    low[parent] = min(low[parent], low[x])
                    if low[x] > disc[parent]:
                        found.append(EdgeKey.of(parent, x))
    return sorted(found)


def girth(G: Graph):
    """Length of a shortest cycle, or :data:`INFINITE` for a forest.

    One BFS per root; a non-tree edge ``(x, y)`` closes a walk of length
    ``dist[x] + dist[y] + 1`` that contains a cycle at most that long, and
    the root lying on a shortest cycle sees it exactly.
    """
    best = INFINITE
    for s in G.vertices:
        dist = {s: 0}
        parent = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in G.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


# -- balls -------------------------------------------------------------------

Probe = Callable[[int, int], Optional[int]]


@dataclass(frozen=True)
class Ball:
    """The induced subgraph ``C_k(center)`` as discovered by probing.

    ``probes`` lists every ``(x, i, answer)`` in the order performed.
    ``truncated`` is set when a probe limit stopped the exploration early,
    in which case ``vertices``/``edges`` are only what was seen.
    """

    center: int
    radius: int
    distance: Mapping[int, int]
    edges: frozenset
    probes: tuple = field(repr=False)
    truncated: bool = False

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.distance)


def explore_ball(probe: Probe, d: int, center: int, k: int, limit: Optional[int] = None) -> Ball:
    """Discover ``C_k(center)`` through neighbour probes.

    Vertices closer than ``k`` are probed slot by slot until an empty slot
    or slot ``d``.  Vertices at distance exactly ``k`` are probed only to
    find edges among themselves, so the last of them is skipped: each such
    edge is already seen from its other endpoint.  Any vertex whose ``d``
    neighbours are already known is skipped as well.  Together this keeps
    the probe count at most ``d**(k+1)``.
    """
    if k < 0:
        raise DomainError(f"radius must be nonnegative, got {k}")
    dist = {center: 0}
    order = [center]
    known: dict[int, set[int]] = {center: set()}
    edges: set[EdgeKey] = set()
    log: list[tuple[int, int, Optional[int]]] = []
    truncated = False

    def scan(x: int, grow: bool) -> bool:
        nonlocal truncated
        for i in range(1, d + 1):
            if limit is not None and len(log) >= limit:
                truncated = True
                return False
            y = probe(x, i)
            log.append((x, i, y))
            if y is None:
                break
            if y not in dist:
                if not grow:
                    continue
                dist[y] = dist[x] + 1
                order.append(y)
                known[y] = set()
            edges.add(EdgeKey.of(x, y))
            known[x].add(y)
            known[y].add(x)
        return True

    head = 0
    while head < len(order) and dist[order[head]] < k:
        x = order[head]
        head += 1
        if len(known[x]) >= d:
            continue
        if not scan(x, grow=True):
            break
    else:
        rim = order[head:]
        for x in rim[:-1]:
            if len(known[x]) >= d:
                continue
            if not scan(x, grow=False):
                break
    return Ball(center, k, dist, frozenset(edges), tuple(log), truncated)


def ball(G: Graph, v: int, k: int) -> Ball:
    """``C_k(v, G)`` together with the probes used to find it."""
    if not 1 <= v <= G.n:
        raise DomainError(f"vertex {v} outside 1..{G.n}")
    return explore_ball(G.slot, G.d_max, v, k)


# -- boundaries --------------------------------------------------------------


def edge_boundary(G: Graph, S: Iterable[int]) -> frozenset[EdgeKey]:
    """Edges with exactly one endpoint in ``S``."""
    S = frozenset(S)
    if not S or len(S) >= G.n or not S <= frozenset(G.vertices):
        raise DomainError("boundary needs a nonempty proper vertex subset")
    return frozenset(EdgeKey.of(v, u) for v in S for u in G.neighbors(v) if u not in S)


# -- trees -------------------------------------------------------------------


def tree_centroid(T: Graph, weights) -> int:
    """A vertex whose removal leaves components of weight <= w(V)/2.

    Walks from vertex 1, stepping to the smallest-id neighbour whose side
    of the connecting edge weighs strictly more than half the total.
    ``weights`` is a mapping ``vertex -> weight`` or a sequence indexed by
    ``vertex - 1``.
    """
    if T.m != T.n - 1 or not is_connected(T):
        raise DomainError("tree_centroid needs a tree")
    if isinstance(weights, Mapping):
        w = [0] + [weights[v] for v in T.vertices]
    else:
        w = [0] + list(weights)
        if len(w) != T.n + 1:
            raise DomainError(f"expected {T.n} weights, got {len(w) - 1}")
    if any(x < 0 for x in w):
        raise DomainError("weights must be nonnegative")
    total = sum(w)

    # subtree sums with the tree rooted at 1
    parent = [0] * (T.n + 1)
    order = [1]
    parent[1] = -1
    for x in order:
        for y in T.neighbors(x):
            if y != parent[x]:
                parent[y] = x
                order.append(y)
    sub = w[:]
    for x in reversed(order[1:]):
        sub[parent[x]] += sub[x]

    def side(u: int, nxt: int):
        # weight of the component containing nxt once edge (u, nxt) is cut
        return sub[nxt] if parent[nxt] == u else total - sub[u]

    u = 1
    while True:
        for y in sorted(T.neighbors(u)):
            if 2 * side(u, y) > total:
                u = y
                break
        else:
            return u
