"""Graph families and the extremal constructions.

Neighbour lists of the named families are sorted by id.  Products and
joins fix their id schemes explicitly (see each function) so that ranks,
and with them every spanner answer, are reproducible.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError
from .graph import EdgeKey, Graph, is_connected


class GenerationError(DomainError):
    pass


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GenerationError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GenerationError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    """Vertex ``(r, c)`` (0-based) gets id ``r * cols + c + 1``."""
    if rows < 1 or cols < 1:
        raise GenerationError("grid needs positive dimensions")
    vid = lambda r, c: r * cols + c + 1
    edges = [(vid(r, c), vid(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [(vid(r, c), vid(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return Graph.from_edges(rows * cols, edges)


def torus_graph(rows: int, cols: int) -> Graph:
    if rows < 3 or cols < 3:
        raise GenerationError("torus needs both dimensions >= 3")
    vid = lambda r, c: (r % rows) * cols + (c % cols) + 1
    edges = [(vid(r, c), vid(r, c + 1)) for r in range(rows) for c in range(cols)]
    edges += [(vid(r, c), vid(r + 1, c)) for r in range(rows) for c in range(cols)]
    return Graph.from_edges(rows * cols, edges)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GenerationError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """Sides ``1..a`` and ``a+1..a+b``."""
    if a < 1 or b < 1:
        raise GenerationError("both sides must be nonempty")
    return Graph.from_edges(a + b, [(u, a + w) for u in range(1, a + 1) for w in range(1, b + 1)])


def petersen_graph() -> Graph:
    """Outer 5-cycle 1..5, spokes ``i -- i+5``, inner pentagram on 6..10."""
    edges = [(i, i % 5 + 1) for i in range(1, 6)]
    edges += [(i, i + 5) for i in range(1, 6)]
    edges += [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def heawood_graph() -> Graph:
    """LCF notation [5, -5]^7 on the Hamiltonian cycle 1..14."""
    edges = [(i, i % 14 + 1) for i in range(1, 15)]
    for i in range(0, 14, 2):
        edges.append((i + 1, (i + 5) % 14 + 1))
    return Graph.from_edges(14, edges)


def _too_close(adj: dict[int, list[int]], u: int, v: int, min_girth: int) -> bool:
    """Would edge (u, v) close a cycle shorter than ``min_girth``?"""
    limit = min_girth - 2
    if limit < 1:
        return False
    seen = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if seen[x] == limit:
            continue
        for y in adj[x]:
            if y not in seen:
                if y == v:
                    return True
                seen[y] = seen[x] + 1
                queue.append(y)
    return False


def random_regular_graph(
    n: int,
    d: int = 3,
    seed: int = 0,
    min_girth: int = 3,
    max_attempts: int = 10_000,
    connected: bool = True,
) -> Graph:
    """Random ``d``-regular graph from the pairing model, seeded.

    Stubs are paired one at a time; a pairing that would create a loop, a
    repeated edge or a cycle shorter than ``min_girth`` is never drawn.  A
    dead end restarts the whole pairing, up to ``max_attempts`` times.
    With ``connected`` disconnected outcomes are also restarted.
    """
    if n < 1 or d < 1 or d >= n:
        raise GenerationError(f"no simple {d}-regular graph on {n} vertices")
    if n * d % 2:
        raise GenerationError(f"n * d = {n * d} is odd")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
        stubs = [v for v in range(1, n + 1) for _ in range(d)]
        while stubs:
            u = rng.choice(stubs)
            free = sorted(set(stubs))
            cands = [w for w in free if w != u and w not in adj[u] and not _too_close(adj, u, w, min_girth)]
            if not cands:
                break
            w = rng.choices(cands, [d - len(adj[c]) for c in cands])[0]
            adj[u].append(w)
            adj[w].append(u)
            stubs.remove(u)
            stubs.remove(w)
        else:
            G = Graph([sorted(adj[v]) for v in range(1, n + 1)])
            if not connected or is_connected(G):
                return G
    raise GenerationError(f"no {d}-regular graph with girth >= {min_girth} on {n} vertices after {max_attempts} attempts")


FAMILIES: dict[str, Callable[..., Graph]] = {
    "path": path_graph,
    "cycle": cycle_graph,
    "grid": grid_graph,
    "torus": torus_graph,
    "complete": complete_graph,
    "complete_bipartite": complete_bipartite_graph,
    "petersen": petersen_graph,
    "heawood": heawood_graph,
    "random_regular": random_regular_graph,
}


def generate(family: str, *args, **params) -> Graph:
    try:
        make = FAMILIES[family]
    except KeyError:
        raise GenerationError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return make(*args, **params)


# -- replacement product ---------------------------------------------------------


@dataclass(frozen=True)
class CloudMap:
    """``clouds[v]``: ids of v's cloud, position ``i`` serving v's slot ``i``.
    ``cross[e]``: the inter-cloud edge of the product standing for ``e``."""

    clouds: dict[int, tuple[int, ...]]
    cross: dict[EdgeKey, EdgeKey]

    def cloud_of(self, x: int) -> int:
        for v, ids in self.clouds.items():
            if x in ids:
                return v
        raise KeyError(x)


def replacement_product(G: Graph) -> tuple[Graph, CloudMap]:
    """Replace each vertex of degree ``x`` by an ``x``-cycle "cloud".

    If ``u`` is the ``i``-th neighbour of ``v`` and ``v`` the ``j``-th of
    ``u``, cloud vertex ``i`` of ``v`` is joined to cloud vertex ``j`` of
    ``u``.  Clouds take consecutive ids in increasing order of ``v``, and
    within a cloud follow slot order; lists in the product are sorted.
    """
    if G.min_degree() < 3:
        raise DomainError("replacement product needs minimum degree >= 3")
    clouds: dict[int, tuple[int, ...]] = {}
    nxt = 1
    for v in G.vertices:
        clouds[v] = tuple(range(nxt, nxt + G.degree(v)))
        nxt += G.degree(v)
    edges = []
    for v in G.vertices:
        ring = clouds[v]
        edges += [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
    cross = {}
    for e in G.edges():
        i = G.slot_of(e.lo, e.hi)
        j = G.slot_of(e.hi, e.lo)
        a, b = clouds[e.lo][i - 1], clouds[e.hi][j - 1]
        edges.append((a, b))
        cross[e] = EdgeKey.of(a, b)
    return Graph.from_edges(nxt - 1, edges), CloudMap(clouds, cross)


# -- subdivision and bridge join -------------------------------------------------


def subdivide(G: Graph, e) -> Graph:
    """Replace edge ``(u, v)`` by the path ``u - w - v`` with ``w = n + 1``.

    ``w`` takes over the slots ``v`` held at ``u`` and ``u`` held at ``v``;
    its own list is ``[min(u,v), max(u,v)]``.
    """
    e = EdgeKey.of(*e)
    if not G.has_edge(*e):
        raise DomainError(f"{tuple(e)} is not an edge")
    w = G.n + 1
    adj = [list(G.neighbors(x)) for x in G.vertices]
    adj[e.lo - 1][adj[e.lo - 1].index(e.hi)] = w
    adj[e.hi - 1][adj[e.hi - 1].index(e.lo)] = w
    adj.append([e.lo, e.hi])
    return Graph(adj, max(G.d_max, 2))


@dataclass(frozen=True)
class BridgeArtifact:
    """Two subdivided copies of a cubic graph joined by the bridge ``(1, 2)``.

    ``copy1[v]`` / ``copy2[v]`` give the id of original vertex ``v`` in
    each copy; ``w1 = 1`` and ``w2 = 2`` are the subdivision vertices.
    """

    graph: Graph
    bridge: EdgeKey
    w1: int
    w2: int
    e1: EdgeKey
    e2: EdgeKey
    copy1: dict[int, int]
    copy2: dict[int, int]


def bridge_join(G: Graph, e1, e2) -> BridgeArtifact:
    """Subdivide ``e1`` in one copy and ``e2`` in another, join the new vertices.

    Ids: ``w1 = 1``, ``w2 = 2``, copy 1 vertex ``v`` is ``v + 2`` and copy 2
    vertex ``v`` is ``n + v + 2``.  Lists keep the original order with the
    subdivision vertex in the freed slot; ``w_i`` lists its two copy
    neighbours by id, then the other ``w``.
    """
    if not G.is_regular(3):
        raise DomainError("bridge_join needs a 3-regular graph")
    if not is_connected(G):
        raise DomainError("bridge_join needs a connected graph")
    e1, e2 = EdgeKey.of(*e1), EdgeKey.of(*e2)
    for e in (e1, e2):
        if not G.has_edge(*e):
            raise DomainError(f"{tuple(e)} is not an edge")
    n = G.n
    copy1 = {v: v + 2 for v in G.vertices}
    copy2 = {v: n + v + 2 for v in G.vertices}
    adj: list[list[int]] = [[], []]
    for copy in (copy1, copy2):
        for v in G.vertices:
            adj.append([copy[u] for u in G.neighbors(v)])
    for w, other, e, copy in ((1, 2, e1, copy1), (2, 1, e2, copy2)):
        a, b = copy[e.lo], copy[e.hi]
        adj[a - 1][adj[a - 1].index(b)] = w
        adj[b - 1][adj[b - 1].index(a)] = w
        adj[w - 1] = [a, b, other]
    F = Graph(adj, 3)
    return BridgeArtifact(F, EdgeKey(1, 2), 1, 2, e1, e2, copy1, copy2)


def bridged_double(G: Graph) -> BridgeArtifact:
    """:func:`bridge_join` on the lowest-ranked edge in both copies."""
    e = G.edges()[0]
    return bridge_join(G, e, e)
