"""Executable form of the indistinguishability argument behind the lower bound.

Pipeline for a deterministic per-edge algorithm ``A`` and an edge ``(u, v)``
of a cubic target with a bridge:

1. :func:`record` runs ``A`` on the target and keeps its transcript.
2. :func:`build_linked_tree` forms the forest of probed edges plus
   ``(u, v)`` and links its trees into one tree ``T``.
3. :func:`embed` maps ``T`` into the target, sending ``u, v`` onto the
   bridge, and fixes neighbour slots so every probe is answered as before.
4. :func:`apply_sigma` builds the relabelled graph and :func:`replay_verify`
   reruns ``A`` on it.

A matching replay means ``A`` gives the same answer on an input where
``(u, v)`` is a bridge, so a NO there breaks connectivity.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

from .errors import DomainError, EmbeddingFailed
from .constructions import BridgeArtifact
from .graph import EdgeKey, Graph, bridges, girth
from .oracle import OracleHandle, Transcript
from .spanner import edge_in_spanner

Algorithm = Callable[[OracleHandle, int, int], bool]


def record(alg: Algorithm, G: Graph, edge: tuple[int, int]) -> tuple[bool, Transcript]:
    """Run ``alg`` on ``G`` for input edge ``(u, v)``; return answer and transcript."""
    u, v = edge
    if not G.has_edge(u, v):
        raise DomainError(f"({u}, {v}) is not an edge")
    transcript = Transcript(u, v)
    answer = bool(alg(OracleHandle(G, transcript), u, v))
    return answer, transcript


@dataclass(frozen=True)
class QueryForest:
    """Probed edges plus the input edge, and the links joining its trees.

    ``components[0]`` contains the input edge; the rest follow by least
    vertex.  ``links[i]`` joins ``link_vertices[i]`` and
    ``link_vertices[i + 1]``.
    """

    u: int
    v: int
    forest_edges: frozenset[EdgeKey]
    components: tuple[frozenset[int], ...]
    link_vertices: tuple[int, ...]
    links: tuple[EdgeKey, ...]

    @property
    def tree_edges(self) -> frozenset[EdgeKey]:
        return self.forest_edges | frozenset(self.links)

    def degree(self, x: int, tree: bool = True) -> int:
        edges = self.tree_edges if tree else self.forest_edges
        return sum(1 for e in edges if x in e)


def build_linked_tree(t: Transcript, max_degree: int = 3) -> QueryForest:
    """Forest of answered probes plus ``(u, v)``, chained into a single tree.

    Each tree contributes one link vertex, the smallest id whose forest
    degree leaves room for its links: ``max_degree - 1`` at the two ends
    of the chain, ``max_degree - 2`` in the middle.  Trees always have a
    vertex of degree <= 1, so the choice exists and ``T`` keeps maximum
    degree ``max_degree``.
    """
    edges = {EdgeKey.of(t.u, t.v)}
    edges.update(EdgeKey.of(x, y) for x, _, y in t.entries if y is not None)
    adj: dict[int, set[int]] = {}
    for e in edges:
        adj.setdefault(e.lo, set()).add(e.hi)
        adj.setdefault(e.hi, set()).add(e.lo)

    comps = []
    seen: set[int] = set()
    for s in [t.u] + sorted(adj):
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    n_edges = sum(len(adj[x]) for x in seen) // 2
    if n_edges != len(seen) - len(comps):
        raise DomainError("probed edges contain a cycle; the forest precondition fails")

    linkers = []
    for idx, comp in enumerate(comps):
        n_links = 0 if len(comps) == 1 else (1 if idx in (0, len(comps) - 1) else 2)
        room = max_degree - n_links
        pick = [x for x in sorted(comp) if len(adj[x]) <= room]
        assert pick, f"no link vertex in tree {sorted(comp)}"
        linkers.append(pick[0])
    links = tuple(EdgeKey.of(a, b) for a, b in zip(linkers, linkers[1:]))
    return QueryForest(t.u, t.v, frozenset(edges), tuple(comps), tuple(linkers), links)


@dataclass(frozen=True)
class EmbeddingResult:
    """``sigma[a - 1]`` is the target vertex that ``a`` is sent to."""

    sigma: tuple[int, ...]
    order_constraints: dict[tuple[int, int], int]
    bridge_hit: bool
    replay_ok: Optional[bool] = None

    def image(self, a: int) -> int:
        return self.sigma[a - 1]


def _target_graph(target: Union[BridgeArtifact, Graph]) -> Graph:
    return target.graph if isinstance(target, BridgeArtifact) else target


def embed(
    forest: QueryForest,
    target: Union[BridgeArtifact, Graph],
    bridge: tuple[int, int] = (1, 2),
    target_girth=None,
) -> EmbeddingResult:
    """Greedy BFS embedding of the linked tree, ``u -> bridge[0]``, ``v -> bridge[1]``.

    Children are visited in id order and each takes the smallest-id
    neighbour of its parent's image not used yet.  The permutation is
    completed by pairing leftover vertices and leftover images in
    increasing order.  Slot constraints copy, for every forest edge, the
    positions both endpoints hold in the target's lists.
    """
    G = _target_graph(target)
    a, b = bridge
    if not G.has_edge(a, b):
        raise DomainError(f"({a}, {b}) is not an edge of the target")
    g = girth(G) if target_girth is None else target_girth
    tree = forest.tree_edges
    if not len(tree) < g:
        raise DomainError(f"precondition fails: |E(T)| = {len(tree)} is not below girth {g}")

    adj: dict[int, list[int]] = {}
    for e in tree:
        adj.setdefault(e.lo, []).append(e.hi)
        adj.setdefault(e.hi, []).append(e.lo)
    sigma = {forest.u: a, forest.v: b}
    used = {a, b}
    queue = deque([forest.u])
    visited = {forest.u}
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y in visited:
                continue
            visited.add(y)
            queue.append(y)
            if y in sigma:
                continue
            free = [w for w in sorted(G.neighbors(sigma[x])) if w not in used]
            if not free:
                raise EmbeddingFailed(
                    "no unused neighbour", tree_edges=sorted(tree), partial_sigma=dict(sigma), vertex=y
                )
            sigma[y] = free[0]
            used.add(free[0])
    for e in tree:
        if not G.has_edge(sigma[e.lo], sigma[e.hi]):
            raise EmbeddingFailed(
                f"tree edge {tuple(e)} not mapped to an edge", tree_edges=sorted(tree),
                partial_sigma=dict(sigma), vertex=e.lo,
            )

    rest = [x for x in G.vertices if x not in sigma]
    spare = [w for w in G.vertices if w not in used]
    sigma.update(zip(rest, spare))

    constraints: dict[tuple[int, int], int] = {}
    for e in forest.forest_edges:
        for x, y in ((e.lo, e.hi), (e.hi, e.lo)):
            key = (x, G.slot_of(x, y))
            if constraints.setdefault(key, y) != y:
                raise EmbeddingFailed("conflicting slot constraints", vertex=x)
    perm = tuple(sigma[x] for x in G.vertices)
    return EmbeddingResult(perm, constraints, sigma[forest.u] == a and sigma[forest.v] == b)


def apply_sigma(G: Graph, r: EmbeddingResult) -> Graph:
    """The graph ``sigma(G)``: ``(x, y)`` is an edge iff ``(sigma x, sigma y)`` is.

    Lists honour ``r.order_constraints``; free slots take the remaining
    neighbours in increasing id order.  Nothing is inherited from ``G``'s
    own ordering.
    """
    if sorted(r.sigma) != list(G.vertices):
        raise DomainError("sigma is not a permutation of the vertex set")
    inverse = [0] * (G.n + 1)
    for x, w in enumerate(r.sigma, start=1):
        inverse[w] = x
    fixed: dict[int, dict[int, int]] = {}
    for (x, i), y in r.order_constraints.items():
        fixed.setdefault(x, {})[i] = y
    adj = []
    for x in G.vertices:
        nbrs = sorted(inverse[w] for w in G.neighbors(r.sigma[x - 1]))
        slots: list[Optional[int]] = [None] * len(nbrs)
        for i, y in fixed.get(x, {}).items():
            if i > len(slots) or y not in nbrs or slots[i - 1] is not None:
                raise EmbeddingFailed(f"constraint slot {i} -> {y} cannot be honoured", vertex=x)
            slots[i - 1] = y
        taken = set(s for s in slots if s is not None)
        if len(taken) != sum(s is not None for s in slots):
            raise EmbeddingFailed("one neighbour constrained to two slots", vertex=x)
        fill = iter(y for y in nbrs if y not in taken)
        adj.append([s if s is not None else next(fill) for s in slots])
    return Graph(adj, G.d_max)


def replay_verify(
    alg: Algorithm,
    sigma_graph: Graph,
    edge: tuple[int, int],
    expected: Transcript,
    expected_answer: bool,
) -> bool:
    """Rerun ``alg`` on ``sigma_graph``; True iff transcript and answer match."""
    answer, t = record(alg, sigma_graph, edge)
    return answer == expected_answer and t.entries == expected.entries


@dataclass(frozen=True)
class PipelineResult:
    edge: tuple[int, int]
    answer: bool
    transcript: Transcript
    forest: QueryForest
    embedding: EmbeddingResult
    sigma_graph: Graph

    @property
    def replay_ok(self) -> bool:
        return bool(self.embedding.replay_ok)

    @property
    def bridge_hit(self) -> bool:
        return self.embedding.bridge_hit

    @property
    def rejects_bridge(self) -> bool:
        """The algorithm answers NO on an input where the edge is a bridge."""
        return self.replay_ok and not self.answer


def run_pipeline(
    alg: Algorithm,
    target: Union[BridgeArtifact, Graph],
    edge: tuple[int, int],
    bridge: tuple[int, int] = (1, 2),
    target_girth=None,
) -> PipelineResult:
    G = _target_graph(target)
    answer, t = record(alg, G, edge)
    forest = build_linked_tree(t)
    emb = embed(forest, G, bridge, target_girth)
    sigma_graph = apply_sigma(G, emb)
    ok = replay_verify(alg, sigma_graph, edge, t, answer)
    return PipelineResult(edge, answer, t, forest, replace(emb, replay_ok=ok), sigma_graph)


def is_bridge(G: Graph, u: int, v: int) -> bool:
    return EdgeKey.of(u, v) in bridges(G)


# -- algorithms to feed the harness ---------------------------------------------


def local_spanner_algorithm(k: int, probe_limit: Optional[int] = None) -> Algorithm:
    """The local rank-Kruskal decision as a harness algorithm."""

    def alg(h: OracleHandle, u: int, v: int) -> bool:
        return edge_in_spanner(h, u, v, k, probe_limit).accepted

    alg.__name__ = f"local_spanner_k{k}" + ("" if probe_limit is None else f"_q{probe_limit}")
    return alg


def random_probe_strategy(
    seed: int,
    max_probes: int,
    discovered_only: bool = True,
    answer: Union[bool, Callable[[list], bool]] = True,
) -> Algorithm:
    """A deterministic algorithm drawn at random.

    Every choice (how many probes, which vertex, which slot) is a pure
    function of ``seed``, the input edge and the answers seen so far, so the
    same transcript prefix always leads to the same next probe.  With
    ``discovered_only`` probes target the input endpoints or earlier
    answers; otherwise any vertex.  ``answer`` is a constant or a function
    of the transcript entries.
    """

    def alg(h: OracleHandle, u: int, v: int) -> bool:
        entries: list = []
        rng = random.Random(f"{seed}|{u},{v}")
        budget = rng.randint(0, max_probes)
        seen = {u, v}
        for _ in range(budget):
            rng = random.Random(f"{seed}|{u},{v}|{entries}")
            x = rng.choice(sorted(seen)) if discovered_only else rng.randint(1, h.n)
            i = rng.randint(1, h.d)
            y = h.query(x, i)
            entries.append((x, i, y))
            if y is not None:
                seen.add(y)
        return answer(entries) if callable(answer) else answer

    return alg
