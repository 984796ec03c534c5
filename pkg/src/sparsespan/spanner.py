"""Local rank-Kruskal sparse spanning subgraph.

An edge ``(x, y)`` is rejected exactly when it is the highest-ranked edge
of some cycle inside the radius-``k`` ball around its smaller endpoint.
Ranks are distinct, so that is the same as the endpoints being joined
inside the ball by a path of strictly lower-ranked edges; the search for
such a path is linear in the ball size.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, TheoreticalKOverflow
from .graph import Ball, EdgeKey, Graph, explore_ball, is_connected
from .oracle import OracleHandle, max_probes_per_edge

# 2^(2^e) stays within a signed 64-bit integer only while 2^e <= 62.
_MAX_INNER = 62


def compute_k(epsilon, C) -> int:
    """Ball radius ``2^(2^(2C/epsilon + 3))`` from the sparsity analysis.

    Exact when ``C/epsilon`` is rational with an integral exponent; a
    fractional exponent is rounded up to the next integer radius.  Raises
    :class:`TheoreticalKOverflow` once the value leaves 64-bit range, which
    happens already for ``C/epsilon > 1``.
    """
    if not (epsilon > 0 and C > 0):
        raise DomainError("epsilon and C must be positive")
    exponent = 2 * Fraction(C) / Fraction(epsilon) + 3
    if exponent.denominator == 1:
        inner = 2 ** int(exponent)
        if inner > _MAX_INNER:
            raise TheoreticalKOverflow(exponent)
        return 2**inner
    inner = 2.0 ** float(exponent)
    if inner > _MAX_INNER:
        raise TheoreticalKOverflow(exponent)
    return math.ceil(2.0**inner)


@dataclass(frozen=True)
class SpannerParams:
    """Radius ``k`` given directly, or derived from ``epsilon`` and ``C``."""

    k: Optional[int] = None
    epsilon: Optional[float] = None
    C: Optional[float] = None

    def __post_init__(self):
        if self.k is None:
            if self.epsilon is None or self.C is None:
                raise DomainError("give k, or both epsilon and C")
            object.__setattr__(self, "k", compute_k(self.epsilon, self.C))
        if self.k < 1:
            raise DomainError(f"k must be at least 1, got {self.k}")


@dataclass(frozen=True)
class SpannerDecision:
    edge: EdgeKey
    accepted: bool
    probes_used: int
    certificate: Optional[tuple[int, ...]] = None
    truncated: bool = False

    @property
    def answer(self) -> str:
        return "YES" if self.accepted else "NO"


def low_rank_path(ball: Ball, edge: EdgeKey) -> Optional[tuple[int, ...]]:
    """A path ``lo .. hi`` inside the ball using only edges ranked below ``edge``."""
    adj: dict[int, list[int]] = {}
    for e in ball.edges:
        if e < edge:
            adj.setdefault(e.lo, []).append(e.hi)
            adj.setdefault(e.hi, []).append(e.lo)
    for nbrs in adj.values():
        nbrs.sort()
    prev = {edge.lo: 0}
    queue = deque([edge.lo])
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y in prev:
                continue
            prev[y] = x
            if y == edge.hi:
                path = [y]
                while path[-1] != edge.lo:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            queue.append(y)
    return None


def edge_in_spanner(
    h: OracleHandle,
    x: int,
    y: int,
    k: int,
    probe_limit: Optional[int] = None,
) -> SpannerDecision:
    """Decide whether edge ``(x, y)`` of the hidden graph is kept.

    The ball is grown from the smaller endpoint, so ``(x, y)`` and
    ``(y, x)`` get the same answer.  With ``probe_limit`` the exploration
    stops early and the decision uses whatever part of the ball was seen;
    a rejection is still backed by a genuine cycle.
    """
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    edge = EdgeKey.of(x, y)
    start = h.probe_count
    b = explore_ball(h.query, h.d, edge.lo, k, limit=probe_limit)
    if edge not in b.edges and not b.truncated:
        raise DomainError(f"({x}, {y}) is not an edge")
    path = low_rank_path(b, edge)
    return SpannerDecision(edge, path is None, h.probe_count - start, path, b.truncated)


@dataclass(frozen=True)
class SpanResult:
    k: int
    edges: frozenset[EdgeKey]
    decisions: tuple[SpannerDecision, ...]
    budget: int

    @property
    def max_probes(self) -> int:
        return max((d.probes_used for d in self.decisions), default=0)

    @property
    def mean_probes(self) -> float:
        if not self.decisions:
            return 0.0
        return sum(d.probes_used for d in self.decisions) / len(self.decisions)


_worker_graph: Optional[Graph] = None


def _init_worker(G: Graph) -> None:
    global _worker_graph
    _worker_graph = G


def _decide(args: tuple[EdgeKey, int]) -> SpannerDecision:
    e, k = args
    return edge_in_spanner(OracleHandle(_worker_graph), e.lo, e.hi, k)


def span_all(G: Graph, k: int, jobs: int = 1) -> SpanResult:
    """Run the local decision on every edge, each with a fresh handle."""
    if not is_connected(G):
        raise DomainError("the input graph must be connected")
    budget = max_probes_per_edge(G, k)
    if jobs > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(G,)) as pool:
            decisions = tuple(pool.map(_decide, [(e, k) for e in G.edges()], chunksize=64))
    else:
        decisions = tuple(edge_in_spanner(OracleHandle(G), e.lo, e.hi, k) for e in G.edges())
    kept = frozenset(d.edge for d in decisions if d.accepted)
    return SpanResult(k, kept, decisions, budget)
