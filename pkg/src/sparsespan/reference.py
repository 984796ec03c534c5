"""Global baselines: the rank-Kruskal tree and the sparse-cut decomposition.

``decompose`` follows the recursive process behind the sparsity bound:
cut off a set ``S`` with ``n/3 <= |S| <= n/2`` and small boundary, delete
its boundary, recurse on both sides, stop at ``k_stop`` vertices.  The
number of deleted edges is compared with

    beta(n) = C n / lnln(k/3) - C n / lnln(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, ExhaustiveOnlyError
from .expansion import EXPANSION_CAP, Cut, best_cut_in_window
from .graph import EdgeKey, Graph, bfs_distances, connected_components, is_connected


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True


def kruskal_tree(G: Graph) -> frozenset[EdgeKey]:
    """The unique minimum spanning tree when edges are weighted by rank."""
    if not is_connected(G):
        raise DomainError("kruskal_tree needs a connected graph")
    uf = UnionFind(G.n)
    return frozenset(e for e in G.edges() if uf.union(e.lo, e.hi))


# -- budget functions ----------------------------------------------------------


def lnln(x: float) -> float:
    return math.log(math.log(x))


def beta_budget(n, k, C) -> float:
    """Edge budget ``C n / lnln(k/3) - C n / lnln(n)`` for ``n >= k/3``, ``k >= 50``.

    Evaluated as ``C n (lnln n - lnln(k/3)) / (lnln n lnln(k/3))`` with the
    difference taken through log1p of ``(3n - k)/k``, which keeps full relative
    precision near ``n = k/3`` and gives exactly 0 there.
    """
    if k < 50:
        raise DomainError(f"beta_budget needs k >= 50, got {k}")
    if C <= 0:
        raise DomainError("C must be positive")
    third = k / 3
    if n < third:
        raise DomainError(f"beta_budget needs n >= k/3 = {third}, got {n}")
    log_third = math.log(third)
    gap = math.log1p(math.log1p((3 * n - k) / k) / log_third)
    return C * n * gap / (lnln(third) * lnln(n))


@dataclass(frozen=True)
class BudgetFunctions:
    """The profile ``f(x) = C / (log x (loglog x)^2)`` and its companions."""

    C: float

    def f(self, x: float) -> float:
        return self.C * self.f_star(x)

    @staticmethod
    def f_star(x: float) -> float:
        if x <= 2:
            raise DomainError(f"f* is defined for x > 2, got {x}")
        lg = math.log2(x)
        return 1.0 / (lg * math.log2(lg) ** 2)

    @staticmethod
    def h(x: float) -> float:
        if x <= math.e:
            raise DomainError(f"h is defined for x > e, got {x}")
        return x / lnln(x)

    def beta(self, n, k) -> float:
        return beta_budget(n, k, self.C)


# -- balanced sparse cuts --------------------------------------------------------


def size_window(n: int) -> tuple[int, int]:
    """Sizes allowed for the smaller side: ``ceil(n/3) .. floor(n/2)``."""
    return -(-n // 3), n // 2


def balanced_sparse_cut(G: Graph, cap: int = EXPANSION_CAP) -> Cut:
    """Exact minimiser of ``|boundary(S)|/|S|`` over ``n/3 <= |S| <= n/2``."""
    if G.n < 3:
        raise DomainError("balanced_sparse_cut needs at least three vertices")
    if G.n > cap:
        raise ExhaustiveOnlyError("balanced_sparse_cut", G.n, cap)
    return best_cut_in_window(G, G.vertices, *size_window(G.n))


def _boundary_within(G: Graph, S: frozenset[int], pool: frozenset[int]) -> int:
    return sum(1 for v in S for u in G.neighbors(v) if u in pool and u not in S)


def _cut_key(b: int, members: Sequence[int]):
    return (Fraction(b, len(members)), len(members), tuple(sorted(members)))


def sweep_cut(G: Graph, verts: Sequence[int], max_pairs: int = 8) -> Cut:
    """Deterministic window cut for vertex sets too large to enumerate.

    Prefix sweeps over BFS orders from every vertex, and over the order
    ``dist(a, v) - dist(b, v)`` for pairs of peripheral vertices ``a, b``
    (on grids this recovers straight cuts), followed by single-vertex moves
    while they strictly lower the ratio.  Not guaranteed optimal.
    """
    pool = frozenset(verts)
    ordered = sorted(pool)
    n = len(ordered)
    lo, hi = size_window(n)
    nbrs = {v: [u for u in G.neighbors(v) if u in pool] for v in ordered}

    dist = {}
    for v in ordered:
        dist[v] = bfs_distances(G, v, pool)
    orders = []
    for v in ordered:
        # BFS order, then any other component in id order
        seq = sorted(dist[v], key=lambda u: (dist[v][u], u))
        rest = [u for u in ordered if u not in dist[v]]
        orders.append(seq + rest)
    far = {v: max(dist[v].values()) for v in ordered}
    ecc = max(far.values())
    peripheral = [v for v in ordered if far[v] == ecc][:max_pairs]
    big = n + 1
    for i, a in enumerate(peripheral):
        for b in peripheral[i + 1:]:
            key = {u: dist[a].get(u, big) - dist[b].get(u, big) for u in ordered}
            orders.append(sorted(ordered, key=lambda u: (key[u], u)))

    best = None
    for order in orders:
        inside: set[int] = set()
        b = 0
        for idx, v in enumerate(order[:hi], start=1):
            adj_in = sum(1 for u in nbrs[v] if u in inside)
            b += len(nbrs[v]) - 2 * adj_in
            inside.add(v)
            if idx >= lo:
                cand = _cut_key(b, order[:idx])
                if best is None or cand < best[0]:
                    best = (cand, b, frozenset(order[:idx]))

    _, b, S = best
    improved = True
    while improved:
        improved = False
        top = _cut_key(b, S)
        move = None
        for v in ordered:
            inn = sum(1 for u in nbrs[v] if u in S)
            out = len(nbrs[v]) - inn
            if v in S:
                if len(S) - 1 < lo:
                    continue
                nb, T = b - out + inn, S - {v}
            else:
                if len(S) + 1 > hi:
                    continue
                nb, T = b - inn + out, S | {v}
            cand = _cut_key(nb, T)
            if cand < top and (move is None or cand < move[0]):
                move = (cand, nb, T)
        if move is not None:
            _, b, S = move
            improved = True
    return Cut(S, b, Fraction(b, len(S)))


# -- decomposition ------------------------------------------------------------


@dataclass(frozen=True)
class CutRecord:
    """One internal node of the recursion."""

    node: tuple[int, ...]
    side: frozenset[int]
    boundary: int
    ratio: Fraction
    exact: bool
    claim_bound: Optional[float] = None  # 2 f(n/3) when checked


@dataclass
class Decomposition:
    removed: list[EdgeKey]
    components: list[frozenset[int]]
    k_stop: int
    budget: Optional[float]
    cuts: list[CutRecord] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.cuts)

    def dumps(self) -> str:
        lines = [f"removed {len(self.removed)}"]
        lines += [f"{e.lo} {e.hi}" for e in self.removed]
        lines.append(f"components {len(self.components)}")
        lines += [" ".join(map(str, sorted(c))) for c in self.components]
        return "\n".join(lines) + "\n"


class BudgetViolation(AssertionError):
    pass


def decompose(
    G: Graph,
    k_stop: int,
    C: Optional[float] = None,
    *,
    assume_non_expanding: bool = False,
    cap: int = EXPANSION_CAP,
    exact_only: bool = False,
) -> Decomposition:
    """Recursively delete sparse balanced cuts until parts have <= k_stop vertices.

    Nodes with at most ``cap`` vertices use the exact window minimiser;
    larger nodes use :func:`sweep_cut`, or raise
    :class:`ExhaustiveOnlyError` naming the node when ``exact_only``.

    With ``assume_non_expanding`` the caller asserts that ``G`` is
    f-non-expanding for ``f(x) = C/(log x (loglog x)^2)``; each cut ratio is
    then checked against ``2 f(n/3)`` and, when ``n >= k_stop >= 50``, the
    total against ``beta(n)``.  Either failure raises :class:`BudgetViolation`.
    """
    if k_stop < 1:
        raise DomainError(f"k_stop must be at least 1, got {k_stop}")
    if assume_non_expanding and C is None:
        raise DomainError("assume_non_expanding needs C")
    fns = BudgetFunctions(C) if C is not None else None
    removed: list[EdgeKey] = []
    cuts: list[CutRecord] = []

    def split(node: tuple[int, ...]) -> None:
        if len(node) <= k_stop:
            return
        if len(node) <= cap:
            cut = best_cut_in_window(G, node, *size_window(len(node)))
            exact = True
        elif exact_only:
            raise ExhaustiveOnlyError(f"decompose node {node[:6]}{'...' if len(node) > 6 else ''}", len(node), cap)
        else:
            cut = sweep_cut(G, node)
            exact = False
        claim = None
        if assume_non_expanding and len(node) / 3 > 2:
            claim = 2 * fns.f(len(node) / 3)
            if cut.ratio > claim:
                raise BudgetViolation(
                    f"cut ratio {cut.ratio} exceeds 2f(n/3) = {claim} on a {len(node)}-vertex node"
                )
        cuts.append(CutRecord(node, cut.members, cut.boundary, cut.ratio, exact, claim))
        S = cut.members
        rest = frozenset(node) - S
        removed.extend(sorted(EdgeKey.of(v, u) for v in S for u in G.neighbors(v) if u in rest))
        for part in sorted((S, rest), key=lambda p: (len(p), min(p))):
            split(tuple(sorted(part)))

    split(tuple(G.vertices))
    components = connected_components(G.without_edges(removed))

    budget = None
    if fns is not None and k_stop >= 50 and G.n >= k_stop / 3:
        budget = fns.beta(G.n, k_stop)
    if assume_non_expanding and budget is not None and G.n >= k_stop and len(removed) > budget:
        raise BudgetViolation(f"removed {len(removed)} edges > beta(n) = {budget}")
    return Decomposition(removed, components, k_stop, budget, cuts)
