"""Exact edge expansion by exhaustive subset enumeration.

All ratios are :class:`fractions.Fraction`.  Subsets are scanned as
bitmasks with numpy.  Vertex ``i`` of a sorted vertex
list maps to bit ``t - 1 - i`` so that, among subsets of equal size, the
lexicographically smallest member list has the largest mask; tie-breaking
is then a plain ``max``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, ExhaustiveOnlyError
from .graph import Graph, bfs_distances

EXPANSION_CAP = 24
NON_EXPANSION_CAP = 16

@dataclass(frozen=True)
class Cut:
    """A vertex subset with its boundary size and ratio inside some host."""

    members: frozenset[int]
    boundary: int
    ratio: Fraction


@dataclass(frozen=True)
class ExpansionWitness:
    """A ``t``-vertex induced subgraph whose expansion exceeds ``f(t)``."""

    subgraph_vertices: frozenset[int]
    cut: frozenset[int]
    ratio: Fraction
    bound: float

    @property
    def t(self) -> int:
        return len(self.subgraph_vertices)


def _local_edges(G: Graph, verts: Sequence[int]) -> list[tuple[int, int]]:
    index = {v: i for i, v in enumerate(verts)}
    out = []
    for i, v in enumerate(verts):
        for u in G.neighbors(v):
            j = index.get(u)
            if j is not None and i < j:
                out.append((i, j))
    return out


def _half_table(k: int, weights: Sequence[int], inner: Sequence[tuple[int, int]]) -> np.ndarray:
    """``sum(weights[p] for set bits p) - 2 * #inner pairs with both bits set``, for every k-bit mask."""
    masks = np.arange(1 << k, dtype=np.int64)
    out = np.zeros(masks.shape, dtype=np.int64)
    for p, w in enumerate(weights):
        if w:
            out += w * ((masks >> p) & 1)
    for p, q in inner:
        out -= 2 * ((masks >> p) & (masks >> q) & 1)
    return out


def _bits(k: int, positions: Sequence[int]) -> np.ndarray:
    masks = np.arange(1 << k, dtype=np.int64)
    if not positions:
        return np.zeros((1 << k, 0), dtype=np.float32)
    return np.stack([(masks >> p) & 1 for p in positions], axis=1).astype(np.float32)


def min_boundary_by_size(t: int, edges: Sequence[tuple[int, int]], lo: int, hi: int) -> dict[int, tuple[int, int]]:
    """For each size ``s`` in ``[lo, hi]``: (min boundary, best mask).

    ``edges`` use local indices ``0..t-1``.  Among subsets of size ``s``
    with minimum boundary the returned mask is the largest one, i.e. the
    lexicographically smallest member list under the bit layout above.

    Meet in the middle: a mask is ``A << tl | B``.  With ``g(X)`` the degree
    sum of ``X`` minus twice its inner edges, ``|boundary| = g(A) + g(B) -
    2 cross(A, B)``; ``g`` is tabulated per half and ``cross`` comes from
    one small matrix product per popcount block of ``A``.
    """
    best: dict[int, tuple[int, int]] = {}
    lo, hi = max(lo, 0), min(hi, t)
    if lo > hi:
        return best
    tl = t // 2
    th = t - tl
    deg = [0] * t
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    pos = [t - 1 - i for i in range(t)]
    high = lambda i: pos[i] >= tl
    wa = [0] * th
    wb = [0] * tl
    for i in range(t):
        if high(i):
            wa[pos[i] - tl] = deg[i]
        else:
            wb[pos[i]] = deg[i]
    inner_a, inner_b, cross_a, cross_b = [], [], [], []
    for i, j in edges:
        if high(i) and high(j):
            inner_a.append((pos[i] - tl, pos[j] - tl))
        elif not high(i) and not high(j):
            inner_b.append((pos[i], pos[j]))
        else:
            a, b = (i, j) if high(i) else (j, i)
            cross_a.append(pos[a] - tl)
            cross_b.append(pos[b])

    g_a, g_b = _half_table(th, wa, inner_a), _half_table(tl, wb, inner_b)
    x_a, x_b = _bits(th, cross_a), _bits(tl, cross_b)
    pop_a = np.bitwise_count(np.arange(1 << th, dtype=np.int64))
    pop_b = np.bitwise_count(np.arange(1 << tl, dtype=np.int64))
    # columns grouped by popcount, increasing B inside each group
    col_order = np.argsort(pop_b, kind="stable")
    col_start = np.searchsorted(pop_b[col_order], np.arange(tl + 2))
    xb_sorted = x_b[col_order].T
    gb_sorted = g_b[col_order]

    for sa in range(max(0, lo - tl), min(th, hi) + 1):
        rows = np.flatnonzero(pop_a == sa)
        cross = x_a[rows] @ xb_sorted if cross_a else np.zeros((len(rows), 1 << tl), dtype=np.float32)
        total = g_a[rows, None] + gb_sorted[None, :] - 2 * cross.astype(np.int64)
        for sb in range(max(0, lo - sa), min(tl, hi - sa) + 1):
            c0, c1 = col_start[sb], col_start[sb + 1]
            block = total[:, c0:c1]
            bmin = int(block.min())
            r = int(np.flatnonzero((block == bmin).any(axis=1)).max())
            c = int(np.flatnonzero(block[r] == bmin).max())
            mask = int(rows[r]) << tl | int(col_order[c0 + c])
            s = sa + sb
            prev = best.get(s)
            if prev is None or bmin < prev[0] or (bmin == prev[0] and mask > prev[1]):
                best[s] = (bmin, mask)
    return best


def _members(verts: Sequence[int], mask: int) -> frozenset[int]:
    t = len(verts)
    return frozenset(v for i, v in enumerate(verts) if mask >> (t - 1 - i) & 1)


def best_cut_in_window(G: Graph, verts: Iterable[int], lo: int, hi: int) -> Cut:
    """Exact minimiser of ``|boundary(S)|/|S|`` over ``lo <= |S| <= hi``.

    Boundaries are taken inside the subgraph induced by ``verts``.  Ties go
    to the smaller ``|S|``, then to the lexicographically smaller set.
    """
    verts = sorted(verts)
    table = min_boundary_by_size(len(verts), _local_edges(G, verts), lo, hi)
    if not table:
        raise DomainError(f"no subset size in window [{lo}, {hi}]")
    size = min(table, key=lambda s: (Fraction(table[s][0], s), s))
    b, mask = table[size]
    return Cut(_members(verts, mask), b, Fraction(b, size))


def expansion(G: Graph, cap: int = EXPANSION_CAP) -> Cut:
    """Exact ``phi_G`` with a minimising cut, over ``1 <= |S| <= n/2``."""
    if G.n < 2:
        raise DomainError("expansion needs at least two vertices")
    if G.n > cap:
        raise ExhaustiveOnlyError("expansion", G.n, cap)
    return best_cut_in_window(G, G.vertices, 1, G.n // 2)


def floor_bound(value) -> Optional[Fraction]:
    """Exact rational not above ``value``; None for +inf (no constraint).

    Ints and Fractions are taken exactly.  A float is stepped one ulp
    towards -inf first, since the true real it approximates may lie just
    below it; a PASS is therefore never granted on rounding luck.
    """
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Fraction(value)
    x = float(value)
    if math.isnan(x):
        raise DomainError("bound function returned NaN")
    if x == math.inf:
        return None
    if x == -math.inf:
        raise DomainError("bound function returned -inf")
    return Fraction(math.nextafter(x, -math.inf))


def _connected(G: Graph, verts: frozenset[int]) -> bool:
    return len(bfs_distances(G, min(verts), verts)) == len(verts)


def check_non_expanding(
    G: Graph,
    f: Callable[[int], float],
    cap: int = NON_EXPANSION_CAP,
) -> Optional[ExpansionWitness]:
    """None if every ``t``-vertex subgraph (``t > 2``) has ``phi <= f(t)``.

    Otherwise the first violation, scanning ``t`` downwards from ``n`` and
    vertex sets in lexicographic order, so the largest offender is named.  Only induced subgraphs are examined: deleting
    edges on a fixed vertex set can only shrink every boundary, and a
    disconnected subgraph has ``phi = 0``.
    """
    if G.n > cap:
        raise ExhaustiveOnlyError("check_non_expanding", G.n, cap)
    for t in range(G.n, 2, -1):
        raw = f(t)
        bound = floor_bound(raw)
        if bound is None:
            continue
        for combo in combinations(G.vertices, t):
            H = frozenset(combo)
            if bound >= 0 and not _connected(G, H):
                continue
            cut = best_cut_in_window(G, combo, 1, t // 2)
            if cut.ratio > bound:
                return ExpansionWitness(H, cut.members, cut.ratio, float(raw))
    return None


def is_non_expanding(G: Graph, f: Callable[[int], float], cap: int = NON_EXPANSION_CAP) -> bool:
    return check_non_expanding(G, f, cap) is None
