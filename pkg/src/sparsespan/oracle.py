"""Counted neighbour-probe access to a hidden graph, with transcripts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetOverflowError, DomainError, GraphFormatError
from .graph import EdgeKey, Graph

_INT64_MAX = 2**63 - 1

Entry = tuple[int, int, Optional[int]]


@dataclass
class Transcript:
    """Ordered ``(x, i, y)`` probe record for one run on input edge ``(u, v)``.

    ``y`` is None when ``x`` had fewer than ``i`` neighbours.  The input
    edge keeps its orientation because the adversary maps ``u`` and ``v``
    to specific endpoints of a bridge.
    """

    u: int
    v: int
    entries: list[Entry] = field(default_factory=list)

    @property
    def input_edge(self) -> EdgeKey:
        return EdgeKey.of(self.u, self.v)

    def __len__(self) -> int:
        return len(self.entries)

    def dumps(self) -> str:
        lines = [f"edge {self.u} {self.v}"]
        for x, i, y in self.entries:
            lines.append(f"{x} {i} {'-' if y is None else y}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        lines = text.splitlines()
        if not lines:
            raise GraphFormatError("empty transcript", 1)
        head = lines[0].split()
        if len(head) != 3 or head[0] != "edge":
            raise GraphFormatError("expected header 'edge u v'", 1)
        t = cls(*_ints(head[1:], 1))
        for lineno, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if len(parts) != 3:
                raise GraphFormatError("expected 'x i y'", lineno)
            x, i = _ints(parts[:2], lineno)
            y = None if parts[2] == "-" else _ints(parts[2:], lineno)[0]
            t.entries.append((x, i, y))
        return t


def _ints(tokens, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise GraphFormatError(f"not an integer among {tokens}", lineno) from None


class OracleHandle:
    """Neighbour-probe interface to a graph the caller may not inspect.

    Only ``n``, ``d`` and :meth:`query` are public.  Every valid query
    increments :attr:`probe_count` and, when a transcript is attached, is
    appended to it.
    """

    def __init__(self, graph: Graph, transcript: Optional[Transcript] = None):
        self._graph = graph
        self.transcript = transcript
        self.probe_count = 0

    @property
    def n(self) -> int:
        return self._graph.n

    @property
    def d(self) -> int:
        return self._graph.d_max

    def query(self, v: int, i: int) -> Optional[int]:
        if not 1 <= v <= self._graph.n:
            raise DomainError(f"probe vertex {v} outside 1..{self._graph.n}")
        if not 1 <= i <= self._graph.d_max:
            raise DomainError(f"probe slot {i} outside 1..{self._graph.d_max}")
        self.probe_count += 1
        y = self._graph.slot(v, i)
        if self.transcript is not None:
            self.transcript.entries.append((v, i, y))
        return y

    def reset_count(self) -> None:
        self.probe_count = 0


def max_probes_per_edge(G: Graph, k: int) -> int:
    """The per-edge query budget ``d_max ** (k + 1)``."""
    if k < 0:
        raise DomainError(f"radius must be nonnegative, got {k}")
    budget = G.d_max ** (k + 1)
    if budget > _INT64_MAX:
        raise BudgetOverflowError(f"budget unrepresentable: {G.d_max}^{k + 1} exceeds 2^63-1")
    return budget
