"""The ``.ilg`` incidence-list text format.

Line 1 is ``n d``; line ``v + 1`` lists the neighbours of ``v`` in slot
order, separated by single spaces (an empty line is an isolated vertex).
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .errors import GraphFormatError
from .graph import Graph


def parse_ilg(text: str) -> Graph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError("empty file", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError("expected header 'n d'", 1)
    try:
        n, d = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError("header values must be integers", 1) from None
    if n < 1 or d < 1:
        raise GraphFormatError("n and d must be positive", 1)
    body = lines[1:]
    if len(body) < n:
        raise GraphFormatError(f"expected {n} adjacency lines, found {len(body)}", len(lines) + 1)
    for extra, line in enumerate(body[n:], start=n + 2):
        if line.strip():
            raise GraphFormatError("content after the last adjacency line", extra)

    adj = []
    for v, line in enumerate(body[:n], start=1):
        lineno = v + 1
        try:
            nbrs = [int(tok) for tok in line.split()]
        except ValueError:
            raise GraphFormatError("neighbour ids must be integers", lineno) from None
        if len(nbrs) > d:
            raise GraphFormatError(f"vertex {v} has {len(nbrs)} neighbours, more than d={d}", lineno)
        for u in nbrs:
            if not 1 <= u <= n:
                raise GraphFormatError(f"neighbour {u} outside 1..{n}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {v}", lineno)
        if len(set(nbrs)) != len(nbrs):
            raise GraphFormatError(f"duplicate neighbour in list of vertex {v}", lineno)
        adj.append(nbrs)
    members = [set(a) for a in adj]
    for v, nbrs in enumerate(adj, start=1):
        for u in nbrs:
            if v not in members[u - 1]:
                raise GraphFormatError(f"{u} is listed for vertex {v} but {v} is missing from line {u + 1}", v + 1)
    return Graph(adj, d)


def format_ilg(G: Graph) -> str:
    lines = [f"{G.n} {G.d_max}"]
    lines += [" ".join(map(str, G.neighbors(v))) for v in G.vertices]
    return "\n".join(lines) + "\n"


def read_ilg(path: Union[str, Path]) -> Graph:
    return parse_ilg(Path(path).read_text())


def write_ilg(G: Graph, path: Union[str, Path]) -> None:
    Path(path).write_text(format_ilg(G))
