"""Command-line entry point: ``sparsespan <command> ...``.

Exit status is 0 on success, 1 on domain errors (bad input, bad flags for
the data) and 2 when a size cap or overflow guard refuses the request.
Every command prints a report of ``key: value`` lines; all keys except
``duration_s`` are deterministic functions of the inputs.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import adversary, constructions
from .errors import DomainError, RefusalError, SparseSpanError
from .expansion import EXPANSION_CAP, check_non_expanding, expansion
from .graph import EdgeKey, Graph, bridges, diameter, girth, is_connected
from .ilg import read_ilg, write_ilg
from .oracle import OracleHandle, max_probes_per_edge
from .reference import BudgetFunctions, decompose
from .spanner import SpannerParams, edge_in_spanner, span_all


class Report:
    def __init__(self, command: str):
        self.lines: list[tuple[str, str]] = [("command", command)]
        self.blocks: list[tuple[str, str]] = []
        self._start = time.perf_counter()

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))

    def block(self, title: str, text: str) -> None:
        """Multi-line payload printed after the key/value section."""
        self.blocks.append((title, text))

    def digest(self, G: Graph, with_girth: bool = False) -> None:
        self.add("n", G.n)
        self.add("d", G.d_max)
        self.add("edges", G.m)
        if with_girth:
            self.add("girth", girth(G))

    def render(self) -> str:
        out = [f"{k}: {v}" for k, v in self.lines]
        out.append(f"duration_s: {time.perf_counter() - self._start:.6f}")
        for title, text in self.blocks:
            out.append(f"[{title}]")
            out.append(text.rstrip("\n"))
        return "\n".join(out) + "\n"


def _yes(flag: bool) -> str:
    return "YES" if flag else "NO"


def _fmt_ratio(r) -> str:
    return f"{r} ({float(r):.6g})"


# -- commands -------------------------------------------------------------------


def cmd_gen(a, rep: Report) -> None:
    fam = a.family
    if fam in ("path", "cycle", "complete"):
        G = constructions.generate(fam, _need(a, "n"))
    elif fam in ("grid", "torus"):
        G = constructions.generate(fam, _need(a, "rows"), _need(a, "cols"))
    elif fam == "complete_bipartite":
        G = constructions.generate(fam, _need(a, "a"), _need(a, "b"))
    elif fam in ("petersen", "heawood"):
        G = constructions.generate(fam)
    elif fam == "random_regular":
        G = constructions.random_regular_graph(
            _need(a, "n"), a.degree, seed=a.seed, min_girth=a.min_girth
        )
        rep.add("seed", a.seed)
    else:
        constructions.generate(fam)  # raises with the list of families
        return
    write_ilg(G, a.out)
    rep.add("family", fam)
    rep.digest(G, with_girth=True)
    rep.add("out", a.out)


def _need(a, name: str) -> int:
    value = getattr(a, name)
    if value is None:
        raise DomainError(f"family {a.family!r} needs --{name}")
    return value


def cmd_transform(a, rep: Report) -> None:
    G = read_ilg(a.inp)
    rep.digest(G)
    if a.replacement_product:
        H, cmap = constructions.replacement_product(G)
        rep.add("transform", "replacement-product")
        rep.add("clouds", len(cmap.clouds))
    elif a.subdivide:
        H = constructions.subdivide(G, a.subdivide)
        rep.add("transform", f"subdivide {a.subdivide[0]} {a.subdivide[1]}")
    else:
        u1, v1, u2, v2 = a.bridge_join
        art = constructions.bridge_join(G, (u1, v1), (u2, v2))
        H = art.graph
        rep.add("transform", f"bridge-join {u1} {v1} {u2} {v2}")
        rep.add("bridge", f"{art.bridge.lo} {art.bridge.hi}")
    write_ilg(H, a.out)
    rep.add("out_n", H.n)
    rep.add("out_edges", H.m)
    rep.add("out", a.out)


def _params(a) -> SpannerParams:
    if a.k is not None:
        return SpannerParams(k=a.k)
    if a.epsilon is None or a.C is None:
        raise DomainError("give --k, or --epsilon and --C with --accept-theoretical-k")
    if not a.accept_theoretical_k:
        raise DomainError("--epsilon/--C derive a huge k; pass --accept-theoretical-k to use it")
    return SpannerParams(epsilon=a.epsilon, C=a.C)


def cmd_span(a, rep: Report) -> None:
    G = read_ilg(a.inp)
    k = _params(a).k
    rep.digest(G)
    rep.add("k", k)
    if a.edge and not a.all:
        h = OracleHandle(G)
        dec = edge_in_spanner(h, *a.edge, k)
        rep.add("edge", f"{dec.edge.lo} {dec.edge.hi}")
        rep.add("answer", dec.answer)
        rep.add("probes", dec.probes_used)
        rep.add("budget", max_probes_per_edge(G, k))
        return
    res = span_all(G, k, jobs=a.jobs)
    rep.add("kept", len(res.edges))
    rep.add("rejected", G.m - len(res.edges))
    rep.add("probes_max", res.max_probes)
    rep.add("probes_mean", f"{res.mean_probes:.4f}")
    rep.add("budget", res.budget)
    rep.add("within_budget", _yes(res.max_probes <= res.budget))
    kept = "".join(f"{e.lo} {e.hi}\n" for e in sorted(res.edges))
    if a.out:
        Path(a.out).write_text(kept)
        rep.add("out", a.out)
    else:
        rep.block("kept edges", kept)
    if a.stats_out:
        stats = "".join(
            f"{d.edge.lo} {d.edge.hi} {d.answer} {d.probes_used}\n" for d in res.decisions
        )
        Path(a.stats_out).write_text(stats)
        rep.add("stats_out", a.stats_out)


def cmd_edge(a, rep: Report) -> None:
    G = read_ilg(a.inp)
    dec = edge_in_spanner(OracleHandle(G), *a.edge, a.k)
    rep.digest(G)
    rep.add("k", a.k)
    rep.add("edge", f"{dec.edge.lo} {dec.edge.hi}")
    rep.add("answer", dec.answer)
    rep.add("probes", dec.probes_used)
    rep.add("budget", max_probes_per_edge(G, a.k))
    if dec.certificate:
        rep.add("cycle_path", " ".join(map(str, dec.certificate)))


def cmd_decompose(a, rep: Report) -> None:
    G = read_ilg(a.inp)
    rep.digest(G)
    dec = decompose(
        G, a.k_stop, a.C,
        assume_non_expanding=a.assume_non_expanding, cap=a.cap, exact_only=a.exact_only,
    )
    rep.add("k_stop", a.k_stop)
    rep.add("removed", len(dec.removed))
    rep.add("components", len(dec.components))
    rep.add("largest_component", max(len(c) for c in dec.components))
    rep.add("exact_cuts", _yes(dec.exact))
    if dec.budget is not None:
        rep.add("beta", f"{dec.budget:.6f}")
    rep.add("epsilon", f"{len(dec.removed) / G.n:.6f}")
    if a.out:
        Path(a.out).write_text(dec.dumps())
        rep.add("out", a.out)
    else:
        rep.block("decomposition", dec.dumps())


def cmd_analyze(a, rep: Report) -> None:
    G = read_ilg(a.inp)
    rep.digest(G)
    rep.add("connected", _yes(is_connected(G)))
    rep.add("min_degree", G.min_degree())
    rep.add("max_degree", G.max_degree())
    if a.girth:
        rep.add("girth", girth(G))
    if a.diameter:
        rep.add("diameter", diameter(G))
    if a.bridges:
        found = bridges(G)
        rep.add("bridges", len(found))
        if found:
            rep.add("bridge_list", ", ".join(f"{e.lo} {e.hi}" for e in found))
    if a.expansion:
        cut = expansion(G, a.cap)
        rep.add("expansion", _fmt_ratio(cut.ratio))
        rep.add("expansion_cut", " ".join(map(str, sorted(cut.members))))
    if a.non_expanding is not None:
        fns = BudgetFunctions(a.non_expanding)
        w = check_non_expanding(G, fns.f)
        rep.add("non_expanding", "PASS" if w is None else "FAIL")
        if w is not None:
            rep.add("witness_vertices", " ".join(map(str, sorted(w.subgraph_vertices))))
            rep.add("witness_cut", " ".join(map(str, sorted(w.cut))))
            rep.add("witness_ratio", _fmt_ratio(w.ratio))
            rep.add("witness_bound", w.bound)


def cmd_adversary(a, rep: Report) -> None:
    G = read_ilg(a.target)
    rep.digest(G, with_girth=True)
    bridge = tuple(a.bridge)
    if EdgeKey.of(*bridge) not in bridges(G):
        raise DomainError(f"({bridge[0]}, {bridge[1]}) is not a bridge of the target")
    if a.alg == "local-spanner":
        if a.k is None:
            raise DomainError("--alg local-spanner needs --k")
        alg = adversary.local_spanner_algorithm(a.k, a.probe_limit)
        rep.add("alg", f"local-spanner k={a.k}" + ("" if a.probe_limit is None else f" probe_limit={a.probe_limit}"))
    else:
        alg = adversary.random_probe_strategy(a.seed, a.probe_limit or 2, discovered_only=not a.any_vertex)
        rep.add("alg", f"random seed={a.seed} max_probes={a.probe_limit or 2}")
    res = adversary.run_pipeline(alg, G, tuple(a.edge), bridge)
    rep.add("edge", f"{a.edge[0]} {a.edge[1]}")
    rep.add("answer", _yes(res.answer))
    rep.add("probes", len(res.transcript))
    rep.add("tree_edges", len(res.forest.tree_edges))
    rep.add("bridge_hit", str(res.bridge_hit).lower())
    rep.add("replay_ok", str(res.replay_ok).lower())
    rep.add("sigma_edge_is_bridge", str(adversary.is_bridge(res.sigma_graph, *a.edge)).lower())
    verdict = "rejects-bridge" if res.rejects_bridge else ("consistent" if res.replay_ok else "replay-mismatch")
    rep.add("verdict", verdict)
    rep.block("transcript", res.transcript.dumps())
    rep.block("sigma", "\n".join(f"{x} {w}" for x, w in enumerate(res.embedding.sigma, start=1)))
    rep.block(
        "constraints",
        "\n".join(f"{x} {i} {y}" for (x, i), y in sorted(res.embedding.order_constraints.items())),
    )
    text = rep.render()
    Path(a.report).write_text(text)
    rep.add("report", a.report)


COMMANDS = {
    "gen": cmd_gen,
    "transform": cmd_transform,
    "span": cmd_span,
    "edge": cmd_edge,
    "decompose": cmd_decompose,
    "analyze": cmd_analyze,
    "adversary": cmd_adversary,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparsespan", description="Local sparse spanning subgraph toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph family")
    g.add_argument("--family", required=True, choices=sorted(constructions.FAMILIES))
    g.add_argument("--n", type=int)
    g.add_argument("--rows", type=int)
    g.add_argument("--cols", type=int)
    g.add_argument("--a", type=int)
    g.add_argument("--b", type=int)
    g.add_argument("--degree", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--min-girth", type=int, default=3)
    g.add_argument("--out", required=True)

    t = sub.add_parser("transform", help="replacement product, subdivision or bridge join")
    t.add_argument("--in", dest="inp", required=True)
    op = t.add_mutually_exclusive_group(required=True)
    op.add_argument("--replacement-product", action="store_true")
    op.add_argument("--subdivide", nargs=2, type=int, metavar=("U", "V"))
    op.add_argument("--bridge-join", nargs=4, type=int, metavar=("U1", "V1", "U2", "V2"))
    t.add_argument("--out", required=True)

    s = sub.add_parser("span", help="run the local spanner")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--epsilon", type=float)
    s.add_argument("--C", type=float)
    s.add_argument("--accept-theoretical-k", action="store_true")
    s.add_argument("--edge", nargs=2, type=int, metavar=("U", "V"))
    s.add_argument("--all", action="store_true")
    s.add_argument("--out", help="write kept edges here instead of the report")
    s.add_argument("--stats-out")
    s.add_argument("--jobs", type=int, default=1)

    e = sub.add_parser("edge", help="decide a single edge")
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--edge", nargs=2, type=int, required=True, metavar=("U", "V"))

    d = sub.add_parser("decompose", help="recursive sparse-cut decomposition")
    d.add_argument("--in", dest="inp", required=True)
    d.add_argument("--k-stop", type=int, required=True)
    d.add_argument("--C", type=float)
    d.add_argument("--assume-non-expanding", action="store_true")
    d.add_argument("--exact-only", action="store_true")
    d.add_argument("--cap", type=int, default=EXPANSION_CAP)
    d.add_argument("--out")

    an = sub.add_parser("analyze", help="structural statistics")
    an.add_argument("--in", dest="inp", required=True)
    an.add_argument("--girth", action="store_true")
    an.add_argument("--diameter", action="store_true")
    an.add_argument("--bridges", action="store_true")
    an.add_argument("--expansion", action="store_true")
    an.add_argument("--non-expanding", type=float, metavar="C")
    an.add_argument("--cap", type=int, default=EXPANSION_CAP)

    ad = sub.add_parser("adversary", help="transcript replay against a bridged target")
    ad.add_argument("--target", required=True)
    ad.add_argument("--bridge", nargs=2, type=int, default=[1, 2], metavar=("U", "V"))
    ad.add_argument("--alg", choices=["local-spanner", "random"], default="local-spanner")
    ad.add_argument("--k", type=int)
    ad.add_argument("--probe-limit", type=int)
    ad.add_argument("--seed", type=int, default=0)
    ad.add_argument("--any-vertex", action="store_true", help="random strategy may probe undiscovered vertices")
    ad.add_argument("--edge", nargs=2, type=int, required=True, metavar=("A", "B"))
    ad.add_argument("--report", required=True)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(" ".join(sys.argv[1:] if argv is None else argv))
    try:
        COMMANDS[args.command](args, rep)
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (SparseSpanError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(rep.render())
    return 0


if __name__ == "__main__":
    sys.exit(main())
