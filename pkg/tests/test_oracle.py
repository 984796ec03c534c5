import random

import pytest

from sparsespan.constructions import path_graph, petersen_graph
from sparsespan.errors import BudgetOverflowError, DomainError, GraphFormatError
from sparsespan.graph import Graph
from sparsespan.oracle import OracleHandle, Transcript, max_probes_per_edge


def test_query_examples():
    h = OracleHandle(path_graph(3))
    assert h.query(2, 1) == 1
    assert h.query(1, 2) is None
    P = petersen_graph()
    h = OracleHandle(P)
    assert h.query(1, 3) == P.neighbors(1)[2]
    assert h.probe_count == 1


def test_out_of_range_probes_are_errors_and_uncounted():
    h = OracleHandle(path_graph(3))
    for v, i in [(0, 1), (4, 1), (1, 0), (1, 3)]:
        with pytest.raises(DomainError):
            h.query(v, i)
    assert h.probe_count == 0


def test_handle_exposes_only_n_and_d():
    h = OracleHandle(petersen_graph())
    assert (h.n, h.d) == (10, 3)
    public = {name for name in vars(h) if not name.startswith("_")}
    assert public == {"transcript", "probe_count"}


def test_count_and_reset():
    h = OracleHandle(petersen_graph())
    assert h.probe_count == 0
    for _ in range(5):
        h.query(1, 1)
    assert h.probe_count == 5
    h.reset_count()
    assert h.probe_count == 0
    h.reset_count()
    assert h.probe_count == 0


def test_reset_keeps_transcript():
    t = Transcript(1, 2)
    h = OracleHandle(petersen_graph(), t)
    h.query(1, 1)
    h.reset_count()
    assert len(t) == 1


def test_accounting_and_replay_determinism():
    G = Graph.from_edges(6, [(1, 2), (2, 3), (3, 4), (1, 5)], d_max=3)
    rng = random.Random(4)
    t = Transcript(1, 2)
    h = OracleHandle(G, t)
    m = 200
    for _ in range(m):
        h.query(rng.randint(1, 6), rng.randint(1, 3))
    assert h.probe_count == m == len(t)
    assert any(y is None for _, _, y in t.entries)
    h2 = OracleHandle(G)
    assert [h2.query(x, i) for x, i, _ in t.entries] == [y for _, _, y in t.entries]


def test_transcript_serialization_round_trip():
    t = Transcript(3, 1, [(3, 1, 4), (4, 2, None), (1, 3, 2)])
    text = t.dumps()
    assert text == "edge 3 1\n3 1 4\n4 2 -\n1 3 2\n"
    assert Transcript.loads(text) == t
    with pytest.raises(GraphFormatError):
        Transcript.loads("edge 1\n")
    with pytest.raises(GraphFormatError, match="line 3"):
        Transcript.loads("edge 1 2\n1 1 2\n1 x 2\n")


def test_budget_examples():
    assert max_probes_per_edge(petersen_graph(), 1) == 9
    assert max_probes_per_edge(Graph.from_edges(5, [(1, 2)], d_max=4), 0) == 4
    assert max_probes_per_edge(path_graph(4), 3) == 16


def test_budget_overflow():
    assert max_probes_per_edge(path_graph(4), 61) == 2**62
    with pytest.raises(BudgetOverflowError):
        max_probes_per_edge(path_graph(4), 62)
    with pytest.raises(DomainError):
        max_probes_per_edge(path_graph(4), -1)
