import itertools
import random

import networkx as nx
import pytest

from corpus import to_nx
from sparsespan.adversary import (
    QueryForest,
    apply_sigma,
    build_linked_tree,
    embed,
    is_bridge,
    local_spanner_algorithm,
    random_probe_strategy,
    record,
    replay_verify,
    run_pipeline,
)
from sparsespan.constructions import bridged_double, complete_graph, path_graph, petersen_graph
from sparsespan.errors import DomainError, EmbeddingFailed
from sparsespan.graph import EdgeKey, Graph, girth
from sparsespan.oracle import Transcript

DOUBLE_PETERSEN = bridged_double(petersen_graph())
DOUBLE_K4 = bridged_double(complete_graph(4))


def silent_yes(h, u, v):
    return True


def degrees(forest: QueryForest) -> dict[int, int]:
    deg: dict[int, int] = {}
    for e in forest.tree_edges:
        for x in e:
            deg[x] = deg.get(x, 0) + 1
    return deg


# -- record ------------------------------------------------------------------------------


def test_record_examples():
    P = petersen_graph()
    answer, t = record(local_spanner_algorithm(1), P, (1, 2))
    assert answer and 0 < len(t) <= 9
    answer, t = record(silent_yes, P, (1, 2))
    assert answer and t.entries == []
    alg = random_probe_strategy(5, 4, discovered_only=False)
    assert record(alg, P, (3, 4))[1].dumps() == record(alg, P, (3, 4))[1].dumps()
    with pytest.raises(DomainError):
        record(silent_yes, P, (1, 3))


# -- linked tree -----------------------------------------------------------------------


def test_linked_tree_examples():
    f = build_linked_tree(Transcript(1, 2, [(1, 1, 2)]))
    assert f.tree_edges == {EdgeKey(1, 2)} and not f.links
    f = build_linked_tree(Transcript(1, 2, [(5, 1, 6)]))
    assert len(f.components) == 2 and f.links == (EdgeKey(1, 5),)
    f = build_linked_tree(Transcript(1, 2, [(1, 1, 2), (1, 2, 3), (1, 3, 4)]))
    assert f.tree_edges == {EdgeKey(1, 2), EdgeKey(1, 3), EdgeKey(1, 4)}
    assert max(degrees(f).values()) == 3


def test_linked_tree_none_entries_add_nothing():
    f = build_linked_tree(Transcript(1, 2, [(1, 3, None), (7, 2, None)]))
    assert f.tree_edges == {EdgeKey(1, 2)}


def test_middle_components_get_low_degree_link_vertices():
    # the middle tree is a path 5-6-7 plus 6-8: vertex 5 has degree 1, 6 has degree 3
    entries = [(5, 1, 6), (6, 2, 7), (6, 3, 8), (10, 1, 11)]
    f = build_linked_tree(Transcript(1, 2, entries))
    assert f.link_vertices == (1, 5, 10)
    assert max(degrees(f).values()) <= 3
    T = nx.Graph(list(f.tree_edges))
    assert nx.is_tree(T)


def test_linked_tree_properties_random():
    rng = random.Random(2)
    G = DOUBLE_PETERSEN.graph
    for _ in range(400):
        alg = random_probe_strategy(rng.randrange(10**6), 2, discovered_only=rng.random() < 0.5)
        e = rng.choice(G.edges())
        _, t = record(alg, G, tuple(e))
        f = build_linked_tree(t)
        assert len(f.forest_edges) <= len(t) + 1
        T = nx.Graph(list(f.tree_edges))
        assert nx.is_tree(T)
        assert max(degrees(f).values()) <= 3


def test_cyclic_probes_rejected():
    with pytest.raises(DomainError):
        build_linked_tree(Transcript(1, 2, [(1, 1, 3), (2, 1, 3)]))


# -- embed -------------------------------------------------------------------------------


def test_embed_empty_transcript():
    f = build_linked_tree(Transcript(5, 6))
    r = embed(f, DOUBLE_PETERSEN)
    assert r.bridge_hit and r.image(5) == 1 and r.image(6) == 2
    assert sorted(r.sigma) == list(range(1, 23))


def test_embed_precondition_boundary_on_double_k4():
    G = DOUBLE_K4.graph
    assert girth(G) == 3
    e = G.edges()[3]
    f1 = build_linked_tree(Transcript(e.lo, e.hi, []))
    embed(f1, DOUBLE_K4)  # |E(T)| = 1 < 3
    y = next(x for x in G.neighbors(e.lo) if x != e.hi)
    f2 = build_linked_tree(Transcript(e.lo, e.hi, [(e.lo, G.slot_of(e.lo, y), y)]))
    assert len(f2.tree_edges) == 2
    embed(f2, DOUBLE_K4)
    star = [(e.lo, i, G.slot(e.lo, i)) for i in (1, 2, 3)]
    f3 = build_linked_tree(Transcript(e.lo, e.hi, star))
    assert len(f3.tree_edges) == 3
    with pytest.raises(DomainError, match="girth"):
        embed(f3, DOUBLE_K4)


def test_embed_two_probe_double_petersen():
    G = DOUBLE_PETERSEN.graph
    for e in G.edges():
        res = run_pipeline(random_probe_strategy(9, 2), G, tuple(e))
        assert len(res.forest.tree_edges) <= 3 < 5
        assert res.replay_ok and res.bridge_hit


def test_embedding_maps_tree_edges_to_target_edges():
    G = DOUBLE_PETERSEN.graph
    for seed in range(50):
        e = G.edges()[seed % G.m]
        res = run_pipeline(random_probe_strategy(seed, 2), G, tuple(e))
        sigma = res.embedding.sigma
        for t in res.forest.tree_edges:
            assert G.has_edge(sigma[t.lo - 1], sigma[t.hi - 1])


def test_girth_is_what_keeps_greedy_alive():
    # ignoring the precondition on a girth-3 target, the greedy step can run out of neighbours
    failures = 0
    G = DOUBLE_K4.graph
    for seed in range(40):
        alg = random_probe_strategy(seed, 3, discovered_only=False)
        for e in G.edges():
            try:
                run_pipeline(alg, G, tuple(e), target_girth=100)
            except EmbeddingFailed as exc:
                failures += 1
                assert exc.tree_edges and exc.partial_sigma and exc.vertex is not None
            except DomainError:
                pass
    assert failures > 0


# -- apply_sigma and replay -----------------------------------------------------------


def identity(G: Graph):
    from sparsespan.adversary import EmbeddingResult

    return EmbeddingResult(tuple(G.vertices), {}, False)


def test_apply_sigma_identity_sorts_lists():
    G = Graph([[3, 2], [1], [1]])
    H = apply_sigma(G, identity(G))
    assert set(H.edges()) == set(G.edges())
    assert H.neighbors(1) == (2, 3)


def test_apply_sigma_swapping_path_leaves():
    from sparsespan.adversary import EmbeddingResult

    P = path_graph(4)
    H = apply_sigma(P, EmbeddingResult((4, 2, 3, 1), {}, False))
    assert set(H.edges()) == {EdgeKey(1, 3), EdgeKey(2, 3), EdgeKey(2, 4)}
    assert nx.is_isomorphic(to_nx(H), nx.path_graph(4))


def test_apply_sigma_honours_constraints_and_rejects_conflicts():
    from sparsespan.adversary import EmbeddingResult

    P = path_graph(3)
    H = apply_sigma(P, EmbeddingResult((1, 2, 3), {(2, 1): 3}, False))
    assert H.neighbors(2) == (3, 1)
    with pytest.raises(EmbeddingFailed):
        apply_sigma(P, EmbeddingResult((1, 2, 3), {(2, 1): 3, (2, 2): 3}, False))
    with pytest.raises(EmbeddingFailed):
        apply_sigma(P, EmbeddingResult((1, 2, 3), {(1, 1): 3}, False))


def test_sigma_graph_makes_input_edge_a_bridge():
    G = DOUBLE_PETERSEN.graph
    for e in G.edges():
        res = run_pipeline(local_spanner_algorithm(1, 2), G, tuple(e))
        H = res.sigma_graph
        assert nx.is_isomorphic(to_nx(H), to_nx(G))
        assert is_bridge(H, e.lo, e.hi)
        for (x, i), y in res.embedding.order_constraints.items():
            assert H.slot(x, i) == y


def test_replay_identity_and_zero_probe():
    P = petersen_graph()  # sorted lists, so the identity relabelling is P itself
    same = apply_sigma(P, identity(P))
    assert same == P
    for seed in range(20):
        alg = random_probe_strategy(seed, 4, discovered_only=False)
        ans, t = record(alg, P, (1, 5))
        assert replay_verify(alg, same, (1, 5), t, ans)
    res = run_pipeline(silent_yes, DOUBLE_PETERSEN.graph, (3, 7))
    assert res.replay_ok and res.transcript.entries == []


def test_replay_detects_mismatch():
    G = DOUBLE_PETERSEN.graph
    alg = random_probe_strategy(1, 2)
    ans, t = record(alg, G, (3, 7))
    assert not replay_verify(alg, G, (3, 7), t, not ans)


def test_rejecting_algorithm_is_caught_on_a_bridge():
    G = DOUBLE_PETERSEN.graph
    stubborn = random_probe_strategy(4, 2, answer=False)
    res = run_pipeline(stubborn, G, (3, 7))
    assert res.replay_ok and res.rejects_bridge
    assert is_bridge(res.sigma_graph, 3, 7)


def test_constraint_consistency_for_repeated_queries():
    G = DOUBLE_PETERSEN.graph

    def repeat(h, u, v):
        for _ in range(2):
            h.query(u, 1)
        return True

    res = run_pipeline(repeat, G, (3, 7))
    assert res.replay_ok and len(res.transcript) == 2


def test_sigma_is_permutation():
    G = DOUBLE_PETERSEN.graph
    for seed, e in zip(range(100), itertools.cycle(G.edges())):
        res = run_pipeline(random_probe_strategy(seed, 2), G, tuple(e))
        assert sorted(res.embedding.sigma) == list(G.vertices)
