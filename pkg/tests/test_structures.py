"""Hypergraphs, clique search, alpha, generators, embeddings, reducts."""

import itertools
import random

import pytest

from conftest import random_graph, random_hypergraph
from keisler_lab.structures import (
    AlphaResult,
    BipartiteGraph,
    Feq2Structure,
    FreenessViolation,
    Hypergraph,
    Tournament,
    add_vertex_with_links,
    alpha_s,
    build_tp2_grid,
    cyclic_graph,
    embed_search,
    extension_probe,
    find_clique,
    grid_object,
    grid_target,
    is_free,
    is_induced_embedding,
    is_maximal_free,
    random_maximal_free,
    reduct_transform,
    search_small_alpha,
)


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def brute_clique(g: Hypergraph, s: int):
    """First s-set whose r-subsets are all edges, by plain enumeration."""
    for t in itertools.combinations(range(g.n), s):
        if all(g.has_edge(e) for e in itertools.combinations(t, g.r)):
            return t
    return None


def exhaustive_alpha(g: Hypergraph, s: int) -> int:
    """Largest K_{s-1}-free subset by scanning every vertex subset.

    A mask is bad iff it contains some (s-1)-clique; bad sets are closed
    upwards, so one subset-OR sweep over all 2^n masks settles them all.
    """
    bad = bytearray(1 << g.n)
    for t in itertools.combinations(range(g.n), s - 1):
        if all(g.has_edge(e) for e in itertools.combinations(t, 2)):
            bad[sum(1 << v for v in t)] = 1
    for b in range(g.n):
        bit = 1 << b
        for mask in range(1 << g.n):
            if mask & bit and bad[mask ^ bit]:
                bad[mask] = 1
    return max(mask.bit_count()
               for mask in range(1 << g.n) if not bad[mask])


# ---------------------------------------------------------------------------
# basic structures
# ---------------------------------------------------------------------------

def test_hypergraph_validation():
    g = Hypergraph(2, 4, frozenset({(0, 1), (1, 2)}))
    assert g.has_edge((1, 2)) and g.has_edge((2, 1))
    assert not g.has_edge((0, 2))
    assert not g.has_edge((1, 1))
    assert g.degrees == (1, 2, 1, 0)
    # edge entries are canonicalized, not rejected
    assert Hypergraph(2, 4, frozenset({(1, 0)})).edges == frozenset({(0, 1)})
    with pytest.raises(ValueError):
        Hypergraph(2, 3, frozenset({(0, 3)}))
    with pytest.raises(ValueError):
        Hypergraph(2, 3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        Hypergraph(1, 3, frozenset())


def test_adjacency_masks():
    g = Hypergraph(2, 4, frozenset({(0, 1), (1, 2), (2, 3)}))
    assert g.adjacency == (0b0010, 0b0101, 0b1010, 0b0100)


def test_tournament_validation():
    t = Tournament(3, frozenset({(0, 1), (1, 2), (2, 0)}))
    assert t.beats(0, 1) and not t.beats(1, 0)
    with pytest.raises(ValueError):
        Tournament(3, frozenset({(0, 1), (1, 0), (1, 2)}))
    with pytest.raises(ValueError):
        Tournament(3, frozenset({(0, 1)}))


def test_bipartite_validation():
    b = BipartiteGraph(4, frozenset({0, 1}), frozenset({2, 3}),
                       frozenset({(0, 2), (3, 1)}))
    assert b.adjacent(1, 3) and b.adjacent(3, 1)
    assert not b.adjacent(0, 1)
    with pytest.raises(ValueError):
        BipartiteGraph(4, frozenset({0, 1}), frozenset({2, 3}),
                       frozenset({(0, 1)}))
    with pytest.raises(ValueError):
        BipartiteGraph(4, frozenset({0}), frozenset({2, 3}), frozenset())


def test_feq2_validation():
    f = Feq2Structure(4, 2, ((((0, 1), (2, 3))), ((0, 2), (1, 3))))
    assert f.same_class(0, 0, 1) and not f.same_class(1, 0, 1)
    assert f.classmate(0, 0) == 1 and f.classmate(1, 0) == 2
    odd = Feq2Structure(3, 1, ((((0, 1), (2,))),))
    assert odd.classmate(0, 2) is None
    with pytest.raises(ValueError):
        Feq2Structure(4, 1, (((0, 1),),))
    with pytest.raises(ValueError):
        Feq2Structure(4, 1, (((0, 1, 2), (3,)),))
    with pytest.raises(ValueError):
        Feq2Structure(4, 1, (((0, 1), (1, 2), (3,)),))


# ---------------------------------------------------------------------------
# cliques and freeness
# ---------------------------------------------------------------------------

def test_find_clique_small_cases():
    k4 = Hypergraph(2, 4, frozenset(itertools.combinations(range(4), 2)))
    assert find_clique(k4, 3) is not None
    assert find_clique(k4, 4) == (0, 1, 2, 3)
    empty = Hypergraph(2, 6, frozenset())
    assert find_clique(empty, 3) is None
    with pytest.raises(ValueError):
        find_clique(k4, 2)


def test_find_clique_matches_brute():
    rng = random.Random(7)
    for _ in range(60):
        g = random_graph(rng, rng.randint(3, 9), rng.choice([0.3, 0.6]))
        for s in (3, 4):
            found = find_clique(g, s)
            assert (found is None) == (brute_clique(g, s) is None)
            if found is not None:
                assert len(found) == s
                assert all(g.has_edge(e)
                           for e in itertools.combinations(found, 2))


def test_find_clique_matches_brute_hypergraph():
    rng = random.Random(8)
    for _ in range(30):
        g = random_hypergraph(rng, rng.randint(4, 8), 3, 0.6)
        found = find_clique(g, 4)
        assert (found is None) == (brute_clique(g, 4) is None)
        if found is not None:
            assert all(g.has_edge(e)
                       for e in itertools.combinations(found, 3))


def test_random_maximal_free_properties():
    for n, r, s in ((12, 2, 3), (15, 2, 4), (12, 3, 4)):
        for seed in range(3):
            g = random_maximal_free(n, r, s, seed)
            assert g == random_maximal_free(n, r, s, seed)
            assert is_free(g, s)
            assert is_maximal_free(g, s)
    assert random_maximal_free(10, 2, 3, 0) != random_maximal_free(10, 2, 3, 1)
    with pytest.raises(ValueError):
        random_maximal_free(5, 2, 2, 0)


def test_is_maximal_free_rejects_extendable():
    # the empty graph on 3 vertices accepts any edge without a triangle
    assert not is_maximal_free(Hypergraph(2, 3, frozenset()), 3)
    k3 = Hypergraph(2, 3, frozenset({(0, 1), (0, 2), (1, 2)}))
    assert not is_maximal_free(k3, 3)


def test_add_vertex_with_links():
    path = Hypergraph(2, 3, frozenset({(0, 1), (1, 2)}))
    bigger = add_vertex_with_links(path, [(0,), (2,)], 3)
    assert bigger.n == 4
    assert bigger.has_edge((0, 3)) and bigger.has_edge((2, 3))
    assert not bigger.has_edge((1, 3))
    with pytest.raises(FreenessViolation) as info:
        add_vertex_with_links(path, [(0,), (1,)], 3)
    assert set(info.value.witness) == {0, 1, 3}
    with pytest.raises(ValueError):
        add_vertex_with_links(path, [(0, 1)], 3)


# ---------------------------------------------------------------------------
# circulants and alpha
# ---------------------------------------------------------------------------

def test_circulant_13_frozen_values():
    g = cyclic_graph(13, [1, 5])
    assert g.n == 13 and len(g.edges) == 26
    assert all(d == 4 for d in g.degrees)
    assert is_free(g, 3)
    result = alpha_s(g, 3)
    assert result.exact and result.value == 4
    assert len(result.witness) == 4
    assert not any(g.has_edge(e)
                   for e in itertools.combinations(result.witness, 2))


def test_five_cycle_values():
    c5 = cyclic_graph(5, [1])
    assert len(c5.edges) == 5
    assert is_free(c5, 3)
    assert alpha_s(c5, 3).value == 2
    with pytest.raises(ValueError):
        cyclic_graph(5, [0])
    with pytest.raises(ValueError):
        cyclic_graph(5, [3])


def test_alpha_matches_exhaustive():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(3, 10)
        g = random_graph(rng, n, rng.choice([0.2, 0.5, 0.8]))
        for s in (3, 4):
            result = alpha_s(g, s)
            assert result.exact
            assert result.value == exhaustive_alpha(g, s)
            assert len(result.witness) == result.value
            assert not any(
                all(g.has_edge(e) for e in itertools.combinations(t, 2))
                for t in itertools.combinations(result.witness, s - 1))


def test_alpha_edge_cases():
    assert alpha_s(Hypergraph(2, 0, frozenset()), 3).value == 0
    assert alpha_s(Hypergraph(2, 5, frozenset()), 3).value == 5
    with pytest.raises(ValueError):
        alpha_s(Hypergraph(3, 4, frozenset()), 4)
    with pytest.raises(ValueError):
        alpha_s(Hypergraph(2, 4, frozenset()), 2)


def test_alpha_budget_returns_inexact():
    g = random_graph(random.Random(2), 12, 0.5)
    spent = alpha_s(g, 3, budget=2)
    assert not spent.exact
    assert spent.value <= alpha_s(g, 3).value


def test_search_small_alpha_hits_circulant_scale():
    result = search_small_alpha(13, 3, 4, budget=60, seed=0)
    assert result.found
    assert result.alpha <= 4
    assert is_free(result.graph, 3)
    assert alpha_s(result.graph, 3).value == result.alpha


def test_search_small_alpha_miss_is_honest():
    # alpha 1 needs a K_{s-1}, impossible in a free graph with n >= 2
    result = search_small_alpha(8, 3, 1, budget=20, seed=1)
    assert not result.found
    assert result.graph is not None
    assert result.alpha > 1


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

def test_embed_c5_into_petersen(petersen):
    c5 = cyclic_graph(5, [1])
    result = embed_search(c5, petersen)
    assert result.mapping is not None
    assert is_induced_embedding(c5, petersen, result.mapping)


def test_embed_absence_is_proven(petersen):
    k3 = Hypergraph(2, 3, frozenset({(0, 1), (0, 2), (1, 2)}))
    result = embed_search(k3, petersen)
    assert result.mapping is None
    assert result.proven_absent


def test_embed_budget_exhaustion():
    pattern = cyclic_graph(13, [1, 5])
    host = random_maximal_free(200, 2, 3, 9)
    found = embed_search(pattern, host)
    assert found.mapping is not None
    assert is_induced_embedding(pattern, host, found.mapping)
    starved = embed_search(pattern, host, budget=3)
    assert starved.mapping is None and starved.exhausted
    assert not starved.proven_absent


def test_embed_rejects_arity_mismatch():
    g2 = Hypergraph(2, 3, frozenset())
    g3 = Hypergraph(3, 5, frozenset())
    with pytest.raises(ValueError):
        embed_search(g2, g3)


def test_is_induced_embedding_checks_non_edges():
    c4 = cyclic_graph(4, [1])
    k4 = Hypergraph(2, 4, frozenset(itertools.combinations(range(4), 2)))
    assert not is_induced_embedding(c4, k4, (0, 1, 2, 3))
    assert is_induced_embedding(c4, c4, (0, 1, 2, 3))
    assert not is_induced_embedding(c4, c4, (0, 2, 1, 3))


def test_embed_search_matches_brute_on_corpus():
    rng = random.Random(13)
    for _ in range(25):
        pattern = random_graph(rng, rng.randint(2, 4), 0.5)
        host = random_graph(rng, rng.randint(4, 6), 0.5)
        result = embed_search(pattern, host)
        brute_hit = any(
            is_induced_embedding(pattern, host, perm)
            for perm in itertools.permutations(range(host.n), pattern.n))
        assert (result.mapping is not None) == brute_hit
        if result.mapping is not None:
            assert is_induced_embedding(pattern, host, result.mapping)


# ---------------------------------------------------------------------------
# reducts and extension probes
# ---------------------------------------------------------------------------

def test_reduct_hyper_to_graph():
    edges = {(0, 1, 2), (0, 1, 3), (1, 2, 3)}
    g3 = Hypergraph(3, 5, frozenset(edges))
    result = reduct_transform("hyper_to_graph", g3, (1,))
    graph = result.structure
    assert graph.r == 2
    # x ~ y iff {x, y, 1} is an edge; vertex 1 itself is dropped
    kept = [orig for _, orig in result.provenance]
    assert 1 not in kept
    for u, v in itertools.combinations(kept, 2):
        want = tuple(sorted((u, v, 1))) in edges
        iu, iv = kept.index(u), kept.index(v)
        assert graph.has_edge((iu, iv)) == want
    with pytest.raises(ValueError):
        reduct_transform("hyper_to_graph", g3, (1, 1))


def test_reduct_tournament_to_bipartite():
    t = Tournament(4, frozenset({(0, 1), (0, 2), (3, 0), (1, 2), (3, 1),
                                 (2, 3)}))
    result = reduct_transform("tournament_to_bipartite", t, (0,))
    b = result.structure
    # outgoing neighbours of 0 go left, incoming right, arcs point across
    sorts = dict(result.provenance[i] for i in range(len(result.provenance)))
    left_orig = {result.provenance[i][1] for i in b.left}
    right_orig = {result.provenance[i][1] for i in b.right}
    assert left_orig == {1, 2}
    assert right_orig == {3}
    assert sorts  # provenance is populated


def test_reduct_feq_to_bipartite():
    f = build_tp2_grid(2)
    result = reduct_transform("feq_to_bipartite", f, (0,))
    b = result.structure
    assert isinstance(b, BipartiteGraph)
    objs = [i for i, (sort, _) in enumerate(result.provenance) if sort == "o"]
    pars = [i for i, (sort, _) in enumerate(result.provenance) if sort == "p"]
    # the anchor object itself is dropped from the object side
    assert len(objs) == f.objects - 1 and len(pars) == f.parameters
    for i in objs:
        for j in pars:
            _, obj = result.provenance[i]
            _, par = result.provenance[j]
            assert b.adjacent(i, j) == (f.classmate(par, 0) == obj)


def test_reduct_rejects_unknown_kind():
    with pytest.raises(ValueError):
        reduct_transform("unknown", Hypergraph(2, 2, frozenset()), ())


def test_extension_probe(petersen):
    # petersen is triangle-free: no vertex extends an edge positively
    assert extension_probe(petersen, [0, 1], []) is None
    hit = extension_probe(petersen, [0], [2, 3])
    assert hit == 5
    assert petersen.has_edge((0, hit))
    assert all(not petersen.has_edge((hit, w)) for w in (2, 3))
    with pytest.raises(ValueError):
        extension_probe(petersen, [0], [0])
    with pytest.raises(ValueError):
        extension_probe(Hypergraph(3, 4, frozenset()), [0], [1])


def test_extension_probe_bipartite():
    b = BipartiteGraph(4, frozenset({0, 1}), frozenset({2, 3}),
                       frozenset({(0, 2), (1, 2), (1, 3)}))
    assert extension_probe(b, [2, 3], []) == 1
    assert extension_probe(b, [2], [3]) == 0


# ---------------------------------------------------------------------------
# parameterized-equivalence grids
# ---------------------------------------------------------------------------

def test_grid_coordinates():
    assert grid_object(3, 0, 0) == 0
    assert grid_object(3, 2, 1) == 7
    assert grid_target(3, 2) == 11


def test_build_tp2_grid_shape():
    f = build_tp2_grid(2)
    assert f.objects == 6 and f.parameters == 4
    for sigma_index, sigma in enumerate(itertools.product(range(2), repeat=2)):
        # the path parameter pairs each row's chosen cell with that row's target
        for row, col in enumerate(sigma):
            assert f.same_class(sigma_index, grid_object(2, row, col),
                                grid_target(2, row))
    f1 = build_tp2_grid(1)
    assert f1.objects == 2 and f1.parameters == 1


def test_build_tp2_grid_cap():
    with pytest.raises(ValueError):
        build_tp2_grid(7)
    with pytest.raises(ValueError):
        build_tp2_grid(0)
