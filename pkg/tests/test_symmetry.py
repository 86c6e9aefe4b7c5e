import itertools

import numpy as np
import pytest

from cayleydist.corpus import cayley_corpus
from cayleydist.graphs import (
    Graph,
    bubble_sort_graph,
    cayley_graph,
    complete_bipartite,
    complete_graph,
    cycle,
    pancake_graph,
    path,
    petersen,
    rook_3x3,
)
from cayleydist.groups import aut_fixing_set, cyclic, preset, right_regular
from cayleydist.perm import Permutation
from cayleydist.permgroup import PermGroup
from cayleydist.symmetry import (
    ColoredGraph,
    IntransitiveError,
    automorphism_group,
    graph_certificate,
    is_color_preserving_trivial,
    is_grr,
    is_isomorphic,
    is_normal_cayley,
    is_primitive,
    is_vertex_transitive,
    orbits,
    verify_autbubb,
)
from oracles import automorphisms, block_systems


def test_named_orders():
    assert automorphism_group(complete_graph(4)).order() == 24
    assert automorphism_group(cycle(5)).order() == 10
    assert automorphism_group(petersen()).order() == 120
    assert automorphism_group(complete_bipartite(3, 3)).order() == 72


def test_petersen_orbit_stabilizer():
    G = petersen()
    stab = automorphisms(G.n, G.edges)
    stab0 = [p for p in stab if p[0] == 0]
    assert len(stab0) == 12
    assert automorphism_group(G).order() == 10 * len(stab0)


def test_random_colored_graphs_match_brute_force():
    rng = np.random.default_rng(21)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        vc = [int(x) for x in rng.integers(1, 3, n)]
        ec = [int(x) for x in rng.integers(1, 3, len(edges))]
        G = Graph(n, edges)
        assert automorphism_group(ColoredGraph(G, vertex_colors=vc)).order() == len(automorphisms(n, edges, vc))
        assert automorphism_group(ColoredGraph(G, edge_colors=ec)).order() == len(automorphisms(n, edges, None, ec))


def test_generators_are_automorphisms():
    for G in (petersen(), rook_3x3(), bubble_sort_graph(4).graph):
        for g in automorphism_group(G).generators:
            assert G.is_automorphism(g.images)


def test_color_preserving_trivial():
    G = cycle(6)
    assert is_color_preserving_trivial(ColoredGraph(G, vertex_colors=list(range(1, 7))))
    assert not is_color_preserving_trivial(ColoredGraph(complete_graph(2), vertex_colors=[1, 1]))
    labels = (1, 1, 2, 1, 2, 2)
    assert is_color_preserving_trivial(ColoredGraph(G, vertex_colors=labels))
    assert automorphisms(6, G.edges, labels).shape[0] == 1


def test_orbits_and_transitivity():
    P3 = path(3)
    assert orbits(automorphism_group(P3)) == [[0, 2], [1]]
    assert not is_vertex_transitive(P3)
    assert is_vertex_transitive(petersen())


def test_petersen_explicit_transitivity():
    G = petersen()
    A = automorphisms(G.n, G.edges)
    assert {int(p[0]) for p in A} == set(range(10))


def test_cayley_graphs_vertex_transitive():
    for inst in cayley_corpus(12):
        assert is_vertex_transitive(inst.graph), inst.key


def test_primitivity_examples():
    assert is_primitive(automorphism_group(cycle(5)))
    assert not is_primitive(automorphism_group(cycle(6)))
    for n in range(3, 7):
        assert is_primitive(automorphism_group(complete_graph(n)))
    with pytest.raises(IntransitiveError):
        is_primitive(automorphism_group(path(3)))


def test_primitivity_matches_partition_scan():
    graphs = [cycle(n) for n in range(3, 9)] + [complete_graph(5), complete_bipartite(3, 3), complete_bipartite(4, 4), rook_3x3().complement(), cycle(4).complement()]
    graphs += [inst.graph for inst in cayley_corpus(8)]
    for G in graphs:
        if G.n > 8:
            continue
        P = automorphism_group(G)
        if not P.is_transitive():
            continue
        gens = [g.images for g in P.generators]
        systems = block_systems(gens, G.n)
        nontrivial = [s for s in systems if 1 < len(s) < G.n]
        assert is_primitive(P) == (not nontrivial)


def test_normal_cayley_examples():
    assert is_normal_cayley(cayley_graph(cyclic(6), {1, 5}))
    assert is_normal_cayley(cayley_graph(preset("Z2^2"), {1, 2, 3}))
    H = preset("S3")
    trans = [x for x in range(6) if H.element_order(x) == 2]
    C = cayley_graph(H, trans)
    assert automorphism_group(C.graph).order() == 72
    assert not is_normal_cayley(C)


def test_grr_examples():
    assert not is_grr(cayley_graph(cyclic(6), {1, 5}))
    assert not is_grr(cayley_graph(preset("Z2^2"), {1, 2, 3}))
    P5 = pancake_graph(5)
    assert is_grr(P5)
    assert automorphism_group(P5.graph).order() == 120


def test_stabilizer_times_regular():
    for inst in cayley_corpus(10):
        aut = automorphism_group(inst.graph)
        e = inst.cayley.identity_vertex
        assert aut.order() == aut.stabilizer(e).order() * inst.cayley.group.order


def test_normal_order_identity():
    for n in range(3, 11):
        C = cayley_graph(cyclic(n), {1, n - 1})
        assert automorphism_group(C.graph).order() == n * len(aut_fixing_set(C.group, C.connection.elements))
    C = cayley_graph(preset("Z2^2"), {1, 2, 3})
    assert automorphism_group(C.graph).order() == 4 * len(aut_fixing_set(C.group, {1, 2, 3}))


def test_aut_hs_embeds_in_vertex_stabilizer():
    for inst in cayley_corpus(10):
        C = inst.cayley
        aut = automorphism_group(C.graph)
        stab = aut.stabilizer(C.identity_vertex)
        for a in aut_fixing_set(C.group, C.connection.elements):
            assert Permutation(a.map) in stab


def test_right_regular_inside_aut():
    for inst in cayley_corpus(9):
        aut = automorphism_group(inst.graph)
        assert all(g in aut for g in right_regular(inst.cayley.group).generators)


def test_autbubb():
    r3 = verify_autbubb(3)
    assert r3.aut_order == 12 and r3.ok
    r4 = verify_autbubb(4)
    assert r4.aut_order == 48 and r4.expected_order == 24 * 2 and r4.candidates_distinct and r4.all_of_form


def test_certificate_isomorphism():
    G = petersen()
    rng = np.random.default_rng(0)
    for _ in range(5):
        perm = rng.permutation(10)
        assert graph_certificate(G.relabel(perm)) == graph_certificate(G)
    assert is_isomorphic(complete_bipartite(2, 2), cycle(4))
    assert not is_isomorphic(cycle(6), Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]))


def test_deterministic_generators():
    a = [g.images for g in automorphism_group(petersen()).generators]
    b = [g.images for g in automorphism_group(petersen()).generators]
    assert a == b
