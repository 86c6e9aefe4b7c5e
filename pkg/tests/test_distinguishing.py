import itertools

import numpy as np
import pytest

from cayleydist.budget import Budget
from cayleydist.corpus import random_graphs
from cayleydist.distinguishing import (
    EdgeLabeling,
    PreconditionError,
    VertexLabeling,
    action_distinguishing_number,
    bubble_sort_check,
    construct_bubble_sort_labeling,
    construct_grr_edge_labeling,
    construct_normal_cayley_labeling,
    construct_setstab_labeling,
    distinguishing_index,
    distinguishing_number,
    extend_with_extra_label,
    is_distinguishing_edge,
    is_distinguishing_vertex,
)
from cayleydist.graphs import (
    Graph,
    bubble_sort_graph,
    cayley_graph,
    complete_bipartite,
    complete_graph,
    cycle,
    pancake_graph,
    petersen,
)
from cayleydist.groups import GroupAction, aut_fixing_set, automorphism_action, cyclic, group_automorphisms, preset
from cayleydist.perm import Permutation
from cayleydist.symmetry import automorphism_group
import oracles


def test_labeling_validation():
    with pytest.raises(ValueError):
        VertexLabeling((1, 0))
    with pytest.raises(ValueError):
        EdgeLabeling(((0, 1),), (1, 2))
    assert VertexLabeling((1, 2, 2)).label_count == 2


def test_vertex_check_examples():
    C6 = cycle(6)
    assert is_distinguishing_vertex(C6, (1, 1, 2, 1, 2, 2))
    assert not is_distinguishing_vertex(cycle(4), (1, 1, 1, 1))
    assert is_distinguishing_vertex(petersen(), tuple(range(1, 11)))


def test_edge_check_examples():
    K2 = complete_graph(2)
    assert not is_distinguishing_edge(K2, (1,))
    P = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert is_distinguishing_edge(P, (1, 2, 2))
    assert not is_distinguishing_edge(P, (1, 2, 1))


def test_named_values():
    assert [distinguishing_number(complete_graph(n)).value for n in range(1, 7)] == [1, 2, 3, 4, 5, 6]
    assert distinguishing_number(petersen()).value == 3
    assert distinguishing_number(cycle(4)).value == 3
    assert distinguishing_number(cycle(5)).value == 3
    assert distinguishing_number(cycle(6)).value == 2
    assert distinguishing_index(complete_graph(4)).value == 3
    assert distinguishing_index(complete_bipartite(3, 3)).value == 3
    assert distinguishing_index(cycle(6)).value == 2
    assert distinguishing_index(cycle(5)).value == 3


def test_witnesses_verify():
    for G in (petersen(), cycle(7), complete_bipartite(2, 3)):
        r = distinguishing_number(G)
        assert r.exact and r.witness.label_count <= r.value
        assert is_distinguishing_vertex(G, r.witness)
        e = distinguishing_index(G)
        assert is_distinguishing_edge(G, e.witness)


def test_d_is_one_iff_asymmetric():
    for G in random_graphs(30, 7, seed=5):
        trivial = automorphism_group(G).is_trivial()
        assert (distinguishing_number(G).value == 1) == trivial


def test_random_graphs_match_brute_force():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(1, 7))
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.45][:9]
        G = Graph(n, edges)
        assert distinguishing_number(G).value == oracles.distinguishing_number(n, G.edges)
        r = distinguishing_index(G)
        if r.status == "undefined":
            assert oracles.distinguishing_index(n, G.edges) is None
        else:
            assert r.value == oracles.distinguishing_index(n, G.edges)


def test_index_undefined_for_k2():
    r = distinguishing_index(complete_graph(2))
    assert r.status == "undefined" and r.value is None
    assert oracles.distinguishing_index(2, [(0, 1)]) is None


def test_budget_exceeded_is_not_a_value():
    r = distinguishing_number(complete_bipartite(6, 6), Budget(seconds=0.0))
    assert r.status == "budget-exceeded"
    assert r.value is None and r.lo == 1 and r.hi == 7


def test_monotone_extension():
    G = cycle(6)
    phi = distinguishing_number(G).witness
    more = extend_with_extra_label(phi)
    assert more.label_count == phi.label_count + 1
    assert is_distinguishing_vertex(G, more)
    with pytest.raises(ValueError):
        extend_with_extra_label(VertexLabeling((1, 2, 3)))


def test_action_number():
    trivial = GroupAction((Permutation.identity(3),), 3)
    assert action_distinguishing_number(trivial).value == 1
    S3 = GroupAction(tuple(Permutation(p) for p in itertools.permutations(range(3))), 3)
    assert action_distinguishing_number(S3).value == 3
    V = preset("Z2^2")
    assert action_distinguishing_number(automorphism_action(group_automorphisms(V))).value == 3


def test_bubble_labeling():
    phi = construct_bubble_sort_labeling(4)
    assert phi.labels.count(1) == 3
    assert bubble_sort_check(4)
    assert construct_bubble_sort_labeling(5).labels.count(1) == 4
    # B3 is a 6-cycle: every pair of vertices is swapped by a reflection.
    phi3 = construct_bubble_sort_labeling(3)
    G3 = bubble_sort_graph(3).graph
    assert not is_distinguishing_vertex(G3, phi3)
    assert oracles.preserves(oracles.automorphisms(6, G3.edges), phi3.labels)
    assert distinguishing_number(G3).value == 2


def test_grr_labeling():
    P5 = pancake_graph(5)
    psi = construct_grr_edge_labeling(P5)
    assert psi.labels.count(1) == len(P5.connection.elements)
    assert is_distinguishing_edge(P5.graph, psi)
    C6 = cayley_graph(cyclic(6), {1, 5})
    assert not is_distinguishing_edge(C6.graph, construct_grr_edge_labeling(C6))


def test_normal_three_labeling():
    C = cayley_graph(cyclic(6), {1, 5})
    phi = construct_normal_cayley_labeling(C)
    assert phi.label_count <= 3 and phi.labels.count(3) == 1
    assert phi.labels[C.group.identity] == 3
    assert is_distinguishing_vertex(C.graph, phi)
    with pytest.raises(PreconditionError):
        construct_normal_cayley_labeling(cayley_graph(preset("Z2^2"), {1, 2, 3}))
    H = preset("S3")
    trans = [x for x in range(6) if H.element_order(x) == 2]
    with pytest.raises(PreconditionError):
        construct_normal_cayley_labeling(cayley_graph(H, trans))


def test_setstab_labeling():
    C = cayley_graph(cyclic(6), {1, 5})
    s = construct_setstab_labeling(C)
    assert s.t == 2
    assert s.labeling.label_count == 3
    assert s.rendered().count(0) == 4
    assert is_distinguishing_vertex(C.graph, s.labeling)


def test_setstab_with_trivial_set_automorphisms():
    # a GRR has Aut(H, S) trivial, so S takes one label and the rest another
    P5 = pancake_graph(5)
    assert len(aut_fixing_set(P5.group, P5.connection.elements, cap=128)) == 1
    s = construct_setstab_labeling(P5)
    assert s.t == 1 and s.labeling.label_count == 2
    assert sorted(set(s.rendered())) == [0, 1]
    assert is_distinguishing_vertex(P5.graph, s.labeling)
