from collections import Counter

import pytest

from cayleydist.corpus import (
    cayley_corpus,
    connection_set_representatives,
    inverse_classes,
    named_corpus,
    quintic_corpus,
    random_graphs,
    regular_graphs,
)
from cayleydist.graph6 import graph6_encode
from cayleydist.groups import cyclic, preset
from cayleydist.symmetry import graph_certificate


def test_quintic_counts():
    graphs = quintic_corpus()
    assert Counter(G.n for G in graphs) == {6: 1, 8: 3, 10: 60}
    for G in graphs:
        assert set(G.degrees()) == {5} and G.is_connected()
    assert len({graph_certificate(G) for G in graphs}) == 64


@pytest.mark.parametrize("n,k,count", [(4, 3, 1), (6, 3, 2), (8, 3, 5), (10, 3, 19), (8, 4, 6), (7, 4, 2), (6, 5, 1), (8, 5, 3)])
def test_regular_counts(n, k, count):
    assert len(regular_graphs(n, k)) == count


def test_regular_graphs_odd_product_empty():
    assert regular_graphs(7, 3) == []
    assert regular_graphs(4, 4) == []


def test_shipped_file_matches_generator():
    shipped = {graph6_encode(G) for G in quintic_corpus() if G.n <= 8}
    fresh = {graph6_encode(G) for n in (6, 8) for G in regular_graphs(n, 5)}
    assert shipped == fresh


def test_inverse_classes_partition():
    H = preset("D4")
    cls = inverse_classes(H)
    flat = sorted(x for c in cls for x in c)
    assert flat == [x for x in range(8) if x != H.identity]


def test_connection_sets_cyclic():
    # Z5 up to automorphism: {1,4} and {1,2,3,4}
    assert connection_set_representatives(cyclic(5)) == [(1, 4), (1, 2, 3, 4)]


def test_cayley_corpus():
    inst = cayley_corpus(12)
    assert len({i.key for i in inst}) == len(inst)
    for i in inst:
        assert i.graph.is_connected()
        assert i.graph.n == i.cayley.group.order
    assert {i.cayley.group.name for i in inst} >= {"Z2", "Z2^2", "S3", "Q8", "A4", "D6", "Dic3"}


def test_named_corpus_keys():
    keys = [i.key for i in named_corpus()]
    assert "Petersen" in keys and "B4" in keys and "P5" in keys
    assert len(keys) == len(set(keys))


def test_random_graphs_reproducible():
    a = [G.edges for G in random_graphs(5, 8, seed=3)]
    b = [G.edges for G in random_graphs(5, 8, seed=3)]
    assert a == b
