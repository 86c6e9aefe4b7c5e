import itertools

import numpy as np
import pytest

from cayleydist.graph6 import Graph6Error, graph6_decode, graph6_encode, read_graph6_lines
from cayleydist.graphs import Graph, empty_graph, petersen


def reference_decode(s):
    """Bit layout written out directly: N(n), then x(i,j) for j = 1.., i < j."""
    n = ord(s[0]) - 63
    bits = "".join(format(ord(c) - 63, "06b") for c in s[1:])
    pairs = [(i, j) for j in range(n) for i in range(j)]
    return n, sorted(p for p, b in zip(pairs, bits) if b == "1")


def test_small_example():
    G = graph6_decode("D?{")
    assert G.n == 5
    assert (G.n, sorted(G.edges)) == reference_decode("D?{")
    assert graph6_encode(G) == "D?{"


def test_single_vertex():
    assert graph6_encode(empty_graph(1)) == "@"
    assert graph6_decode("@").n == 1


def test_round_trip_random():
    rng = np.random.default_rng(5)
    for _ in range(100):
        n = int(rng.integers(0, 21))
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        G = Graph(n, edges)
        s = graph6_encode(G)
        assert graph6_decode(s) == G
        assert graph6_encode(graph6_decode(s)) == s
        if n <= 62:
            assert reference_decode(s) == (n, sorted(G.edges))


def test_large_order_header():
    G = Graph(70, [(0, 69), (5, 6)])
    s = graph6_encode(G)
    assert s.startswith("~")
    assert graph6_decode(s) == G


def test_known_petersen_string():
    # Petersen graph in nauty's standard labeling
    G = graph6_decode("IheA@GUAo")
    assert G.n == 10 and G.m == 15 and set(G.degrees()) == {3}
    assert graph6_decode(graph6_encode(petersen())) == petersen()


def test_malformed_names_offset():
    with pytest.raises(Graph6Error) as e:
        graph6_decode("D?")
    assert e.value.offset >= 1
    with pytest.raises(Graph6Error) as e:
        graph6_decode("D?\x01")
    assert e.value.offset == 2


def test_reader_skips_header_and_blanks():
    lines = [">>graph6<<D?{", "", "@"]
    assert [G.n for G in read_graph6_lines(lines)] == [5, 1]
