"""Reproducible corpora: Cayley graphs of small groups, named graphs, random
graphs, and connected regular graphs (shipped for degree 5 as graph6)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources
from typing import Iterator

import numpy as np

from .graph6 import graph6_encode, read_graph6_lines
from .graphs import (
    CayleyGraph,
    Graph,
    bubble_sort_graph,
    cayley_graph,
    complete_bipartite,
    complete_graph,
    cycle,
    pancake_graph,
    petersen,
)
from .groups import GroupTable, group_automorphisms, small_groups
from .symmetry import graph_certificate


@dataclass(frozen=True)
class Instance:
    """A named corpus graph; ``cayley`` is set when it was built as Cay(H, S)."""

    key: str
    graph: Graph
    cayley: CayleyGraph | None = None


def inverse_classes(H: GroupTable) -> list[tuple[int, ...]]:
    out, seen = [], set()
    for x in range(H.order):
        if x == H.identity or x in seen:
            continue
        cls = tuple(sorted({x, H.inv[x]}))
        seen.update(cls)
        out.append(cls)
    return out


def connection_set_representatives(H: GroupTable, connected_only: bool = True) -> list[tuple[int, ...]]:
    """Inverse-closed, identity-free subsets of ``H`` up to Aut(H), each
    given by its least image; optionally only generating ones."""
    classes = inverse_classes(H)
    autos = group_automorphisms(H, cap=max(64, H.order))
    reps = set()
    for mask in range(1, 1 << len(classes)):
        S = tuple(sorted(x for i, c in enumerate(classes) if mask >> i & 1 for x in c))
        if connected_only and not H.generates(S):
            continue
        canon = min(tuple(sorted(a.map[s] for s in S)) for a in autos)
        reps.add(canon)
    return sorted(reps, key=lambda S: (len(S), S))


def cayley_corpus(max_order: int = 12, connected_only: bool = True) -> list[Instance]:
    out = []
    for H in small_groups(max_order):
        if H.order < 2:
            continue
        for S in connection_set_representatives(H, connected_only):
            key = f"Cay({H.name},{{{','.join(map(str, S))}}})"
            C = cayley_graph(H, S, key)
            out.append(Instance(key, C.graph, C))
    return out


def named_corpus() -> list[Instance]:
    out = [Instance(f"C{n}", cycle(n)) for n in range(3, 13)]
    out += [Instance(f"K{n}", complete_graph(n)) for n in range(2, 7)]
    out += [Instance(f"K{a},{b}", complete_bipartite(a, b)) for a, b in ((2, 2), (2, 3), (3, 3))]
    out.append(Instance("Petersen", petersen()))
    for n in (3, 4):
        C = bubble_sort_graph(n)
        out.append(Instance(f"B{n}", C.graph, C))
    for n in (3, 4, 5):
        C = pancake_graph(n)
        out.append(Instance(f"P{n}", C.graph, C))
    return out


def random_graphs(count: int, max_n: int, seed: int = 0, min_n: int = 2, p: float = 0.5) -> list[Graph]:
    """G(n, p) samples with ``n`` uniform in ``[min_n, max_n]``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        pairs = list(itertools.combinations(range(n), 2))
        keep = rng.random(len(pairs)) < p
        out.append(Graph(n, [e for e, k in zip(pairs, keep) if k]))
    return out


def random_generator_sets(count: int, max_degree: int, seed: int = 0):
    """Random permutation generator lists (degree <= max_degree)."""
    from .perm import Permutation

    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_degree + 1))
        k = int(rng.integers(0, 4))
        out.append((n, [Permutation(tuple(rng.permutation(n).tolist())) for _ in range(k)]))
    return out


# ------------------------------------------------------------ regular graphs

def _circulant_regular(n: int, k: int) -> Graph:
    edges = [(i, (i + d) % n) for i in range(n) for d in range(1, k // 2 + 1)]
    if k % 2:
        edges += [(i, i + n // 2) for i in range(n // 2)]
    return Graph(n, edges)


def _switches(G: Graph) -> Iterator[Graph]:
    adj = G.adj
    for (a, b), (c, d) in itertools.combinations(G.edges, 2):
        if len({a, b, c, d}) < 4:
            continue
        rest = [e for e in G.edges if e != (a, b) and e != (c, d)]
        for x, y, z, w in ((a, c, b, d), (a, d, b, c)):
            if not adj[x, y] and not adj[z, w]:
                yield Graph(G.n, rest + [(x, y), (z, w)])


def regular_graphs(n: int, k: int, connected: bool = True) -> list[Graph]:
    """All k-regular graphs on n vertices up to isomorphism.

    Double-edge switches connect all labeled graphs with a given degree
    sequence, so closing one k-regular graph under switches, with
    isomorphism classes identified by certificate, reaches every class.
    """
    if k >= n or (n * k) % 2:
        return []
    start = _circulant_regular(n, k)
    classes = {graph_certificate(start): start}
    queue = [start]
    for G in queue:
        for H in _switches(G):
            cert = graph_certificate(H)
            if cert not in classes:
                classes[cert] = H
                queue.append(H)
    out = [G for G in classes.values() if G.is_connected() or not connected]
    return sorted(out, key=graph6_encode)


QUINTIC_FILE = "quintic_le10.g6"


def quintic_corpus() -> list[Graph]:
    """All connected 5-regular graphs on at most 10 vertices, from the shipped graph6 file."""
    text = resources.files("cayleydist.data").joinpath(QUINTIC_FILE).read_text()
    return list(read_graph6_lines(text.splitlines()))
