"""Simple undirected graphs, Cayley graphs and the named graphs used throughout.

Vertices are ``0..n-1``. Edges are stored as sorted pairs ``(u, v)`` with
``u < v``; the canonical edge order is the sorted list of those pairs.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .budget import BudgetExceeded
from .groups import GroupTable, load_group, preset, symmetric
from .perm import Permutation


class Graph:
    """Immutable simple graph with a dense boolean adjacency matrix."""

    __slots__ = ("n", "edges", "adj", "_nbrs")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for {n} vertices")
            es.add((min(u, v), max(u, v)))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(es))
        adj = np.zeros((n, n), dtype=bool)
        for u, v in self.edges:
            adj[u, v] = adj[v, u] = True
        adj.flags.writeable = False
        self.adj = adj
        self._nbrs = tuple(tuple(int(x) for x in np.flatnonzero(adj[v])) for v in range(n))

    @classmethod
    def from_adjacency(cls, adj) -> Graph:
        adj = np.asarray(adj, dtype=bool)
        if (adj != adj.T).any() or adj.diagonal().any():
            raise ValueError("adjacency must be symmetric with an empty diagonal")
        us, vs = np.nonzero(np.triu(adj, 1))
        return cls(adj.shape[0], zip(us.tolist(), vs.tolist()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self._nbrs]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def regular_degree(self) -> int | None:
        """The common degree if the graph is regular, else ``None``."""
        ds = set(self.degrees())
        return ds.pop() if len(ds) == 1 else (0 if not ds else None)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._nbrs[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def distances_from(self, s: int) -> list[int]:
        dist = [-1] * self.n
        dist[s] = 0
        queue = [s]
        for v in queue:
            for w in self._nbrs[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def girth(self) -> float:
        best = float("inf")
        for s in range(self.n):
            dist, parent = {s: 0}, {s: -1}
            queue = [s]
            for v in queue:
                for w in self._nbrs[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        parent[w] = v
                        queue.append(w)
                    elif parent[v] != w:
                        best = min(best, dist[v] + dist[w] + 1)
        return best

    def is_tree(self) -> bool:
        return self.is_connected() and self.m == self.n - 1

    def complement(self) -> Graph:
        return Graph(self.n, [(u, v) for u, v in itertools.combinations(range(self.n), 2) if not self.adj[u, v]])

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        p = np.asarray(perm)
        return bool((self.adj[np.ix_(p, p)] == self.adj).all())

    def induced_edge_permutation(self, perm: Sequence[int]) -> tuple[int, ...]:
        idx = self.edge_index()
        out = []
        for u, v in self.edges:
            a, b = perm[u], perm[v]
            out.append(idx[(a, b) if a < b else (b, a)])
        return tuple(out)


# ------------------------------------------------------------ edge lists

def to_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with an 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    if len(edges) != m:
        raise ValueError(f"header promises {m} edges, found {len(edges)}")
    return Graph(n, edges)


# ---------------------------------------------------------- named graphs

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    """Kneser graph K(5, 2): 2-subsets of a 5-set, adjacent when disjoint."""
    subsets = list(itertools.combinations(range(5), 2))
    return Graph(10, [(i, j) for (i, a), (j, b) in itertools.combinations(enumerate(subsets), 2) if not set(a) & set(b)])


def rook_3x3() -> Graph:
    """K3 x K3: vertices (i, j), adjacent when they share a coordinate."""
    cells = [(i, j) for i in range(3) for j in range(3)]
    return Graph(9, [(x, y) for (x, a), (y, b) in itertools.combinations(enumerate(cells), 2) if a[0] == b[0] or a[1] == b[1]])


def named_graph(name: str) -> Graph:
    """Parse names like ``K5``, ``K3,3``, ``C6``, ``path4``, ``star3``, ``B4``
    (bubble-sort), ``P5`` (pancake), ``rook3`` and ``petersen``."""
    import re

    key = name.strip().lower().replace(" ", "")
    if key == "petersen":
        return petersen()
    if key in ("rook3", "k3xk3"):
        return rook_3x3()
    if m := re.fullmatch(r"k(\d+),(\d+)", key):
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"k(\d+)", key):
        return complete_graph(int(m.group(1)))
    if m := re.fullmatch(r"c(\d+)", key):
        return cycle(int(m.group(1)))
    if m := re.fullmatch(r"path(\d+)", key):
        return path(int(m.group(1)))
    if m := re.fullmatch(r"star(\d+)", key):
        return star(int(m.group(1)))
    if m := re.fullmatch(r"b(\d+)", key):
        return bubble_sort_graph(int(m.group(1))).graph
    if m := re.fullmatch(r"p(\d+)", key):
        return pancake_graph(int(m.group(1))).graph
    raise KeyError(f"unknown graph name {name!r}")


# ---------------------------------------------------------- Cayley graphs

class ConnectionSetError(ValueError):
    def __init__(self, kind: str, element: int, message: str):
        super().__init__(message)
        self.kind = kind
        self.element = element


@dataclass(frozen=True)
class ConnectionSet:
    group: GroupTable = field(repr=False)
    elements: frozenset[int]

    def sorted(self) -> list[int]:
        return sorted(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))


def validate_connection_set(H: GroupTable, S: Iterable[int]) -> ConnectionSet:
    S = frozenset(int(s) for s in S)
    for s in sorted(S):
        if not 0 <= s < H.order:
            raise ConnectionSetError("out-of-range", s, f"element {s} is not in a group of order {H.order}")
    if H.identity in S:
        raise ConnectionSetError("contains-identity", H.identity, f"connection set contains the identity {H.identity}")
    for s in sorted(S):
        if H.inv[s] not in S:
            raise ConnectionSetError(
                "not-inverse-closed", s, f"connection set is not inverse-closed: inverse {H.inv[s]} of {s} is missing"
            )
    return ConnectionSet(H, S)


@dataclass(frozen=True)
class CayleyGraph:
    """``Cay(H, S)``: vertex ``i`` is group element ``i``; edges ``{h, s h}``."""

    graph: Graph
    group: GroupTable
    connection: ConnectionSet
    name: str = ""

    @property
    def identity_vertex(self) -> int:
        return self.group.identity

    def is_connected(self) -> bool:
        return self.graph.is_connected()


def cayley_graph(H: GroupTable, S: ConnectionSet | Iterable[int], name: str = "") -> CayleyGraph:
    if not isinstance(S, ConnectionSet):
        S = validate_connection_set(H, S)
    elif S.group is not H and S.group != H:
        raise ValueError("connection set belongs to a different group")
    edges = [(h, H.mul[s][h]) for h in range(H.order) for s in S.elements]
    G = Graph(H.order, edges)
    return CayleyGraph(G, H, S, name or f"Cay({H.name},{sorted(S.elements)})")


def prefix_reversal(n: int, j: int) -> Permutation:
    """``r_{1j}``: reverse the first ``j`` of ``n`` points (``j`` is 1-based)."""
    return Permutation(tuple(j - 1 - i if i < j else i for i in range(n)))


def pancake_graph(n: int) -> CayleyGraph:
    if not 2 <= n <= 6:
        raise ValueError("pancake graphs are supported for 2 <= n <= 6")
    H = symmetric(n)
    index = {p: i for i, p in enumerate(itertools.permutations(range(n)))}
    S = [index[prefix_reversal(n, j).images] for j in range(2, n + 1)]
    return cayley_graph(H, S, f"P{n}")


def bubble_sort_graph(n: int) -> CayleyGraph:
    if not 2 <= n <= 6:
        raise ValueError("bubble-sort graphs are supported for 2 <= n <= 6")
    H = symmetric(n)
    index = {p: i for i, p in enumerate(itertools.permutations(range(n)))}
    S = [index[Permutation.from_cycles(n, [(i, i + 1)]).images] for i in range(n - 1)]
    return cayley_graph(H, S, f"B{n}")


def transposition_graph(S: Iterable, n: int) -> Graph:
    """``T(S)`` on ``n`` vertices; each member of ``S`` is a transposition,
    given as a ``Permutation`` or a 1-based pair ``(i, j)``."""
    edges = []
    for t in S:
        if isinstance(t, Permutation):
            cyc = t.cycles()
            if t.degree != n or len(cyc) != 1 or len(cyc[0]) != 2:
                raise ValueError(f"{t} is not a transposition of {n} points")
            edges.append(cyc[0])
        else:
            i, j = t
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"({i} {j}) is not a transposition of {n} points")
            edges.append((i - 1, j - 1))
    return Graph(n, edges)


def load_cayley_spec(path: str | Path) -> CayleyGraph:
    """JSON ``{"group": <preset name or group-table file>, "connection": [...]}``;
    a relative group file resolves against the spec file's directory."""
    path = Path(path)
    doc = json.loads(path.read_text())
    ref = doc["group"]
    if isinstance(ref, dict):
        H = GroupTable.from_json(ref)
    else:
        candidate = path.parent / ref
        H = load_group(candidate) if candidate.exists() else preset(ref)
    return cayley_graph(H, doc["connection"], doc.get("name", ""))


# ------------------------------------------------------- Hamiltonian paths

def hamiltonian_path(G: Graph, max_vertices: int = 24, seconds: float | None = None) -> list[int] | None:
    """An explicit Hamiltonian path, or ``None`` when none exists.

    Exact backtracking on bitmasks, pruned by connectivity of the unvisited
    vertices and by counting vertices that can only be path ends. Raises
    ``BudgetExceeded`` rather than guessing.
    """
    n = G.n
    if n > max_vertices:
        raise BudgetExceeded("hamiltonian-vertex", max_vertices)
    if n == 0:
        return []
    if n == 1:
        return [0]
    if not G.is_connected():
        return None
    nb = [sum(1 << w for w in G.neighbors(v)) for v in range(n)]
    full = (1 << n) - 1
    deadline = None if seconds is None else time.monotonic() + seconds
    counter = [0]

    def reachable(start_mask: int, allowed: int) -> int:
        seen = start_mask
        frontier = start_mask
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= nb[low.bit_length() - 1]
                f ^= low
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def feasible(cur: int, unvisited: int) -> bool:
        if not unvisited:
            return True
        if not nb[cur] & unvisited:
            return False
        if reachable(nb[cur] & unvisited, unvisited) != unvisited:
            return False
        # an unvisited vertex with at most one usable neighbour must be the far end
        ends = 0
        u = unvisited
        while u:
            low = u & -u
            v = low.bit_length() - 1
            usable = nb[v] & (unvisited | (1 << cur))
            if bin(usable).count("1") <= 1:
                ends += 1
                if ends > 1:
                    return False
            u ^= low
        return True

    def extend(cur: int, visited: int, trail: list[int]) -> list[int] | None:
        counter[0] += 1
        if deadline is not None and counter[0] % 4096 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("hamiltonian-time", seconds)
        if visited == full:
            return trail
        unvisited = full & ~visited
        if not feasible(cur, unvisited):
            return None
        cand = nb[cur] & unvisited
        order = []
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            order.append((bin(nb[w] & unvisited).count("1"), w))
            cand ^= low
        for _, w in sorted(order):
            trail.append(w)
            found = extend(w, visited | (1 << w), trail)
            if found is not None:
                return found
            trail.pop()
        return None

    degs = G.degrees()
    starts = sorted(range(n), key=lambda v: (degs[v], v))
    for s in starts:
        found = extend(s, 1 << s, [s])
        if found is not None:
            return list(found)
    return None


def hamiltonian_path_exists(G: Graph, max_vertices: int = 24, seconds: float | None = None) -> bool:
    return hamiltonian_path(G, max_vertices, seconds) is not None
