"""Automorphism groups of vertex- and edge-colored graphs, orbits, primitivity,
and the Cayley-graph predicates (normality, graphical regular representation).

The search is the usual individualization-refinement scheme:

* refinement iterates per-color neighbour counts into every cell until the
  ordered partition is equitable; cells are renumbered canonically by
  sorting ``(old cell, count vector)`` so the process commutes with
  isomorphisms;
* the target cell is the first smallest non-singleton cell, and the first
  path individualizes its lowest vertex;
* levels of the first path are processed bottom-up; a vertex of a target
  cell is skipped when known automorphisms fixing the path prefix already
  carry the path vertex to it, otherwise its subtree is searched for a leaf
  equivalent to the first leaf. Subtrees whose refinement trace differs
  from the first path at the same depth are cut.

The generators found generate the full color-preserving automorphism group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .budget import Budget, BudgetExceeded
from .graphs import CayleyGraph, Graph, bubble_sort_graph, path, transposition_graph
from .groups import GroupTable, left_translation, right_regular, right_translation
from .perm import Permutation
from .permgroup import PermGroup, is_subgroup_normal


@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    vertex_colors: tuple[int, ...] | None = None
    edge_colors: tuple[int, ...] | None = None  # aligned with graph.edges

    def __post_init__(self):
        if self.vertex_colors is not None:
            vc = tuple(int(c) for c in self.vertex_colors)
            if len(vc) != self.graph.n:
                raise ValueError(f"{len(vc)} vertex colors for {self.graph.n} vertices")
            object.__setattr__(self, "vertex_colors", vc)
        if self.edge_colors is not None:
            ec = self.edge_colors
            if isinstance(ec, Mapping):
                ec = [ec[e] for e in self.graph.edges]
            ec = tuple(int(c) for c in ec)
            if len(ec) != self.graph.m:
                raise ValueError(f"{len(ec)} edge colors for {self.graph.m} edges")
            if any(c <= 0 for c in ec):
                raise ValueError("edge colors must be positive")
            object.__setattr__(self, "edge_colors", ec)

    def weight_matrix(self) -> np.ndarray:
        """0 for non-edges, the edge color (1 when uncolored) for edges."""
        G = self.graph
        W = np.zeros((G.n, G.n), dtype=np.int64)
        colors = self.edge_colors or (1,) * G.m
        for (u, v), c in zip(G.edges, colors):
            W[u, v] = W[v, u] = c
        return W


def as_colored(G: Graph | ColoredGraph) -> ColoredGraph:
    return G if isinstance(G, ColoredGraph) else ColoredGraph(G)


class _Refiner:
    def __init__(self, cg: ColoredGraph):
        self.n = cg.graph.n
        W = cg.weight_matrix()
        self.W = W
        colors = sorted(set(W[W > 0].tolist()))
        self.layers = [(W == c).astype(np.float64) for c in colors]
        vc = np.array(cg.vertex_colors if cg.vertex_colors is not None else [0] * self.n)
        _, self.initial = np.unique(vc, return_inverse=True)

    def refine(self, col: np.ndarray) -> tuple[np.ndarray, bytes]:
        n = self.n
        trace = []
        while True:
            k = int(col.max()) + 1 if n else 0
            onehot = np.zeros((n, k))
            onehot[np.arange(n), col] = 1.0
            parts = [col[:, None].astype(np.int64)]
            parts += [(L @ onehot).astype(np.int64) for L in self.layers]
            rows = np.concatenate(parts, axis=1)
            uniq, new, counts = np.unique(rows, axis=0, return_inverse=True, return_counts=True)
            new = new.reshape(-1)
            trace.append(uniq.tobytes() + counts.tobytes())
            if len(uniq) == k:
                return new, b"|".join(trace)
            col = new

    @staticmethod
    def individualize(col: np.ndarray, v: int) -> np.ndarray:
        key = col * 2 + 1
        key[v] -= 1
        return np.unique(key, return_inverse=True)[1].reshape(-1)

    @staticmethod
    def target_cell(col: np.ndarray) -> list[int] | None:
        counts = np.bincount(col)
        nontrivial = np.flatnonzero(counts > 1)
        if len(nontrivial) == 0:
            return None
        best = nontrivial[np.argmin(counts[nontrivial])]
        return np.flatnonzero(col == best).tolist()


@dataclass
class AutSearchResult:
    generators: list[Permutation]
    orbit_sizes: list[int] = field(default_factory=list)
    first_path: list[int] = field(default_factory=list)
    nodes: int = 0

    def order_from_orbits(self) -> int:
        return math.prod(self.orbit_sizes)


def _search(cg: ColoredGraph, budget: Budget | None, stop_at_first: bool) -> AutSearchResult:
    n = cg.graph.n
    if budget is not None:
        budget.check_vertices(n)
    res = AutSearchResult([])
    if n <= 1:
        return res
    R = _Refiner(cg)
    W = R.W
    col, tr = R.refine(R.initial.copy())
    traces = [tr]
    nodes: list[tuple[np.ndarray, list[int]]] = []
    while (cell := R.target_cell(col)) is not None:
        nodes.append((col, cell))
        col, tr = R.refine(R.individualize(col, cell[0]))
        traces.append(tr)
    leaf0 = np.empty(n, dtype=np.int64)
    leaf0[col] = np.arange(n)  # position -> vertex
    res.first_path = [cell[0] for _, cell in nodes]
    count = [0]

    def leaf_automorphism(col_leaf: np.ndarray) -> Permutation | None:
        lam = np.empty(n, dtype=np.int64)
        lam[col_leaf] = np.arange(n)
        perm = np.empty(n, dtype=np.int64)
        perm[leaf0] = lam
        if (W[np.ix_(perm, perm)] == W).all():
            return Permutation(tuple(perm.tolist()))
        return None

    def explore(col_pre: np.ndarray, depth: int) -> Permutation | None:
        count[0] += 1
        if budget is not None and count[0] % 64 == 0:
            budget.check_time()
        col, tr = R.refine(col_pre)
        if tr != traces[depth]:
            return None
        cell = R.target_cell(col)
        if cell is None:
            return leaf_automorphism(col)
        for u in cell:
            g = explore(R.individualize(col, u), depth + 1)
            if g is not None:
                return g
        return None

    orbit_sizes = []
    for level in reversed(range(len(nodes))):
        col_l, cell = nodes[level]
        prefix = res.first_path[:level]
        v0 = cell[0]

        def stab_orbit():
            gens = [g.images for g in res.generators if all(g.images[p] == p for p in prefix)]
            seen = {v0}
            queue = [v0]
            for x in queue:
                for g in gens:
                    if g[x] not in seen:
                        seen.add(g[x])
                        queue.append(g[x])
            return seen

        orbit = stab_orbit()
        for w in cell[1:]:
            if w in orbit:
                continue
            g = explore(R.individualize(col_l, w), level + 1)
            if g is not None:
                res.generators.append(g)
                if stop_at_first:
                    res.nodes = count[0]
                    return res
                orbit = stab_orbit()
        orbit_sizes.append(len(orbit))
    res.orbit_sizes = orbit_sizes[::-1]
    res.nodes = count[0]
    return res


def automorphism_search(G: Graph | ColoredGraph, budget: Budget | None = None) -> AutSearchResult:
    return _search(as_colored(G), budget, stop_at_first=False)


def automorphism_group(G: Graph | ColoredGraph, budget: Budget | None = None) -> PermGroup:
    """Full color-preserving automorphism group, as a ``PermGroup``."""
    cg = as_colored(G)
    res = _search(cg, budget, stop_at_first=False)
    return PermGroup(cg.graph.n, res.generators)


def find_nontrivial_automorphism(G: Graph | ColoredGraph, budget: Budget | None = None) -> Permutation | None:
    res = _search(as_colored(G), budget, stop_at_first=True)
    return res.generators[0] if res.generators else None


def is_color_preserving_trivial(G: Graph | ColoredGraph, budget: Budget | None = None) -> bool:
    return find_nontrivial_automorphism(G, budget) is None


# ----------------------------------------------------- orbits and blocks

def orbits(P: PermGroup) -> list[list[int]]:
    return P.orbits()


def is_vertex_transitive(G: Graph, budget: Budget | None = None) -> bool:
    return automorphism_group(G, budget).is_transitive()


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def is_trivial(self) -> bool:
        return len(self.blocks) == 1 or self.block_size == 1


def minimal_block_system(P: PermGroup, a: int, b: int) -> BlockSystem:
    """Finest block system of a transitive group with ``a`` and ``b`` in one block."""
    parent = list(range(P.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [g.images for g in P.generators]
    queue = [(a, b)]
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.pop()
        for g in gens:
            rx, ry = find(g[x]), find(g[y])
            if rx != ry:
                parent[ry] = rx
                queue.append((g[x], g[y]))
    classes: dict[int, list[int]] = {}
    for x in range(P.degree):
        classes.setdefault(find(x), []).append(x)
    return BlockSystem(tuple(sorted(tuple(c) for c in classes.values())))


class IntransitiveError(ValueError):
    pass


def is_primitive(P: PermGroup) -> bool:
    """Transitive ``P`` is primitive iff, for every ``b != 0``, the finest
    block system joining ``0`` and ``b`` is the whole set (pairs through a
    fixed point suffice by transitivity)."""
    if not P.is_transitive():
        raise IntransitiveError("primitivity is only defined for transitive groups")
    return all(len(minimal_block_system(P, 0, b).blocks) == 1 for b in range(1, P.degree))


# --------------------------------------------------- Cayley predicates

def contains_right_regular(C: CayleyGraph, aut: PermGroup | None = None) -> bool:
    aut = aut or automorphism_group(C.graph)
    return all(g in aut for g in right_regular(C.group).generators)


def is_normal_cayley(C: CayleyGraph, aut: PermGroup | None = None, budget: Budget | None = None) -> bool:
    aut = aut or automorphism_group(C.graph, budget)
    return is_subgroup_normal(right_regular(C.group), aut)


def is_grr(C: CayleyGraph, aut: PermGroup | None = None, budget: Budget | None = None) -> bool:
    aut = aut or automorphism_group(C.graph, budget)
    if not contains_right_regular(C, aut):
        raise AssertionError("R(H) is not contained in Aut(Cay(H, S))")
    return aut.order() == C.group.order


def reversal_element(H: GroupTable, n: int) -> int:
    """Index in ``S_n`` of the reversal ``(1 n)(2 n-1)...``."""
    target = tuple(range(n - 1, -1, -1))
    return list(itertools.permutations(range(n))).index(target)


@dataclass
class AutBubbleCheck:
    n: int
    aut_order: int
    expected_order: int
    path_aut_order: int
    candidates_distinct: bool
    all_of_form: bool

    @property
    def ok(self) -> bool:
        return self.aut_order == self.expected_order and self.candidates_distinct and self.all_of_form


def verify_autbubb(n: int, budget: Budget | None = None) -> AutBubbleCheck:
    """Check ``Aut(B_n) = {x -> b^-1 x a : a in S_n, b in {id, sigma}}``."""
    if not 3 <= n <= 4:
        raise ValueError("full verification is supported for n = 3, 4")
    C = bubble_sort_graph(n)
    H = C.group
    aut = automorphism_group(C.graph, budget)
    T = transposition_graph([(i, i + 1) for i in range(1, n)], n)
    t_aut = automorphism_group(T).order()
    sigma = reversal_element(H, n)
    cands = set()
    for b in (H.identity, sigma):
        Lb = left_translation(H, b)
        for a in range(H.order):
            cands.add((right_translation(H, a) * Lb).images)
    elements = {g.images for g in aut.elements(limit=10**5)}
    return AutBubbleCheck(
        n=n,
        aut_order=aut.order(),
        expected_order=math.factorial(n) * t_aut,
        path_aut_order=t_aut,
        candidates_distinct=len(cands) == 2 * H.order,
        all_of_form=elements == cands,
    )


# ------------------------------------------------------ isomorphism helper

def graph_certificate(G: Graph, budget: Budget | None = None) -> bytes:
    """Isomorphism certificate: the least (trace, relabeled adjacency) over all
    leaves of the refinement tree, one child per orbit of the stabilizer of
    the individualized prefix. Used to deduplicate generated corpora."""
    n = G.n
    if n == 0:
        return b"empty"
    cg = ColoredGraph(G)
    R = _Refiner(cg)
    aut = automorphism_group(cg, budget)
    adj = G.adj
    best: list[bytes | None] = [None]

    def rec(col_pre: np.ndarray, prefix: list[int], trace: bytes):
        col, tr = R.refine(col_pre)
        trace = trace + b"#" + tr
        cell = R.target_cell(col)
        if cell is None:
            lam = np.empty(n, dtype=np.int64)
            lam[col] = np.arange(n)
            key = trace + b"@" + np.packbits(adj[np.ix_(lam, lam)]).tobytes()
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        if best[0] is not None and trace > best[0][: len(trace)]:
            return
        stab = PermGroup(n, aut.generators, base=prefix).bsgs.level_gens(len(prefix)) if aut.generators else []
        seen: set[int] = set()
        for u in cell:
            if u in seen:
                continue
            orbit = {u}
            queue = [u]
            for x in queue:
                for g in stab:
                    if g[x] not in orbit:
                        orbit.add(g[x])
                        queue.append(g[x])
            seen |= orbit
            rec(R.individualize(col, u), prefix + [u], trace)

    rec(R.initial.copy(), [], b"")
    return best[0]


def is_isomorphic(G1: Graph, G2: Graph) -> bool:
    if G1.n != G2.n or G1.m != G2.m or sorted(G1.degrees()) != sorted(G2.degrees()):
        return False
    return graph_certificate(G1) == graph_certificate(G2)
