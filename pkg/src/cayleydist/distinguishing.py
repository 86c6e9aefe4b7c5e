"""Distinguishing labelings: verification, exact D(G), D'(G), D_Gamma(X), and
the explicit labelings from the proofs about Cayley graphs.

The exact search walks labelings in lexicographic order with the first item
forced to label 1 and every new label at most one above the largest used so
far (labelings are only needed up to renaming labels). A pool of known
automorphisms, as permutations of the labeled items, is carried along: an
automorphism dies once some item and its image carry different labels, and a
prefix is cut as soon as a live non-identity automorphism moves only labeled
items, since no completion can break it. When the pool is the whole group a
leaf with no live automorphism is distinguishing; otherwise each leaf is
confirmed by a colored automorphism search and any automorphism found is
added to the pool.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .budget import Budget, BudgetExceeded
from .graphs import CayleyGraph, Graph, bubble_sort_graph
from .groups import GroupAction, aut_fixing_set, automorphism_action, exceptional_name
from .perm import Permutation
from .permgroup import PermGroup
from .symmetry import ColoredGraph, automorphism_group, find_nontrivial_automorphism, is_normal_cayley

POOL_ENTRIES = 4_000_000  # group order x item count held as a dense array
WITNESS_NODES = 1_000_000  # node limit when the space is too big to exhaust


@dataclass(frozen=True)
class VertexLabeling:
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if any(x <= 0 for x in self.labels):
            raise ValueError("labels must be positive integers")

    @property
    def label_count(self) -> int:
        return len(set(self.labels))

    def to_json(self) -> list[int]:
        return list(self.labels)


@dataclass(frozen=True)
class EdgeLabeling:
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if len(self.edges) != len(self.labels):
            raise ValueError("one label per edge")
        if any(x <= 0 for x in self.labels):
            raise ValueError("labels must be positive integers")

    @property
    def label_count(self) -> int:
        return len(set(self.labels))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.edges, self.labels))

    def to_json(self) -> list[int]:
        return list(self.labels)

    @classmethod
    def for_graph(cls, G: Graph, labels: Sequence[int]) -> EdgeLabeling:
        return cls(G.edges, tuple(labels))


@dataclass
class DistResult:
    value: int | None
    lo: int | None
    hi: int | None
    status: str  # exact | bounded | budget-exceeded | undefined
    witness: VertexLabeling | EdgeLabeling | None = None
    bound_source: str = ""
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "lo": self.lo,
            "hi": self.hi,
            "status": self.status,
            "witness": None if self.witness is None else self.witness.to_json(),
            "bound_source": self.bound_source,
        }


# ------------------------------------------------------------ verification

def is_distinguishing_vertex(G: Graph, phi: VertexLabeling | Sequence[int], budget: Budget | None = None) -> bool:
    labels = phi.labels if isinstance(phi, VertexLabeling) else tuple(phi)
    return find_nontrivial_automorphism(ColoredGraph(G, vertex_colors=labels), budget) is None


def is_distinguishing_edge(G: Graph, psi: EdgeLabeling | Sequence[int], budget: Budget | None = None) -> bool:
    if isinstance(psi, EdgeLabeling):
        if tuple(psi.edges) != G.edges:
            d = psi.as_dict()
            labels = tuple(d[e] for e in G.edges)
        else:
            labels = psi.labels
    else:
        labels = tuple(psi)
    if not edge_action_faithful(G):
        return False
    return find_nontrivial_automorphism(ColoredGraph(G, edge_colors=labels), budget) is None


def edge_action_faithful(G: Graph) -> bool:
    """Whether Aut(G) acts faithfully on the edges.

    A non-identity automorphism fixing every edge must swap the ends of a
    K2 component or permute isolated vertices, so faithfulness fails
    exactly when one of those is present.
    """
    isolated = sum(1 for d in G.degrees() if d == 0)
    if isolated >= 2:
        return False
    return not any(G.degree(u) == 1 and G.degree(v) == 1 for u, v in G.edges)


# ------------------------------------------------------------- search core

class _Pool:
    """Automorphisms as item permutations, stored column-major so the images
    of one item under every pool member are contiguous."""

    def __init__(self, n_items: int, perms: Sequence[Sequence[int]] | np.ndarray):
        self.n = n_items
        P = np.asarray(perms, dtype=np.int64).reshape(-1, n_items)
        P = np.unique(P, axis=0) if len(P) else P
        P = P[(P != np.arange(n_items)[None, :]).any(axis=1)]
        inv = np.empty_like(P)
        if len(P):
            np.put_along_axis(inv, P, np.broadcast_to(np.arange(n_items), P.shape), axis=1)
        self.img = np.ascontiguousarray(P.T)
        self.pre = np.ascontiguousarray(inv.T)
        moved = P != np.arange(n_items)[None, :]
        self.last = np.where(moved.any(axis=1), n_items - 1 - np.argmax(moved[:, ::-1], axis=1), -1)

    def __len__(self) -> int:
        return len(self.last)

    def add(self, p: Sequence[int]) -> None:
        p = np.asarray(p, dtype=np.int64)
        inv = np.empty_like(p)
        inv[p] = np.arange(self.n)
        moved = np.flatnonzero(p != np.arange(self.n))
        self.img = np.hstack([self.img, p[:, None]])
        self.pre = np.hstack([self.pre, inv[:, None]])
        self.last = np.append(self.last, moved.max())


def _search(
    n_items: int,
    r: int,
    pool: _Pool,
    confirm: Callable[[np.ndarray], Sequence[int] | None] | None,
    node_limit: float | None,
    budget: Budget | None,
) -> tuple[np.ndarray | None, int]:
    """Lexicographically first distinguishing labeling with labels 0..r-1, or
    ``None`` when the search space is exhausted."""
    labels = np.full(n_items, -1, dtype=np.int64)
    nodes = [0]

    def live_new(start: int, d: int) -> np.ndarray:
        # indices of pool members added since ``start`` that respect labels[:d]
        idx = np.arange(start, len(pool))
        if d == 0:
            return idx
        lab_img = labels[pool.img[:d, start:]]
        ok = ((lab_img == -1) | (lab_img == labels[:d, None])).all(axis=0)
        return idx[ok]

    def rec(d: int, alive: np.ndarray, seen: int, top: int) -> np.ndarray | None:
        nodes[0] += 1
        if node_limit is not None and nodes[0] > node_limit:
            raise BudgetExceeded("search-node", node_limit)
        if budget is not None and nodes[0] % 512 == 0:
            budget.check_time()
        if d == n_items:
            if confirm is None:
                return labels.copy()
            g = confirm(labels)
            if g is None:
                return labels.copy()
            pool.add(g)
            return None
        for c in range(min(r, top + 2)):
            if seen < len(pool):
                alive = np.concatenate([alive, live_new(seen, d)])
                seen = len(pool)
            labels[d] = c
            li = labels[pool.img[d, alive]]
            lp = labels[pool.pre[d, alive]]
            keep = alive[((li == -1) | (li == c)) & ((lp == -1) | (lp == c))]
            if (pool.last[keep] <= d).any():
                continue
            found = rec(d + 1, keep, seen, max(top, c))
            if found is not None:
                return found
        labels[d] = -1
        return None

    found = rec(0, np.arange(len(pool)), len(pool), -1)
    return found, nodes[0]


def _space(n_items: int, r: int) -> float:
    return r ** n_items / math.factorial(r)


def _minimum(
    n_items: int,
    pool: _Pool,
    confirm,
    lo: int,
    hi: int | None,
    budget: Budget | None,
    bound_source: str,
    wrap: Callable[[np.ndarray], VertexLabeling | EdgeLabeling],
) -> DistResult:
    budget = budget or Budget()
    total = 0
    r = lo
    while True:
        exhaustive = _space(n_items, r) <= budget.max_search_space
        try:
            found, nodes = _search(n_items, r, pool, confirm, None if exhaustive else WITNESS_NODES, budget)
        except BudgetExceeded as exc:
            status = "budget-exceeded" if exc.what == "time" else "bounded"
            return DistResult(None, r, hi, status, None, bound_source, total)
        total += nodes
        if found is not None:
            return DistResult(r, r, r, "exact", wrap(found + 1), "", total)
        r += 1


def _group_pool(aut: PermGroup, n_items: int, to_items: Callable[[np.ndarray], np.ndarray]):
    """All group elements when they fit, else strong generators and
    transversal elements (plus a confirming search at the leaves).

    ``to_items`` maps rows of vertex permutations to rows of item permutations.
    """
    order = aut.order()
    if order * max(n_items, 1) <= POOL_ENTRIES:
        return _Pool(n_items, to_items(aut.element_array())), False
    bs = aut.bsgs
    seeds = list(bs.strong)
    for t in bs.trans:
        seeds.extend(t.values())
    V = np.array(seeds, dtype=np.int64).reshape(len(seeds), aut.degree)
    Vinv = np.empty_like(V)
    np.put_along_axis(Vinv, V, np.broadcast_to(np.arange(aut.degree), V.shape), axis=1)
    return _Pool(n_items, to_items(np.vstack([V, Vinv]))), True


def distinguishing_number(G: Graph, budget: Budget | None = None, aut: PermGroup | None = None) -> DistResult:
    """Exact D(G) by ascending search over the number of labels."""
    budget = budget or Budget()
    try:
        aut = aut or automorphism_group(G, budget)
    except BudgetExceeded:
        return _vertex_fallback(G, "budget-exceeded")
    n = G.n
    if aut.is_trivial():
        return DistResult(1, 1, 1, "exact", VertexLabeling((1,) * n))
    pool, partial = _group_pool(aut, n, lambda A: A)

    def confirm(labels):
        g = find_nontrivial_automorphism(ColoredGraph(G, vertex_colors=tuple(labels.tolist())), budget)
        return None if g is None else g.images

    hi, src = _vertex_upper(G)
    return _minimum(n, pool, confirm if partial else None, 2, hi, budget, src, lambda a: VertexLabeling(a.tolist()))


def _vertex_upper(G: Graph) -> tuple[int, str]:
    if G.is_connected() and G.n > 0:
        return min(G.max_degree() + 1, G.n), "D(G) <= Delta + 1 (connected graphs)"
    return G.n, "D(G) <= |V|"


def _vertex_fallback(G: Graph, status: str) -> DistResult:
    hi, src = _vertex_upper(G)
    return DistResult(None, 1, hi, status, None, src)


def distinguishing_index(G: Graph, budget: Budget | None = None, aut: PermGroup | None = None) -> DistResult:
    """Exact D'(G); ``status == "undefined"`` when no edge labeling can
    distinguish (a K2 component or two isolated vertices)."""
    budget = budget or Budget()
    if not edge_action_faithful(G):
        return DistResult(None, None, None, "undefined", None, "Aut(G) does not act faithfully on E(G)")
    try:
        aut = aut or automorphism_group(G, budget)
    except BudgetExceeded:
        return DistResult(None, 1, None, "budget-exceeded")
    m = G.m
    if aut.is_trivial():
        return DistResult(1, 1, 1, "exact", EdgeLabeling(G.edges, (1,) * m))
    idx = G.edge_index()
    lookup = np.full((G.n, G.n), -1, dtype=np.int64)
    for (u, v), i in idx.items():
        lookup[u, v] = lookup[v, u] = i
    ends = np.array(G.edges, dtype=np.int64).reshape(m, 2)

    def to_edges(A):
        A = np.asarray(A, dtype=np.int64).reshape(-1, G.n)
        return lookup[A[:, ends[:, 0]], A[:, ends[:, 1]]]

    pool, partial = _group_pool(aut, m, to_edges)

    def confirm(labels):
        g = find_nontrivial_automorphism(ColoredGraph(G, edge_colors=tuple((labels + 1).tolist())), budget)
        return None if g is None else to_edges(g.images)[0]

    hi, src = _edge_upper(G)
    return _minimum(m, pool, confirm if partial else None, 2, hi, budget, src, lambda a: EdgeLabeling(G.edges, a.tolist()))


def _edge_upper(G: Graph) -> tuple[int | None, str]:
    delta = G.max_degree()
    if G.is_connected() and delta >= 3 and not G.is_tree():
        return max(delta - 1, 3), "D'(G) <= Delta - 1 unless K4 or K3,3 (then 3)"
    if G.is_connected():
        return max(delta + 1, 3), "D'(G) <= Delta + 1"
    return None, ""


def action_distinguishing_number(A: GroupAction, budget: Budget | None = None) -> DistResult:
    """Least r with an r-labeling of X preserved only by elements fixing X pointwise."""
    pool = _Pool(A.size, [g.images for g in A.elements])
    if len(pool) == 0:
        return DistResult(1, 1, 1, "exact", VertexLabeling((1,) * A.size) if A.size else None)
    return _minimum(A.size, pool, None, 2, A.size, budget, "D <= |X|", lambda a: VertexLabeling(a.tolist()))


# ------------------------------------------------------------ constructions

class PreconditionError(ValueError):
    pass


def construct_bubble_sort_labeling(n: int) -> VertexLabeling:
    """Label ``(1 2), (1 2 3), ..., (1 2 ... n)`` with 1 and every other vertex of ``B_n`` with 2."""
    if not 3 <= n <= 6:
        raise ValueError("supported for 3 <= n <= 6")
    index = {p: i for i, p in enumerate(itertools.permutations(range(n)))}
    ones = {index[Permutation.from_cycles(n, [tuple(range(i))]).images] for i in range(2, n + 1)}
    return VertexLabeling(tuple(1 if v in ones else 2 for v in range(math.factorial(n))))


def construct_grr_edge_labeling(C: CayleyGraph) -> EdgeLabeling:
    """Label 1 on the ``|S|`` edges at the identity vertex, 2 elsewhere."""
    e = C.group.identity
    return EdgeLabeling(C.graph.edges, tuple(1 if e in edge else 2 for edge in C.graph.edges))


def _require_normal(C: CayleyGraph, aut: PermGroup | None, budget: Budget | None):
    if not is_normal_cayley(C, aut, budget):
        raise PreconditionError(f"{C.name} is not a normal Cayley graph")


def construct_normal_cayley_labeling(
    C: CayleyGraph, aut: PermGroup | None = None, budget: Budget | None = None
) -> VertexLabeling:
    """Two labels on H distinguishing under Aut(H, S), then the identity
    vertex relabeled 3."""
    H = C.group
    exc = exceptional_name(H)
    if exc is not None:
        raise PreconditionError(
            f"{H.name or 'H'} is isomorphic to the exceptional group {exc}; "
            "the bound D <= 3 excludes Z2^2, Z2^3, Z3^2, Z2^4 and Q8"
        )
    _require_normal(C, aut, budget)
    autos = aut_fixing_set(H, C.connection.elements, cap=max(64, H.order))
    res = action_distinguishing_number(automorphism_action(autos), budget)
    if not res.exact or res.value > 2:
        raise PreconditionError(f"no 2-labeling of {H.name} is distinguishing under Aut(H, S)")
    labels = list(res.witness.labels)
    labels[H.identity] = 3
    return VertexLabeling(tuple(labels))


@dataclass
class SetStabilizerLabeling:
    labeling: VertexLabeling
    t: int  # D of Aut(H, S) acting on S

    @property
    def extra_label(self) -> int:
        """Internal code of the label carried by H minus S (reported as 0)."""
        return self.t + 1

    def rendered(self) -> list[int]:
        return [0 if x == self.extra_label else x for x in self.labeling.labels]


def construct_setstab_labeling(
    C: CayleyGraph, aut: PermGroup | None = None, budget: Budget | None = None
) -> SetStabilizerLabeling:
    """S labeled distinguishingly under Aut(H, S) with t labels, H minus S with label t+1."""
    _require_normal(C, aut, budget)
    H = C.group
    S = sorted(C.connection.elements)
    autos = aut_fixing_set(H, S, cap=max(64, H.order))
    if S:
        res = action_distinguishing_number(automorphism_action(autos, S), budget)
        t, s_labels = res.value, res.witness.labels
    else:
        t, s_labels = 1, ()
    labels = [t + 1] * H.order
    for s, lab in zip(S, s_labels):
        labels[s] = lab
    return SetStabilizerLabeling(VertexLabeling(tuple(labels)), t)


def bubble_sort_check(n: int, budget: Budget | None = None) -> bool:
    C = bubble_sort_graph(n)
    return is_distinguishing_vertex(C.graph, construct_bubble_sort_labeling(n), budget)


def extend_with_extra_label(phi: VertexLabeling | EdgeLabeling):
    """Monotonicity witness: move one item of a repeated label to a fresh label."""
    labels = list(phi.labels)
    counts = {x: labels.count(x) for x in set(labels)}
    i = next((i for i, x in enumerate(labels) if counts[x] > 1), None)
    if i is None:
        raise ValueError("every item already has its own label")
    labels[i] = max(labels) + 1
    if isinstance(phi, EdgeLabeling):
        return EdgeLabeling(phi.edges, tuple(labels))
    return VertexLabeling(tuple(labels))
