"""Brute-force reference computations, independent of the package engines.

Everything here enumerates: all n! vertex permutations, all r^n labelings,
all products of generators. Slow, obviously correct, and only used on tiny
inputs.
"""

from __future__ import annotations

import itertools

import numpy as np


def adjacency(n, edges):
    A = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        A[u, v] = A[v, u] = True
    return A


def all_permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def automorphisms(n, edges, vertex_colors=None, edge_colors=None) -> np.ndarray:
    """Every vertex permutation preserving adjacency (and colors), as rows."""
    A = adjacency(n, edges)
    P = all_permutations(n)
    ok = np.ones(len(P), dtype=bool)
    for i in range(n):
        for j in range(n):
            ok &= A[P[:, i], P[:, j]] == A[i, j]
    if vertex_colors is not None:
        c = np.asarray(vertex_colors)
        ok &= (c[P] == c[None, :]).all(axis=1)
    if edge_colors is not None:
        W = np.zeros((n, n), dtype=np.int64)
        for (u, v), col in zip(edges, edge_colors):
            W[u, v] = W[v, u] = col
        for i in range(n):
            for j in range(n):
                ok &= W[P[:, i], P[:, j]] == W[i, j]
    return P[ok]


def edge_permutations(edges, vertex_perms) -> np.ndarray:
    index = {frozenset(e): k for k, e in enumerate(edges)}
    rows = [[index[frozenset((p[u], p[v]))] for u, v in edges] for p in vertex_perms]
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(edges))


def _nontrivial(perms: np.ndarray) -> np.ndarray:
    if len(perms) == 0:
        return perms
    return perms[(perms != np.arange(perms.shape[1])[None, :]).any(axis=1)]


def _labelings(n_items: int, r: int, chunk: int = 1 << 16):
    """All r-labelings of the items in base-r order, in blocks of rows."""
    total = r ** n_items
    powers = r ** np.arange(n_items - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield ((codes[:, None] // powers[None, :]) % r).astype(np.int8)


def min_distinguishing(n_items: int, perms: np.ndarray) -> int | None:
    """Least r such that some r-labeling of the items is fixed by no
    non-identity permutation in ``perms``; ``None`` if no r works."""
    perms = _nontrivial(np.asarray(perms))
    if len(perms) == 0:
        return 1
    if n_items == 0:
        return None
    for r in range(2, n_items + 1):
        for L in _labelings(n_items, r):
            alive = np.ones(len(L), dtype=bool)
            for p in perms:
                alive &= ~(L[:, p] == L).all(axis=1)
                if not alive.any():
                    break
            if alive.any():
                return r
    return None


def distinguishing_number(n, edges) -> int:
    return min_distinguishing(n, automorphisms(n, edges))


def distinguishing_index(n, edges) -> int | None:
    """``None`` when some non-identity automorphism fixes every edge."""
    V = automorphisms(n, edges)
    E = edge_permutations(edges, V)
    moved = (V != np.arange(n)[None, :]).any(axis=1)
    still = (E == np.arange(len(edges))[None, :]).all(axis=1)
    if (moved & still).any():
        return None
    return min_distinguishing(len(edges), E)


def preserves(perms, labels) -> list:
    """Non-identity members of ``perms`` fixing the labeling."""
    lab = np.asarray(labels)
    return [p for p in _nontrivial(np.asarray(perms)) if (lab[p] == lab).all()]


def closure(generators, degree) -> set[tuple[int, ...]]:
    """All products of the generators, by breadth-first multiplication."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = tuple(g[s[i]] for i in range(degree))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def group_automorphisms(mul) -> list[tuple[int, ...]]:
    """Every bijection of the element indices respecting the table."""
    mul = np.asarray(mul)
    m = len(mul)
    e = next(x for x in range(m) if (mul[x] == np.arange(m)).all())
    rest = [x for x in range(m) if x != e]
    out = []
    for images in itertools.permutations(rest):
        f = np.empty(m, dtype=np.int64)
        f[e] = e
        f[rest] = images
        if (f[mul] == mul[f][:, f]).all():
            out.append(tuple(f.tolist()))
    return out


def block_systems(generators, degree) -> list[list[frozenset]]:
    """All partitions of the points into blocks preserved by the generators."""

    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [part[i] | {first}] + part[i + 1:]
            yield part + [frozenset({first})]

    out = []
    for part in partitions(list(range(degree))):
        blocks = set(part)
        if all(frozenset(g[x] for x in b) in blocks for g in generators for b in part):
            out.append(part)
    return out


def has_hamiltonian_path(n, edges) -> bool:
    A = adjacency(n, edges)
    return any(all(A[p[i], p[i + 1]] for i in range(n - 1)) for p in itertools.permutations(range(n)))
