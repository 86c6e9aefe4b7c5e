"""Permutation groups given by generators, with a deterministic Schreier-Sims.

Internally permutations are plain tuples (``p[i]`` is the image of ``i``) and
products follow the package convention: ``_mul(p, q)`` applies ``q`` first.
"""

from __future__ import annotations

import threading
from typing import Iterator, Sequence

import numpy as np

from .perm import Permutation

Tup = tuple[int, ...]


def _mul(p: Tup, q: Tup) -> Tup:
    return tuple(p[x] for x in q)


def _inv(p: Tup) -> Tup:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _is_id(p: Tup) -> bool:
    return all(i == x for i, x in enumerate(p))


def _first_moved(p: Tup) -> int:
    for i, x in enumerate(p):
        if i != x:
            return i
    raise ValueError("identity moves no point")


class _BSGS:
    """Base, strong generators and one transversal per base point.

    ``trans[i][beta]`` is a group element sending ``base[i]`` to ``beta`` and
    fixing ``base[:i]`` pointwise.
    """

    def __init__(self, n: int, gens: Sequence[Tup], base_prefix: Sequence[int] = ()):
        self.n = n
        self.identity = tuple(range(n))
        strong: list[Tup] = []
        for g in gens:
            if not _is_id(g) and g not in strong:
                strong.append(g)
        base = list(base_prefix)
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(_first_moved(g))
        self.base = base
        self.strong = strong
        self.trans: list[dict[int, Tup]] = [self._transversal(i) for i in range(len(base))]
        self._complete()

    def level_gens(self, i: int) -> list[Tup]:
        fixed = self.base[:i]
        return [g for g in self.strong if all(g[b] == b for b in fixed)]

    def _transversal(self, i: int) -> dict[int, Tup]:
        b = self.base[i]
        gens = self.level_gens(i)
        trans = {b: self.identity}
        queue = [b]
        for p in queue:
            u = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    trans[q] = _mul(s, u)
                    queue.append(q)
        return trans

    def sift(self, h: Tup, start: int = 0) -> tuple[Tup, int]:
        for level in range(start, len(self.base)):
            beta = h[self.base[level]]
            u = self.trans[level].get(beta)
            if u is None:
                return h, level
            h = _mul(_inv(u), h)
        return h, len(self.base)

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            restarted = False
            gens = self.level_gens(i)
            trans = self.trans[i]
            for beta in list(trans):
                u_beta = trans[beta]
                for s in gens:
                    h = _mul(_inv(trans[s[beta]]), _mul(s, u_beta))
                    if _is_id(h):
                        continue
                    residue, j = self.sift(h, i + 1)
                    if _is_id(residue):
                        continue
                    if j == len(self.base):
                        self.base.append(_first_moved(residue))
                        self.trans.append({})
                    self.strong.append(residue)
                    for level in range(i + 1, j + 1):
                        self.trans[level] = self._transversal(level)
                    i = j
                    restarted = True
                    break
                if restarted:
                    break
            if not restarted:
                i -= 1

    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def elements(self) -> Iterator[Tup]:
        def rec(level: int, acc: Tup):
            if level == len(self.trans):
                yield acc
                return
            for beta in sorted(self.trans[level]):
                yield from rec(level + 1, _mul(acc, self.trans[level][beta]))

        yield from rec(0, self.identity)

    def element_array(self) -> np.ndarray:
        """All elements as rows, in the same order as :meth:`elements`."""
        A = np.arange(self.n, dtype=np.int64)[None, :]
        for t in self.trans:
            T = np.array([t[b] for b in sorted(t)], dtype=np.int64).reshape(len(t), self.n)
            A = A[:, T].reshape(-1, self.n)
        return A


class PermGroup:
    """A permutation group on ``degree`` points.

    The base and strong generating set are built lazily on first use; the
    construction is guarded so concurrent readers always see a finished one.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation] = (), base: Sequence[int] = ()):
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
        self.degree = degree
        self.generators = list(generators)
        self._base_prefix = tuple(base)
        self._bsgs: _BSGS | None = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    @property
    def bsgs(self) -> _BSGS:
        if self._bsgs is None:
            with self._lock:
                if self._bsgs is None:
                    self._bsgs = _BSGS(self.degree, [g.images for g in self.generators], self._base_prefix)
        return self._bsgs

    @property
    def base(self) -> list[int]:
        return list(self.bsgs.base)

    @property
    def strong_generators(self) -> list[Permutation]:
        return [Permutation(g) for g in self.bsgs.strong]

    def order(self) -> int:
        return self.bsgs.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        residue, level = self.bsgs.sift(p.images)
        return level == len(self.bsgs.base) and _is_id(residue)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return not self.bsgs.strong

    def elements(self, limit: int | None = None) -> list[Permutation]:
        """All elements, in a fixed order; refuses above ``limit``."""
        if limit is not None and self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds enumeration limit {limit}")
        return [Permutation(t) for t in self.bsgs.elements()]

    def element_tuples(self) -> Iterator[Tup]:
        return self.bsgs.elements()

    def element_array(self) -> np.ndarray:
        return self.bsgs.element_array()

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        for p in queue:
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        out = []
        seen: set[int] = set()
        for p in range(self.degree):
            if p not in seen:
                orb = self.orbit(p)
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def stabilizer(self, point: int) -> PermGroup:
        """Point stabilizer, read off a BSGS whose base starts at ``point``."""
        chain = _BSGS(self.degree, [g.images for g in self.generators], (point,))
        gens = [Permutation(g) for g in chain.level_gens(1)]
        return PermGroup(self.degree, gens)


def closure(generators: Sequence[Permutation], degree: int | None = None) -> list[Permutation]:
    """Brute-force closure under composition; the oracle for Schreier-Sims."""
    if degree is None:
        if not generators:
            raise ValueError("degree needed for an empty generator list")
        degree = generators[0].degree
    ident = tuple(range(degree))
    gens = [g.images for g in generators]
    seen = {ident}
    queue = [ident]
    for p in queue:
        for g in gens:
            q = _mul(g, p)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return [Permutation(t) for t in sorted(seen)]


def schreier_sims(generators: Sequence[Permutation], degree: int | None = None) -> PermGroup:
    if degree is None:
        if not generators:
            raise ValueError("degree needed for an empty generator list")
        degree = generators[0].degree
    group = PermGroup(degree, generators)
    group.bsgs
    return group


class NotASubgroupError(ValueError):
    pass


def is_subgroup_normal(sub: PermGroup, sup: PermGroup) -> bool:
    """True iff every conjugate ``g^-1 h g`` of a generator of ``sub`` by a
    generator of ``sup`` lies in ``sub``."""
    if sub.degree != sup.degree:
        raise ValueError("degree mismatch")
    for h in sub.generators:
        if h not in sup:
            raise NotASubgroupError(f"{h} is not in the supergroup")
    for g in sup.generators:
        gi = g.inverse()
        for h in sub.generators:
            if gi * h * g not in sub:
                return False
    return True
