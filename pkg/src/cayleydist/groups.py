"""Finite groups as multiplication tables, their automorphisms and actions.

Elements are integer indices ``0..m-1``. Every preset documents its element
ordering so that Cayley-graph vertex numbers are reproducible:

* ``Z_n``: residue ``k`` is element ``k``.
* direct products ``A x B``: ``(a, b)`` is element ``a * |B| + b``.
* ``S_n``, ``A_n``: permutations of ``{0..n-1}`` in lexicographic order of their
  image arrays; the product is permutation composition, right factor applied
  first.
* ``D_n`` (order ``2n``): ``r^k`` is element ``k``, ``r^k s`` is ``n + k``.
* ``Q_8``: ``1, -1, i, -i, j, -j, k, -k``.
* ``Dic_3`` (order 12): ``a^k x^e`` is element ``k + 6 e``.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .budget import BudgetExceeded
from .perm import Permutation, compose
from .permgroup import PermGroup


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True)
class GroupTable:
    mul: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = ""
    element_names: tuple[str, ...] | None = field(default=None, compare=False)
    inv: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        mul = tuple(tuple(int(x) for x in row) for row in self.mul)
        object.__setattr__(self, "mul", mul)
        m = len(mul)
        if m == 0:
            raise GroupTableError("empty table")
        full = set(range(m))
        for a, row in enumerate(mul):
            if len(row) != m or set(row) != full:
                raise GroupTableError(f"row {a} is not a permutation of the elements")
        for b in range(m):
            if {mul[a][b] for a in range(m)} != full:
                raise GroupTableError(f"column {b} is not a permutation of the elements")
        e = self.identity
        if not 0 <= e < m or any(mul[e][x] != x or mul[x][e] != x for x in range(m)):
            raise GroupTableError(f"element {e} is not a two-sided identity")
        inv = tuple(mul[x].index(e) for x in range(m))
        object.__setattr__(self, "inv", inv)
        if m <= 256:
            M = np.array(mul)
            bad = np.argwhere(M[M] != M[:, M])
            if len(bad):
                raise GroupTableError(f"not associative at {tuple(int(x) for x in bad[0])}")

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def __repr__(self) -> str:
        return f"GroupTable({self.name or '?'}, order={self.order})"

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul[y][x]
            k += 1
        return k

    def element_name(self, x: int) -> str:
        if self.element_names is not None:
            return self.element_names[x]
        return str(x)

    def generated_subgroup(self, elements: Iterable[int]) -> set[int]:
        gens = list(elements)
        seen = {self.identity}
        queue = [self.identity]
        for x in queue:
            for g in gens:
                y = self.mul[g][x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def generates(self, elements: Iterable[int]) -> bool:
        return len(self.generated_subgroup(elements)) == self.order

    def generating_set(self) -> list[int]:
        """Greedy: repeatedly add the highest-order element outside the span."""
        by_order = sorted(range(self.order), key=lambda x: (-self.element_order(x), x))
        gens: list[int] = []
        span = {self.identity}
        while len(span) < self.order:
            g = next(x for x in by_order if x not in span)
            gens.append(g)
            span = self.generated_subgroup(gens)
        return gens

    def is_abelian(self) -> bool:
        m = self.order
        return all(self.mul[a][b] == self.mul[b][a] for a in range(m) for b in range(a + 1, m))

    def order_profile(self) -> tuple[int, tuple[tuple[int, int], ...]]:
        """Group order plus the multiset of element orders."""
        return self.order, tuple(sorted(Counter(self.element_order(x) for x in range(self.order)).items()))

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "identity": self.identity, "table": [list(r) for r in self.mul]}

    @classmethod
    def from_json(cls, doc: dict) -> GroupTable:
        table = doc["table"]
        if "order" in doc and len(table) != doc["order"]:
            raise GroupTableError(f"order {doc['order']} does not match table size {len(table)}")
        return cls(tuple(map(tuple, table)), int(doc.get("identity", 0)), doc.get("name", ""))


def save_group(H: GroupTable, path: str | Path) -> None:
    Path(path).write_text(json.dumps(H.to_json()) + "\n")


def load_group(path: str | Path) -> GroupTable:
    return GroupTable.from_json(json.loads(Path(path).read_text()))


def from_function(elements: Sequence, op: Callable, identity, name: str = "", names=None) -> GroupTable:
    index = {x: i for i, x in enumerate(elements)}
    mul = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
    return GroupTable(mul, index[identity], name, tuple(names) if names else None)


# ---------------------------------------------------------------- presets

def cyclic(n: int) -> GroupTable:
    return from_function(list(range(n)), lambda a, b: (a + b) % n, 0, f"Z{n}")


def direct_product(A: GroupTable, B: GroupTable, name: str | None = None) -> GroupTable:
    m = B.order
    elems = [(a, b) for a in range(A.order) for b in range(m)]
    return from_function(
        elems,
        lambda x, y: (A.mul[x[0]][y[0]], B.mul[x[1]][y[1]]),
        (A.identity, B.identity),
        name or f"{A.name}x{B.name}",
    )


def elementary_abelian(p: int, k: int) -> GroupTable:
    H = cyclic(p)
    for _ in range(k - 1):
        H = direct_product(H, cyclic(p))
    return GroupTable(H.mul, H.identity, f"Z{p}^{k}")


def symmetric(n: int) -> GroupTable:
    perms = list(itertools.permutations(range(n)))
    return from_function(
        perms,
        lambda p, q: tuple(p[x] for x in q),
        tuple(range(n)),
        f"S{n}",
        [str(Permutation(p)) for p in perms],
    )


def alternating(n: int) -> GroupTable:
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return from_function(
        perms, lambda p, q: tuple(p[x] for x in q), tuple(range(n)), f"A{n}", [str(Permutation(p)) for p in perms]
    )


def _parity(p) -> int:
    return sum(len(c) - 1 for c in Permutation(tuple(p)).cycles()) % 2


def dihedral(n: int) -> GroupTable:
    """Symmetries of the n-gon, order 2n."""
    elems = [(k, 0) for k in range(n)] + [(k, 1) for k in range(n)]

    def op(x, y):
        (a, e), (b, f) = x, y
        return ((a + (-b if e else b)) % n, (e + f) % 2)

    names = [f"r{k}" for k in range(n)] + [f"r{k}s" for k in range(n)]
    return from_function(elems, op, (0, 0), f"D{n}", names)


def quaternion() -> GroupTable:
    # unit quaternions as (sign, axis) with axis in 1,i,j,k
    basis = {("1", "1"): (1, "1")}
    for a in "ijk":
        basis[("1", a)] = (1, a)
        basis[(a, "1")] = (1, a)
        basis[(a, a)] = (-1, "1")
    for a, b, c in (("i", "j", "k"), ("j", "k", "i"), ("k", "i", "j")):
        basis[(a, b)] = (1, c)
        basis[(b, a)] = (-1, c)
    elems = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]

    def op(x, y):
        s, c = basis[(x[1], y[1])]
        return (x[0] * y[0] * s, c)

    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return from_function(elems, op, (1, "1"), "Q8", names)


def dicyclic3() -> GroupTable:
    """<a, x | a^6 = 1, x^2 = a^3, x a x^-1 = a^-1>, order 12."""
    elems = [(k, 0) for k in range(6)] + [(k, 1) for k in range(6)]

    def op(u, v):
        (k, e), (m, f) = u, v
        if e == 0:
            return ((k + m) % 6, f)
        if f == 0:
            return ((k - m) % 6, 1)
        return ((k - m + 3) % 6, 0)

    return from_function(elems, op, (0, 0), "Dic3")


def from_permutations(generators: Sequence[Permutation], name: str = "") -> GroupTable:
    """The group generated by ``generators``, elements sorted by image tuple."""
    from .permgroup import closure

    elems = [p.images for p in closure(generators)]
    return from_function(elems, lambda p, q: tuple(p[x] for x in q), tuple(range(len(elems[0]))), name)


_SMALL = [
    ("Z1", lambda: cyclic(1)),
    ("Z2", lambda: cyclic(2)),
    ("Z3", lambda: cyclic(3)),
    ("Z4", lambda: cyclic(4)),
    ("Z2^2", lambda: elementary_abelian(2, 2)),
    ("Z5", lambda: cyclic(5)),
    ("Z6", lambda: cyclic(6)),
    ("S3", lambda: symmetric(3)),
    ("Z7", lambda: cyclic(7)),
    ("Z8", lambda: cyclic(8)),
    ("Z4xZ2", lambda: direct_product(cyclic(4), cyclic(2))),
    ("Z2^3", lambda: elementary_abelian(2, 3)),
    ("D4", lambda: dihedral(4)),
    ("Q8", quaternion),
    ("Z9", lambda: cyclic(9)),
    ("Z3^2", lambda: elementary_abelian(3, 2)),
    ("Z10", lambda: cyclic(10)),
    ("D5", lambda: dihedral(5)),
    ("Z11", lambda: cyclic(11)),
    ("Z12", lambda: cyclic(12)),
    ("Z6xZ2", lambda: direct_product(cyclic(6), cyclic(2))),
    ("A4", lambda: alternating(4)),
    ("D6", lambda: dihedral(6)),
    ("Dic3", dicyclic3),
]


def small_groups(max_order: int = 12) -> list[GroupTable]:
    """One representative of every isomorphism class of order <= 12."""
    if max_order > 12:
        raise ValueError("the preset library is complete only up to order 12")
    out = []
    for name, make in _SMALL:
        H = make()
        if H.order <= max_order:
            out.append(GroupTable(H.mul, H.identity, name, H.element_names))
    return out


def preset(name: str) -> GroupTable:
    """Look up a preset by name: ``Z7``, ``Z2^3``, ``Z4xZ2``, ``S4``, ``A4``,
    ``D5``, ``Q8``, ``Dic3``."""
    key = name.strip().replace(" ", "")
    for nm, make in _SMALL:
        if nm.lower() == key.lower():
            H = make()
            return GroupTable(H.mul, H.identity, nm, H.element_names)
    m = re.fullmatch(r"[ZC](\d+)", key, re.I)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"[ZC](\d+)\^(\d+)", key, re.I)
    if m:
        return elementary_abelian(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"[ZC](\d+)x[ZC](\d+)", key, re.I)
    if m:
        return direct_product(cyclic(int(m.group(1))), cyclic(int(m.group(2))))
    m = re.fullmatch(r"S(\d+)", key, re.I)
    if m and int(m.group(1)) <= 5:
        return symmetric(int(m.group(1)))
    m = re.fullmatch(r"A(\d+)", key, re.I)
    if m and int(m.group(1)) <= 5:
        return alternating(int(m.group(1)))
    m = re.fullmatch(r"D(\d+)", key, re.I)
    if m:
        return dihedral(int(m.group(1)))
    raise KeyError(f"unknown group preset {name!r}")


PRESET_NAMES = [nm for nm, _ in _SMALL] + ["Z2^4", "S4", "S5"]


# ------------------------------------------------------- group automorphisms

class GroupCapExceeded(BudgetExceeded):
    def __init__(self, order: int, cap: int):
        super().__init__("group-automorphism", cap)
        self.order = order


@dataclass(frozen=True)
class GroupAutomorphism:
    table: GroupTable = field(repr=False)
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __mul__(self, other: GroupAutomorphism) -> GroupAutomorphism:
        return GroupAutomorphism(self.table, tuple(self.map[x] for x in other.map))

    def inverse(self) -> GroupAutomorphism:
        inv = [0] * len(self.map)
        for i, x in enumerate(self.map):
            inv[x] = i
        return GroupAutomorphism(self.table, tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.map))

    def as_permutation(self) -> Permutation:
        return Permutation(self.map)

    def is_homomorphism(self) -> bool:
        mul, f = self.table.mul, self.map
        m = len(f)
        return all(f[mul[x][y]] == mul[f[x]][f[y]] for x in range(m) for y in range(m))


def group_automorphisms(H: GroupTable, cap: int = 64) -> list[GroupAutomorphism]:
    """All automorphisms of ``H``.

    Backtracks over images of a generating set (same element order only),
    extending each partial assignment over the subgroup it generates and
    rejecting conflicts early. Raises ``GroupCapExceeded`` above ``cap``.
    """
    m = H.order
    if m > cap:
        raise GroupCapExceeded(m, cap)
    mul, e = H.mul, H.identity
    gens = H.generating_set()
    orders = [H.element_order(x) for x in range(m)]
    candidates = [[y for y in range(m) if orders[y] == orders[g]] for g in gens]
    out: list[GroupAutomorphism] = []

    def extend(k: int, images: list[int]) -> dict[int, int] | None:
        # map on <gens[:k]> determined by f(g x) = f(g) f(x)
        f = {e: e}
        used = {e}
        queue = [e]
        for x in queue:
            fx = f[x]
            for g, img in zip(gens[:k], images):
                y, fy = mul[g][x], mul[img][fx]
                if y in f:
                    if f[y] != fy:
                        return None
                else:
                    if fy in used:
                        return None
                    f[y] = fy
                    used.add(fy)
                    queue.append(y)
        return f

    def rec(k: int, images: list[int]):
        if k == len(gens):
            f = extend(k, images)
            if f is not None and len(f) == m:
                out.append(GroupAutomorphism(H, tuple(f[x] for x in range(m))))
            return
        for y in candidates[k]:
            images.append(y)
            if extend(k + 1, images) is not None:
                rec(k + 1, images)
            images.pop()

    rec(0, [])
    out.sort(key=lambda a: a.map)
    return out


def aut_fixing_set(H: GroupTable, S: Iterable[int], cap: int = 64) -> list[GroupAutomorphism]:
    """Automorphisms of ``H`` that map ``S`` onto itself."""
    S = frozenset(S)
    return [a for a in group_automorphisms(H, cap) if frozenset(a.map[s] for s in S) == S]


# --------------------------------------------------- regular representations

def right_translation(H: GroupTable, a: int) -> Permutation:
    """``R(a): x -> x a``."""
    return Permutation(tuple(H.mul[x][a] for x in range(H.order)))


def left_translation(H: GroupTable, b: int) -> Permutation:
    """``L(b): x -> b^-1 x``."""
    if not 0 <= b < H.order:
        raise IndexError(f"element {b} out of range for order {H.order}")
    bi = H.inv[b]
    return Permutation(tuple(H.mul[bi][x] for x in range(H.order)))


def right_regular(H: GroupTable) -> PermGroup:
    gens = [right_translation(H, a) for a in H.generating_set()]
    return PermGroup(H.order, gens)


# ------------------------------------------------------------ group actions

@dataclass(frozen=True)
class GroupAction:
    """A finite group listed element by element, acting on ``{0..size-1}``.

    Elements acting trivially on every point form ``Stab(X)``; the action is
    faithful when that kernel is just the identity.
    """

    elements: tuple[Permutation, ...]
    size: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for g in self.elements:
            if g.degree != self.size:
                raise ValueError(f"element of degree {g.degree} on a set of size {self.size}")

    @property
    def faithful(self) -> bool:
        return sum(1 for g in self.elements if g.is_identity()) <= 1

    def is_closed(self) -> bool:
        imgs = {g.images for g in self.elements}
        return all(compose(g, h).images in imgs for g in self.elements for h in self.elements)

    def orbit(self, x: int) -> list[int]:
        return sorted({g(x) for g in self.elements})

    def orbits(self) -> list[list[int]]:
        out, seen = [], set()
        for x in range(self.size):
            if x not in seen:
                orb = self.orbit(x)
                seen.update(orb)
                out.append(orb)
        return out

    def stabilizer(self, Y: Iterable[int]) -> list[Permutation]:
        """Pointwise stabilizer of ``Y``."""
        Y = list(Y)
        return [g for g in self.elements if all(g(y) == y for y in Y)]


def automorphism_action(autos: Sequence[GroupAutomorphism], points: Sequence[int] | None = None) -> GroupAction:
    """Restrict group automorphisms to an invariant subset ``points`` of the group.

    Point ``i`` of the action is element ``points[i]``.
    """
    if not autos:
        raise ValueError("need at least the identity automorphism")
    if points is None:
        points = list(range(autos[0].table.order))
    index = {x: i for i, x in enumerate(points)}
    elems = []
    for a in autos:
        try:
            elems.append(Permutation(tuple(index[a.map[x]] for x in points)))
        except KeyError as exc:
            raise ValueError("point set is not invariant under the automorphisms") from exc
    return GroupAction(tuple(elems), len(points))


# ------------------------------------------------------ exceptional groups

EXCEPTIONAL = ("Z2^2", "Z2^3", "Z3^2", "Z2^4", "Q8")


def _exceptional_profiles() -> dict[tuple, str]:
    groups = {
        "Z2^2": elementary_abelian(2, 2),
        "Z2^3": elementary_abelian(2, 3),
        "Z3^2": elementary_abelian(3, 2),
        "Z2^4": elementary_abelian(2, 4),
        "Q8": quaternion(),
    }
    return {G.order_profile(): name for name, G in groups.items()}


_EXC_PROFILES: dict[tuple, str] | None = None


def exceptional_name(H: GroupTable) -> str | None:
    """Name of the exceptional group ``H`` is isomorphic to, else ``None``.

    Order plus element-order multiset determines each of the five among
    groups of its order.
    """
    global _EXC_PROFILES
    if _EXC_PROFILES is None:
        _EXC_PROFILES = _exceptional_profiles()
    if H.order not in (4, 8, 9, 16):
        return None
    return _EXC_PROFILES.get(H.order_profile())

