"""Permutations on {0..n-1}.

Composition convention, used everywhere in the package: ``p * q`` (and
``compose(p, q)``) applies ``q`` first, then ``p``, so
``(p * q)(i) == p(q(i))``.

Text form is disjoint-cycle notation on 1-based points, e.g. ``"(1 2)(3 4 5)"``,
with ``"()"`` for the identity.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from 0-based cycles."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < n or a in seen:
                    raise ValueError(f"bad cycle {cyc!r} for degree {n}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Permutation:
        """Parse 1-based cycle notation; degree defaults to the largest point."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s*[ ,]\s*\d+)*)?\s*\)\s*)+", text):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(x) - 1 for x in re.split(r"[\s,]+", body.strip()) if x]
            if pts:
                cycles.append(pts)
        top = max((max(c) + 1 for c in cycles), default=0)
        if n is None:
            n = max(top, 1)
        elif top > n:
            raise ValueError(f"point {top} exceeds degree {n}")
        return cls.from_cycles(n, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q``: apply ``q`` first, then ``p``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    pi = p.images
    return Permutation(tuple(pi[x] for x in q.images))


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def transposition(n: int, i: int, j: int) -> Permutation:
    return Permutation.from_cycles(n, [(i, j)])
