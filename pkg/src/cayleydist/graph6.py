"""graph6 encoding (the format used by nauty's geng/showg).

Layout: ``N(n)`` then the upper triangle of the adjacency matrix read column
by column (``x(0,1), x(0,2), x(1,2), x(0,3), ...``), packed six bits per byte
with 63 added to each byte.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .graphs import Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    def __init__(self, offset: int, message: str):
        super().__init__(f"byte {offset}: {message}")
        self.offset = offset


def _encode_order(n: int) -> str:
    if n < 0 or n > 68719476735:
        raise ValueError(f"order {n} not representable in graph6")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def graph6_encode(G: Graph) -> str:
    bits = []
    for j in range(1, G.n):
        for i in range(j):
            bits.append(1 if G.adj[i, j] else 0)
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6))
    return _encode_order(G.n) + body


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error(base, "empty input")
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(base + k, f"character {ch!r} outside the graph6 range 63..126")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise Graph6Error(base + len(vals), "truncated 4-byte order")
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    else:
        if len(vals) < 8:
            raise Graph6Error(base + len(vals), "truncated 8-byte order")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        raise Graph6Error(base + pos + min(len(body), need), f"expected {need} data bytes for {n} vertices, got {len(body)}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error(base + len(vals) - 1, "non-zero padding bits")
    return Graph(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield graph6_decode(line)
