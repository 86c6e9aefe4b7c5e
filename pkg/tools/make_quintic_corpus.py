"""Regenerate src/cayleydist/data/quintic_le10.g6.

Enumerates connected 5-regular graphs on 6, 8 and 10 vertices by switching
closure and writes one graph6 line per graph. Expected counts: 1, 3, 60.
"""

import sys
import time
from pathlib import Path

from cayleydist.corpus import QUINTIC_FILE, regular_graphs
from cayleydist.graph6 import graph6_encode

out = Path(__file__).resolve().parents[1] / "src" / "cayleydist" / "data" / QUINTIC_FILE
lines = []
for n in (6, 8, 10):
    t = time.time()
    graphs = regular_graphs(n, 5)
    print(f"n={n}: {len(graphs)} graphs in {time.time() - t:.1f}s", file=sys.stderr)
    lines += [graph6_encode(G) for G in graphs]
out.write_text("\n".join(lines) + "\n")
print(f"wrote {len(lines)} graphs to {out}", file=sys.stderr)
