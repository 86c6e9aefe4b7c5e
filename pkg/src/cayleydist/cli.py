"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 budget exceeded, 3 verification failure.
Graph arguments accept a graph name, a graph6 string or a file; with none given
the graph is read from standard input (graph6 or the "n m" edge-list format),
so commands compose, e.g. ``cayleydist decode "D?{" | cayleydist aut``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .budget import Budget, BudgetExceeded
from .corpus import quintic_corpus
from .distinguishing import (
    PreconditionError,
    action_distinguishing_number,
    construct_bubble_sort_labeling,
    construct_grr_edge_labeling,
    construct_normal_cayley_labeling,
    construct_setstab_labeling,
    distinguishing_index,
    distinguishing_number,
    is_distinguishing_edge,
    is_distinguishing_vertex,
)
from .graph6 import Graph6Error, graph6_decode, graph6_encode, read_graph6_lines
from .graphs import (
    CayleyGraph,
    ConnectionSetError,
    Graph,
    bubble_sort_graph,
    cayley_graph,
    from_edge_list,
    load_cayley_spec,
    named_graph,
    pancake_graph,
    to_edge_list,
)
from .groups import (
    PRESET_NAMES,
    GroupCapExceeded,
    aut_fixing_set,
    automorphism_action,
    exceptional_name,
    group_automorphisms,
    load_group,
    preset,
)
from .harness import THEOREM_IDS, Harness, Report, UnknownTheoremError, budget_dict, default_corpus, scan_conjecture
from .symmetry import automorphism_group, is_grr, is_vertex_transitive, orbits

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- input

def _looks_like_edge_list(text: str) -> bool:
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    parts = first.split()
    return len(parts) == 2 and all(p.isdigit() for p in parts)


def parse_graph_text(text: str) -> Graph:
    text = text.strip()
    if not text:
        raise UsageError("no graph given (empty input)")
    if _looks_like_edge_list(text):
        return from_edge_list(text)
    graphs = list(read_graph6_lines(text.splitlines()))
    if len(graphs) != 1:
        raise UsageError(f"expected one graph, got {len(graphs)}")
    return graphs[0]


def read_graph(args) -> Graph:
    spec = getattr(args, "graph", None)
    if spec is None:
        return parse_graph_text(sys.stdin.read())
    path = Path(spec)
    if path.is_file():
        return parse_graph_text(path.read_text())
    try:
        return named_graph(spec)
    except (KeyError, ValueError):
        pass
    try:
        return graph6_decode(spec)
    except Graph6Error as exc:
        raise UsageError(f"{spec!r} is neither a graph name, a file nor valid graph6 ({exc})") from exc


def _parse_elements(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"bad element list {text!r}") from exc


def read_group(args):
    if getattr(args, "group_file", None):
        return load_group(args.group_file)
    if not getattr(args, "group", None):
        raise UsageError("give --group NAME or --group-file PATH")
    try:
        return preset(args.group)
    except KeyError as exc:
        raise UsageError(f"unknown group {args.group!r}; try 'group list'") from exc


def read_cayley(args) -> CayleyGraph:
    if getattr(args, "spec", None):
        return load_cayley_spec(args.spec)
    named = getattr(args, "named", None)
    if named:
        key = named.lower()
        if key[:1] in ("p", "b") and key[1:].isdigit():
            n = int(key[1:])
            return pancake_graph(n) if key[0] == "p" else bubble_sort_graph(n)
        raise UsageError(f"--named takes pN or bN, got {named!r}")
    H = read_group(args)
    if args.connection is None:
        raise UsageError("give --connection with the connection-set element indices")
    return cayley_graph(H, _parse_elements(args.connection))


# --------------------------------------------------------------- output

def emit(args, payload, text: str | None = None) -> None:
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        buf = io.StringIO()
        keys = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        out = buf.getvalue()
    else:
        out = (text if text is not None else json.dumps(payload)) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def make_budget(args) -> Budget:
    return Budget(seconds=args.budget_seconds)


def _dist_payload(res, kind: str) -> dict:
    d = res.to_json()
    d["kind"] = kind
    return d


def _dist_text(res, name: str) -> str:
    if res.exact:
        return f"{res.value}\nwitness {json.dumps(res.witness.to_json())}"
    if res.status == "undefined":
        return f"undefined ({res.bound_source})"
    return f"{name} in [{res.lo}, {res.hi}] ({res.status}; {res.bound_source})"


# -------------------------------------------------------------- commands

def cmd_group(args) -> int:
    if args.action == "list":
        rows = [{"name": nm, "order": preset(nm).order} for nm in PRESET_NAMES]
        emit(args, rows, "\n".join(f"{r['name']}\t{r['order']}" for r in rows))
        return EXIT_OK
    H = read_group(args)
    autos = group_automorphisms(H, cap=args.cap)
    payload = {
        "name": H.name,
        "order": H.order,
        "identity": H.identity,
        "abelian": H.is_abelian(),
        "element_orders": [H.element_order(x) for x in range(H.order)],
        "generating_set": H.generating_set(),
        "aut_order": len(autos),
        "exceptional": exceptional_name(H),
    }
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    emit(args, payload, text)
    return EXIT_OK


def cmd_cayley(args) -> int:
    C = read_cayley(args)
    G = C.graph
    payload = {
        "name": C.name or C.group.name,
        "n": G.n,
        "m": G.m,
        "degree": len(C.connection.elements),
        "connected": G.is_connected(),
        "graph6": graph6_encode(G),
    }
    if args.edges:
        payload["edges"] = [list(e) for e in G.edges]
    text = to_edge_list(G).rstrip("\n") if args.edges else payload["graph6"]
    emit(args, payload, text)
    return EXIT_OK


def cmd_aut(args) -> int:
    G = read_graph(args)
    budget = make_budget(args)
    aut = automorphism_group(G, budget)
    payload = {
        "n": G.n,
        "order": aut.order(),
        "generators": [str(g) for g in aut.generators],
        "orbits": [[v for v in o] for o in orbits(aut)],
        "vertex_transitive": is_vertex_transitive(G, budget),
    }
    emit(args, payload, str(payload["order"]))
    return EXIT_OK


def cmd_dist(args) -> int:
    G = read_graph(args)
    budget = make_budget(args)
    if args.action == "check":
        labels = json.loads(Path(args.labels).read_text())
        if isinstance(labels, dict):
            labels = labels.get("witness") or labels.get("labels")
        edge = args.edge or len(labels) != G.n
        ok = is_distinguishing_edge(G, labels, budget) if edge else is_distinguishing_vertex(G, labels, budget)
        emit(args, {"kind": "edge" if edge else "vertex", "distinguishing": ok}, "true" if ok else "false")
        return EXIT_OK if ok else EXIT_VERIFY
    if args.action == "number":
        res, name = distinguishing_number(G, budget), "D"
    else:
        res, name = distinguishing_index(G, budget), "D'"
    emit(args, _dist_payload(res, name), _dist_text(res, name))
    if res.status in ("bounded", "budget-exceeded"):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_action_dist(args) -> int:
    H = read_group(args)
    budget = make_budget(args)
    if args.connection is not None:
        S = sorted(set(_parse_elements(args.connection)))
        autos = aut_fixing_set(H, S, cap=args.cap)
        action = automorphism_action(autos, S)
        what = "Aut(H,S) on S"
    else:
        autos = group_automorphisms(H, cap=args.cap)
        action = automorphism_action(autos)
        what = "Aut(H) on H"
    res = action_distinguishing_number(action, budget)
    payload = _dist_payload(res, what)
    payload["group_order"] = len(autos)
    emit(args, payload, _dist_text(res, what))
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_construct(args) -> int:
    budget = make_budget(args)
    if args.kind == "bubble":
        if args.n is None:
            raise UsageError("construct bubble needs --n")
        G = bubble_sort_graph(args.n).graph
        lab = construct_bubble_sort_labeling(args.n)
        ok = is_distinguishing_vertex(G, lab, budget)
        payload = {"construction": "bubble", "labels": lab.to_json(), "label_count": lab.label_count, "distinguishing": ok}
    else:
        C = read_cayley(args)
        if args.kind == "grr":
            lab = construct_grr_edge_labeling(C)
            ok = is_distinguishing_edge(C.graph, lab, budget)
            payload = {"construction": "grr", "edges": [list(e) for e in lab.edges], "labels": lab.to_json(),
                       "is_grr": is_grr(C, budget=budget), "distinguishing": ok}
        elif args.kind == "normal3":
            lab = construct_normal_cayley_labeling(C, budget=budget)
            ok = is_distinguishing_vertex(C.graph, lab, budget)
            payload = {"construction": "normal3", "labels": lab.to_json(), "label_count": lab.label_count, "distinguishing": ok}
        else:
            res = construct_setstab_labeling(C, budget=budget)
            ok = is_distinguishing_vertex(C.graph, res.labeling, budget)
            payload = {"construction": "setstab", "labels": res.rendered(), "t": res.t,
                       "label_count": res.t + 1, "distinguishing": ok}
    emit(args, payload, f"{json.dumps(payload['labels'])}\ndistinguishing: {str(ok).lower()}")
    return EXIT_OK


def _corpus_from_args(args):
    return default_corpus(
        max_order=args.max_order,
        include_quintic=not args.no_quintic,
        include_z2_4=not args.no_z2_4,
        random_count=args.random_graphs,
        seed=args.seed,
    )


def cmd_verify(args) -> int:
    budget = make_budget(args)
    harness = Harness(_corpus_from_args(args), budget, deterministic=args.deterministic)
    if args.id == "all":
        report = harness.verify_all()
    else:
        if args.id not in THEOREM_IDS:
            raise UsageError(f"unknown theorem id {args.id!r}; known: {', '.join(THEOREM_IDS)}")
        if args.instance:
            budget.restart()
            check = harness.verify(args.id, only=args.instance)
            report = Report("verify", [check], budgets=budget_dict(budget), deterministic=args.deterministic)
        else:
            report = harness.verify_all([args.id])
    report.seed = args.seed
    _write_report(args, report)
    if report.failures:
        return EXIT_VERIFY
    if report.skipped and args.strict:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.file:
        graphs = list(read_graph6_lines(Path(args.file).read_text().splitlines()))
    else:
        graphs = quintic_corpus()
    graphs = [G for G in graphs if G.n <= args.max_n]
    report = scan_conjecture(graphs, make_budget(args), deterministic=args.deterministic)
    report.seed = args.seed
    _write_report(args, report)
    return EXIT_BUDGET if report.skipped else EXIT_OK


def _write_report(args, report) -> None:
    out = report.dumps(args.format)
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def cmd_encode(args) -> int:
    G = read_graph(args)
    s = graph6_encode(G)
    emit(args, {"graph6": s, "n": G.n, "m": G.m}, s)
    return EXIT_OK


def cmd_decode(args) -> int:
    text = args.graph6 if args.graph6 is not None else sys.stdin.read().strip()
    G = graph6_decode(text)
    emit(args, {"n": G.n, "m": G.m, "edges": [list(e) for e in G.edges]}, to_edge_list(G).rstrip("\n"))
    return EXIT_OK


# --------------------------------------------------------------- parser

def _common(suppress: bool) -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget-seconds", type=float, default=d(None), help="wall-clock limit for searches")
    p.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=d(True),
                   help="byte-identical reports; wall-clock timings are omitted")
    p.add_argument("--format", choices=("json", "csv", "text"), default=d("text"))
    p.add_argument("--seed", type=int, default=d(0), help="seed for random corpora")
    p.add_argument("--out", default=d(None), help="write output to this path instead of stdout")
    return p


def _add_graph(p):
    p.add_argument("--graph", help="graph name (petersen, K5, C6, K3,3, P5, B4), graph6 string or file; default stdin")


def _add_group(p):
    p.add_argument("--group", help=f"preset group ({', '.join(PRESET_NAMES[:6])}, ...)")
    p.add_argument("--group-file", help="group table JSON file")
    p.add_argument("--cap", type=int, default=64, help="largest group order for automorphism backtracking")


def _add_cayley(p):
    _add_group(p)
    p.add_argument("--connection", help="connection-set element indices, e.g. 1,4")
    p.add_argument("--spec", help="Cayley spec JSON with group and connection")
    p.add_argument("--named", help="pN (pancake) or bN (bubble-sort)")


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = _Parser(
        prog="cayleydist",
        description="Cayley graphs, graph automorphisms and exact distinguishing numbers.",
        epilog="exit codes: 0 ok, 1 usage, 2 budget exceeded, 3 verification failure",
        parents=[_common(suppress=False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("group", parents=[common], help="preset groups")
    p.add_argument("action", choices=("info", "list"))
    _add_group(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("cayley", parents=[common], help="build a Cayley graph")
    p.add_argument("action", choices=("build",))
    _add_cayley(p)
    p.add_argument("--edges", action="store_true", help="print an edge list instead of graph6")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("aut", parents=[common], help="automorphism group of a graph")
    _add_graph(p)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("dist", parents=[common], help="distinguishing number / index, or check a labeling")
    p.add_argument("action", choices=("number", "index", "check"))
    _add_graph(p)
    p.add_argument("--labels", help="labeling JSON to check (list, or a report with 'witness')")
    p.add_argument("--edge", action="store_true", help="treat --labels as an edge labeling")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("action-dist", parents=[common], help="D of Aut(H) on H, or of Aut(H,S) on S")
    _add_group(p)
    p.add_argument("--connection", help="restrict to Aut(H,S) acting on S")
    p.set_defaults(func=cmd_action_dist)

    p = sub.add_parser("construct", parents=[common], help="explicit distinguishing labelings")
    p.add_argument("kind", choices=("bubble", "grr", "normal3", "setstab"))
    p.add_argument("--n", type=int, help="dimension for the bubble-sort labeling")
    _add_cayley(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check one theorem, or all, over the corpus")
    p.add_argument("id", help=f"theorem id or 'all' ({', '.join(THEOREM_IDS)})")
    p.add_argument("--instance", action="append", help="replay only this instance key (repeatable)")
    p.add_argument("--max-order", type=int, default=12, help="largest group order in the Cayley corpus")
    p.add_argument("--no-quintic", action="store_true", help="leave out the degree-5 graphs")
    p.add_argument("--no-z2-4", action="store_true", help="leave Z2^4 out of the group checks")
    p.add_argument("--random-graphs", type=int, default=0, help="add this many seeded random graphs")
    p.add_argument("--strict", action="store_true", help="exit 2 when any instance was skipped")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan-conjecture", parents=[common], help="exact D' over connected 5-regular graphs")
    p.add_argument("--file", help="graph6 file (default: shipped connected 5-regular graphs, n <= 10)")
    p.add_argument("--max-n", type=int, default=10, help="skip graphs with more vertices")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("encode", parents=[common], help="graph to graph6")
    _add_graph(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="graph6 to edge list")
    p.add_argument("graph6", nargs="?", help="graph6 string (default stdin)")
    p.set_defaults(func=cmd_decode)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConnectionSetError, Graph6Error, PreconditionError, UnknownTheoremError, KeyError, ValueError) as exc:
        print(f"cayleydist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, GroupCapExceeded) as exc:
        print(f"cayleydist: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
