"""Command-line front end.

Exit codes: 0 success, 1 theorem violation or integrity failure, 2 usage
or input error (bad graph6, unknown fixture, exceeded budget).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .algebra import adjacency_char_poly
from .errors import (BudgetExceeded, Graph6ParseError, IntegrityError, PreconditionError,
                     TheoremViolation, WalklabError)
from .graphs import Graph, from_graph6, graph_from_json, graph_to_dict, to_graph6
from .walks import closed_triple, closed_walk_counts, default_length, main_polynomial, walk_counts


class UsageError(WalklabError):
    pass


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def load_graph(args, prefix: str = "") -> tuple[Graph, dict[str, int], str]:
    """Graph from --fixture / --graph6 / --graph6-file / --json (or the
    --other-* variants when ``prefix`` is "other_")."""
    from .families import fixture

    fx = getattr(args, prefix + "fixture", None)
    g6 = getattr(args, prefix + "graph6", None)
    g6f = getattr(args, prefix + "graph6_file", None)
    js = getattr(args, prefix + "json", None)
    given = [x for x in (fx, g6, g6f, js) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one graph source: --fixture, --graph6, --graph6-file or --json"
                         + (" (for the second graph use --other-*)" if prefix else ""))
    if fx is not None:
        try:
            f = fixture(fx)
        except KeyError as e:
            raise UsageError(str(e.args[0])) from None
        return f.graph, dict(f.marked), fx
    if g6 is not None:
        return from_graph6(g6), {}, g6
    if g6f is not None:
        text = Path(g6f).read_text().strip().splitlines()
        if not text:
            raise Graph6ParseError("empty graph6 file", 0)
        return from_graph6(text[0]), {}, g6f
    G, marks = graph_from_json(Path(js).read_text())
    return G, marks, js


def resolve_vertex(token: str, G: Graph, marks: dict[str, int]) -> int:
    if token in marks:
        return marks[token]
    try:
        v = int(token)
    except ValueError:
        raise UsageError(f"unknown vertex label {token!r}; marks: {sorted(marks)}") from None
    if not 0 <= v < G.n:
        raise UsageError(f"vertex {v} out of range for n={G.n}")
    return v


def emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_invariants(args) -> int:
    G, marks, name = load_graph(args)
    K = args.k if args.k is not None else default_length(G.n)
    if args.vertex is not None:
        verts = [resolve_vertex(args.vertex, G, marks)]
    else:
        verts = list(range(G.n))
    label = {v: k for k, v in sorted(marks.items(), reverse=True)}
    rows = []
    for v in verts:
        rows.append({
            "vertex": v,
            "label": label.get(v),
            "walks": [str(c) for c in walk_counts(G, v, K).counts],
            "closed": [str(c) for c in closed_walk_counts(G, v, K).counts],
            "triple": list(closed_triple(G, v)),
        })
    mp = main_polynomial(G).format() if G.n else ""
    cp = adjacency_char_poly(G.adjacency_matrix()).format()
    if args.format == "json":
        text = dumps({"graph": to_graph6(G), "source": name, "n": G.n, "k": K,
                      "main_polynomial": mp, "char_poly": cp, "vertices": rows})
    elif args.format == "csv":
        lines = ["vertex,kind,k,count"]
        for r in rows:
            for kind in ("walks", "closed"):
                lines += [f"{r['vertex']},{kind},{k},{c}" for k, c in enumerate(r[kind])]
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"graph {to_graph6(G)} (n={G.n}, m={G.m})",
                 f"char_poly {cp}", f"main_polynomial {mp}"]
        for r in rows:
            tag = f"{r['vertex']}" + (f" ({r['label']})" if r["label"] else "")
            lines.append(f"vertex {tag}")
            lines.append("  walks  " + ",".join(r["walks"]))
            lines.append("  closed " + ",".join(r["closed"]))
            lines.append("  triple " + ",".join(map(str, r["triple"])))
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    return 0


def cmd_classify(args) -> int:
    from .equivalence import classify_pair, pair_labels

    G, marks, _ = load_graph(args)
    if args.pair:
        a, b = pair_labels(args.pair)
    else:
        if args.vertex is None or args.other_vertex is None:
            raise UsageError("use --pair x,y or --vertex with --other-vertex")
        a, b = args.vertex, args.other_vertex
    if any(getattr(args, "other_" + k) is not None for k in ("fixture", "graph6", "graph6_file", "json")):
        H, hmarks, _ = load_graph(args, "other_")
    else:
        H, hmarks = G, marks
    x, y = resolve_vertex(a, G, marks), resolve_vertex(b, H, hmarks)
    verdict = classify_pair(G, x, H, y).as_dict()
    if args.format == "json":
        text = dumps({"x": x, "y": y, **verdict})
    elif args.format == "csv":
        keys = sorted(verdict)
        text = "x,y," + ",".join(keys) + "\n" + f"{x},{y}," + ",".join(
            str(verdict[k]).lower() for k in keys) + "\n"
    else:
        text = " ".join(f"{k}={str(verdict[k]).lower()}" for k in sorted(verdict)) + "\n"
    emit(text, args.out)
    return 0


def cmd_census(args) -> int:
    from . import enumeration as en

    mode = args.mode
    lines = []
    if mode == "identifiability":
        rep = en.walk_identifiability_census(args.n_max, args.n_min, args.kind)
        for n in sorted(rep.counts):
            lines.append({"n": n, "count": rep.counts[n],
                          "collisions": [c for m, c in rep.collisions if m == n]})
    elif mode == "ambivalent":
        if args.kind != "trees":
            raise UsageError("ambivalent census runs on trees")
        for n in range(args.n_min, args.n_max + 1):
            rep = en.ambivalent_vertex_census(n, args.match)
            lines.append({"n": n, "tree_pairs": [list(p) for p in rep.tree_pairs()],
                          "matches": [m.as_dict() for m in rep.pairs],
                          "within_tree": [m.as_dict() for m in rep.within]})
    elif mode == "cross-size":
        out = en.cross_size_census(args.n_max, args.match, args.n_min)
        lines.append({"n_max": args.n_max, "mode": args.match,
                      "tree_pairs": [list(p) for p in en.tree_pairs(out)],
                      "matches": [m.as_dict() for m in out]})
    elif mode == "decisive":
        if args.kind != "graphs":
            raise UsageError("decisive census runs on connected graphs")
        for row in en.decisive_census(args.n_max, args.n_min):
            lines.append(row.__dict__)
    elif mode == "records":
        text = "".join(en.records_to_jsonl(en.census_records(args.kind, n))
                       for n in range(args.n_min, args.n_max + 1))
        emit(text, args.out)
        return 0
    emit("".join(json.dumps(x, sort_keys=True) + "\n" for x in lines), args.out)
    return 0


def cmd_verify(args) -> int:
    from . import theorems as th

    fam = args.family
    if fam == "pn-yn":
        reps = [th.verify_pn_yn(n, strict=False) for n in _int_list(args.n, "--n")]
    elif fam == "kv":
        if args.s is None or args.t is None:
            raise UsageError("kv needs --s and --t")
        reps = [th.verify_krebs_verbitsky(args.s, args.t, strict=False)]
    else:
        reps = [th.verify_part3_bound(n, strict=False) for n in _int_list(args.n, "--n")]
    if args.format == "text":
        text = "".join(f"{r.family} n={r.n} agree_through={r.agree_through} "
                       f"first_difference={r.first_difference} ok={str(r.ok).lower()}\n" for r in reps)
    else:
        text = "".join(r.to_json() + "\n" for r in reps)
    emit(text, args.out)
    bad = [r for r in reps if not r.ok]
    if bad:
        sys.stderr.write(f"theorem check failed for {[r.family + ' n=' + str(r.n) for r in bad]}\n")
        return 1
    return 0


def cmd_trial(args) -> int:
    from . import theorems as th

    if args.seed is None:
        raise UsageError("--seed is required for randomized subcommands")
    ns = _int_list(args.n, "--n")
    fn = th.random_triple_trial if args.experiment == "triples" else th.random_tree_ambivalence_trial
    reps = [fn(n, args.trials, args.seed, args.workers) for n in ns]
    if args.format == "csv":
        text = th.rate_curve_csv(reps)
    elif args.format == "text":
        text = "".join(f"n={r.n} trials={r.trials} collisions={r.collisions} rate={r.rate:.6f}\n"
                       for r in reps)
    else:
        text = "".join(r.to_json() + "\n" for r in reps)
    emit(text, args.out)
    return 0


def cmd_fixtures(args) -> int:
    from .families import fixture, fixture_names

    if args.action == "list":
        text = "".join(f"{name}\n" for name in fixture_names(args.all))
    else:
        if not args.name:
            raise UsageError("fixtures emit needs a fixture name")
        try:
            f = fixture(args.name)
        except KeyError as e:
            raise UsageError(str(e.args[0])) from None
        if args.format == "text":
            text = to_graph6(f.graph) + "\n"
        else:
            text = json.dumps(graph_to_dict(f.graph, f.marked), sort_keys=True) + "\n"
    emit(text, args.out)
    return 0


def _int_list(value, flag: str) -> list[int]:
    if value is None:
        raise UsageError(f"{flag} is required")
    try:
        return [int(x) for x in str(value).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects integers, got {value!r}") from None


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _graph_flags(p: argparse.ArgumentParser, prefix: str = ""):
    dash = "--" + prefix.replace("_", "-")
    p.add_argument(dash + "fixture", dest=prefix + "fixture", help="named fixture")
    p.add_argument(dash + "graph6", dest=prefix + "graph6", help="inline graph6 string")
    p.add_argument(dash + "graph6-file", dest=prefix + "graph6_file", help="file with one graph6 line")
    p.add_argument(dash + "json", dest=prefix + "json", help="JSON graph file {n, edges, marks}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--config", help="JSON file whose keys override flag defaults")

    ap = argparse.ArgumentParser(prog="walklab", description="Exact walk-count invariants of graph vertices.")
    ap.add_argument("--version", action="version", version=f"walklab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="W, R, triples, main and char polynomials")
    _graph_flags(p)
    p.add_argument("--vertex", help="vertex index or fixture label (default: all)")
    p.add_argument("--k", type=int, help="largest walk length (default 2n-1)")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", parents=[common], help="pair verdict for two rooted graphs")
    _graph_flags(p)
    _graph_flags(p, "other_")
    p.add_argument("--pair", help="x,y: vertex labels or indices")
    p.add_argument("--vertex")
    p.add_argument("--other-vertex", dest="other_vertex")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", parents=[common], help="tree and small-graph censuses")
    p.add_argument("kind", choices=("trees", "graphs"))
    p.add_argument("--mode", choices=("identifiability", "ambivalent", "cross-size", "decisive", "records"),
                   default="identifiability")
    p.add_argument("--match", choices=("walk", "closed", "strong"), default="walk")
    p.add_argument("--n-min", dest="n_min", type=int, default=1)
    p.add_argument("--n-max", dest="n_max", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", parents=[common], help="tightness families of the length bound")
    p.add_argument("family", choices=("pn-yn", "kv", "part3"))
    p.add_argument("--n", help="size or comma-separated sizes")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trial", parents=[common], help="Monte-Carlo experiments")
    p.add_argument("experiment", choices=("triples", "tree-ambivalence"))
    p.add_argument("--n", help="size or comma-separated sizes")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_trial)

    p = sub.add_parser("fixtures", parents=[common], help="list or emit named fixtures")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("--all", action="store_true", help="include auxiliary fixtures")
    p.set_defaults(func=cmd_fixtures)
    return ap


def parse(argv: Sequence[str]) -> argparse.Namespace:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "config", None):
        try:
            overrides = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read config {args.config}: {e}") from None
        sp = ap._subparsers._group_actions[0].choices[args.command]  # the chosen subparser
        known = {a.dest for a in sp._actions}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise UsageError(f"unknown config keys: {unknown}")
        sp.set_defaults(**overrides)
        args = ap.parse_args(argv)
    return args


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse(argv)
    except SystemExit as e:  # argparse usage errors and --help/--version
        return int(e.code or 0)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    try:
        return args.func(args)
    except (TheoremViolation, IntegrityError) as e:
        sys.stderr.write(f"violation: {e}\n")
        return 1
    except Graph6ParseError as e:
        sys.stderr.write(f"graph6 parse error: {e}\n")
        return 2
    except BudgetExceeded as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return 2
    except (UsageError, PreconditionError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
