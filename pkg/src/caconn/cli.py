"""Command-line front end.

Every invocation prints one JSON record per line on stdout; diagnostics go to
stderr. Exit codes: 0 success / property holds, 1 property fails or nothing
found, 2 usage, input or guard error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import coloring as col
from . import graph as gc
from . import orientation as ori
from . import reductions as red
from .verify import DEFAULT_MAX_SUBSETS, GuardError, Notion, subset_count, verify

EXIT_OK, EXIT_FAIL, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


class CliError(Exception):
    pass


class Session:
    def __init__(self, args, argv):
        self.args = args
        self.argv = list(argv)
        self.digest = None
        self.t0 = time.perf_counter()

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc.strerror}") from None
        self.digest = hashlib.sha256(data).hexdigest()
        return data.decode()

    def emit(self, result: dict):
        wall = None if self.args.deterministic else round(time.perf_counter() - self.t0, 6)
        rec = {"command": self.argv, "input_sha256": self.digest, "result": result,
               "wall_time": wall}
        print(json.dumps(rec, sort_keys=True))

    def write_artifact(self, text: str, result: dict):
        out = getattr(self.args, "output", None)
        if out:
            Path(out).write_text(text)
            result["artifact"] = out
        else:
            result["artifact_text"] = text


def _notion(args, scope=None, g=None) -> Notion:
    scope = scope or args.scope
    if scope is None:
        # directed inputs default to rooted when a root is known, else strong
        if g is not None and g.directed:
            scope = "rooted" if g.root is not None else "strong"
        else:
            scope = "undirected"
    return Notion(args.part, args.mode, args.k, args.l, scope)


def _graph(sess, path, root=None):
    g = gc.parse(sess.read(path))
    if root is not None:
        g = g.with_root(root)
    return g


def _guard_notice(args, total):
    if args.max_subsets != DEFAULT_MAX_SUBSETS:
        print(f"note: enumeration will check up to {total} color subsets "
              f"(cap {args.max_subsets})", file=sys.stderr)


# ---------------------------------------------------------------- commands


def cmd_verify(sess) -> int:
    a = sess.args
    g = _graph(sess, a.file, a.root)
    nt = _notion(a, g=g)
    palette = g.edge_palette() if nt.part == "edge" else g.vertex_palette()
    _guard_notice(a, subset_count(len(palette), nt.l))
    v = verify(g, nt, max_subsets=a.max_subsets)
    res = v.to_json()
    res["label"] = nt.label()
    sess.emit(res)
    return EXIT_OK if v.holds else EXIT_FAIL


def cmd_color(sess) -> int:
    a = sess.args
    g = _graph(sess, a.file, a.root)
    if a.omega is not None or a.weighted:
        out = col.weighted_ca_coloring_exact(g, None if a.omega in (None, "inf") else a.omega,
                                             a.colors or 2, a.l, budget=a.budget)
        return _finish_opt(sess, g, out, "weighted")
    if a.exact:
        nt = _notion(a, "rooted" if a.rooted else None, g)
        out = col.exact_min_colors(g, nt, budget=a.budget, max_colors=a.colors)
        return _finish_opt(sess, g, out, "exact", nt)
    # polynomial constructions
    try:
        if a.rooted:
            res = col.rooted_ca_coloring(g, a.l, g.root)
            method = "arborescence-packing"
        elif a.part == "edge":
            if a.l != 1 or a.k != 1:
                raise CliError("--poly for edge colorings covers k=1, l=1 only; use --exact")
            res = col.min_courteous_coloring(g)
            method = "matroid-partition"
        else:
            res = col.single_color_colorings(g, _notion(a, g=g))
            method = "single-color"
            if res is None:
                raise col.Infeasible("no one-color coloring")
    except col.Infeasible as exc:
        w = exc.witness
        sess.emit({"status": "infeasible", "method": a.part, "reason": str(exc),
                   "witness": w.to_json() if hasattr(w, "to_json") else w})
        return EXIT_FAIL
    result = {"status": "found", "method": method, "colors_used": res.colors_used,
              "coloring": res.to_json()}
    sess.write_artifact(col.write_coloring(g, res), result)
    sess.emit(result)
    return EXIT_OK


def _finish_opt(sess, g, out, method, nt=None) -> int:
    result = {"status": out.status, "method": method, "colors_used": out.colors,
              "explored": out.explored}
    if nt is not None:
        result["lower_bound"] = out.lower_bound
        result["notion"] = nt.to_json()
    if out.result is not None:
        result["coloring"] = out.result.to_json()
        sess.write_artifact(col.write_coloring(g, out.result), result)
    sess.emit(result)
    if out.status == "budget-exhausted":
        return EXIT_BUDGET
    return EXIT_OK if out.result is not None else EXIT_FAIL


def cmd_orient(sess) -> int:
    a = sess.args
    g = _graph(sess, a.file, a.root)
    result = {}
    if a.robbins:
        try:
            o = ori.robbins_orientation(g)
        except col.Infeasible as exc:
            sess.emit({"status": "none", "method": "robbins", "reason": str(exc)})
            return EXIT_FAIL
        result = {"status": "found", "method": "robbins"}
    elif a.rooted_k:
        try:
            o = ori.rooted_k_arc_orientation(g, a.rooted_k, g.root)
        except col.Infeasible as exc:
            sess.emit({"status": "none", "method": "tree-packing", "reason": str(exc)})
            return EXIT_FAIL
        result = {"status": "found", "method": "tree-packing"}
    elif a.nash_williams or a.thomassen:
        ok = (ori.nash_williams_check(g, a.nash_williams) if a.nash_williams
              else ori.thomassen_check(g))
        sess.emit({"status": "holds" if ok else "fails",
                   "method": "nash-williams" if a.nash_williams else "thomassen"})
        return EXIT_OK if ok else EXIT_FAIL
    else:
        scope = "rooted" if a.ca_rooted else "strong"
        nt = _notion(a, scope)
        if a.and_color is not None:
            res = ori.orient_and_color(g.underlying(), nt, a.and_color, budget=a.budget)
        else:
            res = ori.find_ca_orientation_exact(g, nt, budget=a.budget)
        result = {"status": res.status, "method": "search", "explored": res.explored,
                  "notion": nt.to_json()}
        if res.case:
            result["case"] = res.case
        if res.coloring is not None:
            result["coloring"] = res.coloring.to_json()
        if res.status != "found":
            sess.emit(result)
            return EXIT_BUDGET if res.status == "budget-exhausted" else EXIT_FAIL
        o = res.orientation
    result["orientation"] = o.to_json()
    sess.write_artifact(o.to_text(), result)
    sess.emit(result)
    return EXIT_OK


REDUCE_KINDS = ("hypergraph", "hypergraph-rooted", "hypergraph-orient", "nae-strong",
                "nae-rooted", "edge-to-vertex", "edge-to-vertex-rooted",
                "edge-to-vertex-internal", "edge-to-vertex-internal-rooted")


def build_gadget(kind: str, text: str, *, expand=False, root=None) -> red.Gadget:
    if kind.startswith("hypergraph"):
        h = red.parse_hypergraph(text)
        return red.build_hypergraph_gadget(h, rooted=kind == "hypergraph-rooted",
                                           orient=kind == "hypergraph-orient")
    if kind.startswith("nae"):
        return red.build_nae_gadget(red.parse_nae(text), kind.split("-")[1], expand=expand)
    g = gc.parse(text)
    if root is not None:
        g = g.with_root(root)
    return red.build_edge_to_vertex_gadget(g, rooted="rooted" in kind,
                                           internal="internal" in kind)


def cmd_reduce(sess) -> int:
    a = sess.args
    if a.kind == "check":
        if not a.file:
            raise CliError("reduce check needs a family name")
        rep = red.check_reduction(a.file, jobs=a.jobs)
        sess.emit(rep.to_json())
        return EXIT_OK if rep.ok or not rep.asserted else EXIT_FAIL
    gd = build_gadget(a.kind, sess.read(a.file), expand=a.expand, root=a.root)
    result = {"kind": gd.kind, "regime": gd.regime, "vertices": gd.graph.n,
              "edges": gd.graph.m, "root": gd.graph.root}
    sess.write_artifact(gc.serialize(gd.graph), result)
    sess.emit(result)
    return EXIT_OK


def cmd_gen(sess) -> int:
    a = sess.args
    palette = list(range(1, a.palette + 1))
    if a.rooted_k:
        g = gc.random_rooted_digraph(a.n, a.rooted_k, a.extra, a.seed)
    elif a.directed:
        g = gc.random_colored_digraph(a.n, a.m, palette, a.seed, mode=a.gen_mode)
    else:
        g = gc.random_colored_graph(a.n, a.m, palette, a.seed, mode=a.gen_mode)
    text = gc.serialize(g)
    result = {"vertices": g.n, "edges": g.m, "seed": a.seed}
    sess.write_artifact(text, result)
    sess.emit(result)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _notion_flags(p, part_default="edge"):
    p.add_argument("--part", choices=("edge", "vertex", "internal-vertex"), default=part_default)
    p.add_argument("--mode", choices=("edge", "vertex"), default="edge")
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-l", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="caconn", description=__doc__.splitlines()[0])
    p.add_argument("--deterministic", action="store_true",
                   help="omit wall times so records are byte-stable")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batch checks")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a colored (di)graph against a notion")
    v.add_argument("file")
    _notion_flags(v)
    v.add_argument("--scope", choices=("undirected", "strong", "rooted"), default=None)
    v.add_argument("--root", type=int)
    v.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS)

    c = sub.add_parser("color", help="compute a color-avoiding coloring")
    c.add_argument("file")
    _notion_flags(c)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--poly", action="store_true", help="polynomial construction (default)")
    g.add_argument("--exact", action="store_true", help="exhaustive minimum search")
    g.add_argument("--weighted", action="store_true", help="weighted spanning-tree variant")
    c.add_argument("--rooted", action="store_true")
    c.add_argument("--scope", choices=("undirected", "strong", "rooted"), default=None)
    c.add_argument("--root", type=int)
    c.add_argument("-c", "--colors", type=int, default=None, help="color limit")
    c.add_argument("--omega", default=None, help="weight bound (number or 'inf')")
    c.add_argument("--budget", type=int, default=col.DEFAULT_BUDGET)
    c.add_argument("-o", "--output")

    o = sub.add_parser("orient", help="orientations of an undirected graph")
    o.add_argument("file")
    _notion_flags(o)
    t = o.add_mutually_exclusive_group()
    t.add_argument("--ca-strong", action="store_true")
    t.add_argument("--ca-rooted", action="store_true")
    t.add_argument("--robbins", action="store_true")
    t.add_argument("--rooted-k", type=int)
    t.add_argument("--nash-williams", type=int, metavar="K")
    t.add_argument("--thomassen", action="store_true")
    o.add_argument("--and-color", type=int, metavar="C",
                   help="also choose a coloring with at most C colors")
    o.add_argument("--root", type=int)
    o.add_argument("--budget", type=int, default=ori.DEFAULT_BUDGET)
    o.add_argument("-o", "--output")

    r = sub.add_parser("reduce", help="build a reduction gadget, or 'check FAMILY'")
    r.add_argument("kind", choices=REDUCE_KINDS + ("check",))
    r.add_argument("file", nargs="?")
    r.add_argument("--expand", action="store_true", help="one color per edge")
    r.add_argument("--root", type=int)
    r.add_argument("-o", "--output")

    gn = sub.add_parser("gen", help="random instance generator")
    gn.add_argument("--random", action="store_true", help="accepted for readability")
    gn.add_argument("-n", type=int, required=True)
    gn.add_argument("-m", type=int, default=0)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--palette", type=int, default=3)
    gn.add_argument("--gen-mode", choices=("uniform", "per-tree"), default="uniform")
    gn.add_argument("--directed", action="store_true")
    gn.add_argument("--rooted-k", type=int, help="union of K random arborescences")
    gn.add_argument("--extra", type=int, default=0)
    gn.add_argument("-o", "--output")
    return p


COMMANDS = {"verify": cmd_verify, "color": cmd_color, "orient": cmd_orient,
            "reduce": cmd_reduce, "gen": cmd_gen}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    sess = Session(args, argv)
    if args.command == "reduce" and args.kind != "check" and not args.file:
        print("error: reduce needs an input file", file=sys.stderr)
        return EXIT_ERROR
    try:
        return COMMANDS[args.command](sess)
    except (CliError, gc.ParseError, GuardError, red.ReductionError, ValueError,
            col.Infeasible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
