"""Exhaustive checking of color-avoiding connectivity notions.

A notion fixes which elements carry colors (``edge``, ``vertex`` or
``internal-vertex``), the connectivity flavour (``edge`` for edge/arc-disjoint
paths, ``vertex`` for internally vertex-disjoint paths), the path count k, the
number l of colors an adversary may remove, and a scope (``undirected``,
``strong`` or ``rooted``).

The verifier walks every color subset of size at most l in a fixed order
(by size, then lexicographically) and reports the first one that breaks the
notion, together with a concrete pair and cut.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from . import graph as gc
from . import kernels
from .graph import ColoredGraph, Cut

PARTS = ("edge", "vertex", "internal-vertex")
MODES = ("edge", "vertex")
SCOPES = ("undirected", "strong", "rooted")

DEFAULT_MAX_SUBSETS = 10**6


class GuardError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class Notion:
    part: str = "edge"
    mode: str = "edge"
    k: int = 1
    l: int = 1
    scope: str = "undirected"

    def __post_init__(self):
        if self.part not in PARTS:
            raise ValueError(f"unknown colored part {self.part!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown connectivity mode {self.mode!r}")
        if self.scope not in SCOPES:
            raise ValueError(f"unknown scope {self.scope!r}")
        if self.k < 1 or self.l < 0:
            raise ValueError("need k >= 1 and l >= 0")

    @property
    def colors_on(self) -> str:
        return "edge" if self.part == "edge" else "vertex"

    def label(self) -> str:
        part = {"edge": "edge" if self.scope == "undirected" else "arc",
                "vertex": "vertex", "internal-vertex": "internally vertex"}[self.part]
        conn = {"edge": "edge" if self.scope == "undirected" else "arc",
                "vertex": "vertex"}[self.mode]
        pre = {"undirected": "", "strong": "strongly ", "rooted": "rooted "}[self.scope]
        return f"{part}-{self.l}-CA {pre}{self.k}-{conn}-connected"

    def to_json(self) -> dict:
        return {"part": self.part, "mode": self.mode, "k": self.k, "l": self.l,
                "scope": self.scope}


@dataclass(frozen=True)
class Verdict:
    holds: bool
    notion: Notion
    colors: tuple | None = None
    pair: tuple | None = None
    cut: Cut | None = None
    subsets_checked: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        w = None
        if not self.holds:
            w = {"colors": list(self.colors or ()),
                 "pair": list(self.pair) if self.pair else None,
                 "cut": self.cut.to_json() if self.cut else None}
        return {"holds": self.holds, "notion": self.notion.to_json(), "witness": w}


def _check_instance(g: ColoredGraph, notion: Notion, root):
    if notion.scope == "undirected" and g.directed:
        raise ValueError("undirected scope needs an undirected graph")
    if notion.scope != "undirected" and not g.directed:
        raise ValueError(f"{notion.scope} scope needs a digraph")
    if notion.scope == "rooted":
        r = g.root if root is None else root
        if r is None:
            raise ValueError("rooted scope needs a root")
        return r
    return None


def subset_count(ncolors: int, l: int) -> int:
    return sum(comb(ncolors, i) for i in range(min(l, ncolors) + 1))


def color_subsets(palette, l):
    for size in range(min(l, len(palette)) + 1):
        yield from itertools.combinations(palette, size)


# ---------------------------------------------------------------- per-removal tests
#
# Each returns None when the residual is fine, otherwise (pair, cut).


def _conn_ok(n, eu, ev, notion, r_idx):
    directed = notion.scope != "undirected"
    if notion.scope == "rooted":
        return gc.rooted_k(n, eu, ev, r_idx, notion.k, notion.mode)
    test = gc.edge_k if notion.mode == "edge" else gc.vertex_k
    return test(n, eu, ev, directed, notion.k, k1_trivial=True)


def _cut_kind(notion):
    return "edge" if notion.mode == "edge" else "mixed"


def _failing_pair(h: ColoredGraph, notion: Notion, root, pairs=None):
    """Find a pair of h lacking k disjoint paths, with a minimum cut."""
    ids = h.vertex_ids
    if pairs is None:
        if notion.scope == "rooted":
            pairs = [(root, v) for v in ids if v != root]
        elif notion.scope == "strong":
            pairs = [(u, v) for u in ids for v in ids if u != v]
        else:
            pairs = list(itertools.combinations(ids, 2))
    for u, v in pairs:
        if gc.local_connectivity(h, u, v, notion.mode) < notion.k:
            return (u, v), gc.min_cut_witness(h, _cut_kind(notion), u, v)
    return None, None


def _edge_part(g, notion, C, root):
    alive = g.edge_mask_without(C)
    eu, ev = g._ends
    r_idx = g.index[root] if root is not None else 0
    if _conn_ok(g.n, eu[alive], ev[alive], notion, r_idx):
        return None
    h = g.subgraph(keep_edges=[e.id for e, a in zip(g.edges, alive) if a])
    if h.n < 2:
        return None, None
    return _failing_pair(h, notion, root)


def _vertex_part(g, notion, C, root):
    alive = g.vertex_mask_without(C)
    if alive.sum() <= 1:
        return None
    if notion.scope == "rooted" and not alive[g.index[root]]:
        return None
    keep = [v for v, a in zip(g.vertex_ids, alive) if a]
    h = g.subgraph(keep_vertices=keep)
    eu, ev = h._ends
    r_idx = h.index[root] if root is not None else 0
    if _conn_ok(h.n, eu, ev, notion, r_idx):
        return None
    return _failing_pair(h, notion, root)


def _required_pairs(g, notion, root):
    n = g.n
    if notion.scope == "rooted":
        r = g.index[root]
        return [(r, v) for v in range(n) if v != r]
    if notion.scope == "strong":
        return [(u, v) for u in range(n) for v in range(n) if u != v]
    return list(itertools.combinations(range(n), 2))


def _internal_part(g, notion, C, root):
    deleted = ~g.vertex_mask_without(C)
    eu, ev = g._ends
    n = g.n
    pairs = _required_pairs(g, notion, root)
    directed = notion.scope != "undirected"
    bad = None
    if notion.k == 1:
        a, b = gc._strip_loops(eu, ev)
        if not directed:
            a, b = np.concatenate([a, b]), np.concatenate([b, a])
        ok = kernels.internal_pairs(n, a, b, deleted)
        for u, v in pairs:
            if not ok[u, v]:
                bad = (u, v)
                break
    else:
        flow = gc.edge_flow if notion.mode == "edge" else gc.vertex_flow
        for u, v in pairs:
            keep = ~deleted
            keep[u] = keep[v] = True
            if deleted.any():
                idx = np.cumsum(keep) - 1
                sel = keep[eu] & keep[ev]
                nn = int(keep.sum())
                f = flow(nn, idx[eu[sel]], idx[ev[sel]], directed, idx[u], idx[v], notion.k)
            else:
                f = flow(n, eu, ev, directed, u, v, notion.k)
            if f < notion.k:
                bad = (u, v)
                break
    if bad is None:
        return None
    u, v = g.vertex_ids[bad[0]], g.vertex_ids[bad[1]]
    keep_ids = [x for x, d in zip(g.vertex_ids, deleted) if not d] + [u, v]
    h = g.subgraph(keep_vertices=keep_ids)
    return (u, v), gc.min_cut_witness(h, _cut_kind(notion), u, v)


_PART_CHECK = {"edge": _edge_part, "vertex": _vertex_part, "internal-vertex": _internal_part}


def verify(g: ColoredGraph, notion: Notion, *, max_subsets: int = DEFAULT_MAX_SUBSETS,
           root: int | None = None) -> Verdict:
    """Decide whether the colored instance satisfies ``notion``.

    Raises GuardError when more than ``max_subsets`` color subsets would be
    enumerated.
    """
    root = _check_instance(g, notion, root)
    palette = g.edge_palette() if notion.part == "edge" else g.vertex_palette()
    total = subset_count(len(palette), notion.l)
    if total > max_subsets:
        raise GuardError(f"{total} color subsets exceed the cap of {max_subsets}")
    check = _PART_CHECK[notion.part]
    count = 0
    for C in color_subsets(palette, notion.l):
        count += 1
        bad = check(g, notion, C, root)
        if bad is not None:
            pair, cut = bad
            return Verdict(False, notion, tuple(C), pair, cut, count)
    return Verdict(True, notion, subsets_checked=count)


def verify_pair(g: ColoredGraph, notion: Notion, u: int, v: int, *,
                max_subsets: int = DEFAULT_MAX_SUBSETS) -> Verdict:
    """Pair-level check: does u reach v robustly under ``notion``?

    For the vertex-colored part, a removal that hits the color of u or v only
    requires the paths to exist in the uncolored graph.
    """
    _check_instance(g, notion, u if notion.scope == "rooted" else None)
    if u == v:
        raise ValueError("pair endpoints must differ")
    palette = g.edge_palette() if notion.part == "edge" else g.vertex_palette()
    total = subset_count(len(palette), notion.l)
    if total > max_subsets:
        raise GuardError(f"{total} color subsets exceed the cap of {max_subsets}")
    count = 0
    for C in color_subsets(palette, notion.l):
        count += 1
        Cs = set(C)
        if notion.part == "edge":
            h = gc.remove_colors(g, Cs, "edge")
        elif notion.part == "vertex":
            if (g.vertex(u).colors | g.vertex(v).colors) & Cs:
                h = g
            else:
                h = gc.remove_colors(g, Cs, "vertex")
        else:
            keep = [x.id for x in g.vertices if x.id in (u, v) or not (x.colors & Cs)]
            h = g.subgraph(keep_vertices=keep)
        if gc.local_connectivity(h, u, v, notion.mode) < notion.k:
            return Verdict(False, notion, tuple(C), (u, v),
                           gc.min_cut_witness(h, _cut_kind(notion), u, v), count)
    return Verdict(True, notion, subsets_checked=count)


# ---------------------------------------------------------------- equivalent formulations
#
# These deliberately avoid the flow kernels: plain union-find and subset
# enumeration in Python, so that they serve as an independent cross-check.


def _uf_components(vertices, edges) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = len(parent)
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def _single_colored(elements) -> bool:
    return all(len(x.colors) == 1 for x in elements)


def _edge_disconnects(g, removed) -> bool:
    es = [(e.u, e.v) for e in g.edges if e.id not in removed]
    return _uf_components(g.vertex_ids, es) > 1


def _vertex_disconnects(g, removed) -> bool:
    vs = [v for v in g.vertex_ids if v not in removed]
    es = [(e.u, e.v) for e in g.edges if e.u not in removed and e.v not in removed]
    return _uf_components(vs, es) > 1


def _mono_cuts(elements, is_cut):
    by_color = {}
    for x in elements:
        by_color.setdefault(next(iter(x.colors)), []).append(x.id)
    if is_cut(set()):
        yield []
    for ids in by_color.values():
        for r in range(1, len(ids) + 1):
            for sub in itertools.combinations(ids, r):
                if is_cut(set(sub)):
                    yield list(sub)


def _is_minimal(sub, is_cut) -> bool:
    # being a cut is upward closed, so single deletions suffice
    return all(not is_cut(set(sub) - {x}) for x in sub)


def equivalence_suite(g: ColoredGraph, *, max_elements: int = 12) -> dict:
    """Evaluate the equivalent formulations of 1-CA connectivity side by side.

    Returns ``{check_name: {"status": agree|disagree|skipped, "values": {...}}}``.
    """
    if g.directed:
        raise ValueError("the equivalence suite is for undirected graphs")
    if g.m > max_elements or g.n > max_elements:
        raise GuardError("instance too large for the equivalence suite")
    report = {}

    def record(name, values, reason=None):
        if reason:
            report[name] = {"status": "skipped", "reason": reason, "values": {}}
        else:
            agree = len(set(values.values())) <= 1
            report[name] = {"status": "agree" if agree else "disagree", "values": values}

    # edge colors: robust connectivity, monochromatic edge cuts, spanning trees
    if g.n < 2:
        record("edge_1ca", {}, "out of proposition scope: fewer than two vertices")
    elif not _single_colored(g.edges):
        record("edge_1ca", {}, "edges must carry exactly one color")
    else:
        palette = g.edge_palette()
        vals = {"verifier": verify(g, Notion("edge", "edge", 1, 1)).holds}

        def pairwise_paths():
            for C in [()] + [(c,) for c in palette]:
                es = [(e.u, e.v) for e in g.edges if not (e.colors & set(C))]
                adj = {v: set() for v in g.vertex_ids}
                for a, b in es:
                    adj[a].add(b)
                    adj[b].add(a)
                for s in g.vertex_ids:
                    seen, stack = {s}, [s]
                    while stack:
                        x = stack.pop()
                        for y in adj[x] - seen:
                            seen.add(y)
                            stack.append(y)
                    if len(seen) != g.n:
                        return False
            return True

        vals["pairwise_paths"] = pairwise_paths()
        cut = lambda S: _edge_disconnects(g, S)
        cuts = list(_mono_cuts(g.edges, cut))
        vals["no_mono_cut"] = not cuts
        vals["no_minimal_mono_cut"] = not any(_is_minimal(c, cut) for c in cuts)

        def spanning_tree_each():
            for C in [()] + [(c,) for c in palette]:
                es = [(e.u, e.v) for e in g.edges if not (e.colors & set(C))]
                if _uf_components(g.vertex_ids, es) != 1:
                    return False
            return True

        vals["spanning_tree"] = spanning_tree_each()
        record("edge_1ca", vals)

    # vertex colors: internal robust connectivity vs monochromatic vertex cuts
    if g.n < 2:
        for name in ("internal_1ca", "vertex_vs_internal"):
            record(name, {}, "out of proposition scope: fewer than two vertices")
        return report
    if not _single_colored(g.vertices):
        record("internal_1ca", {}, "vertices must carry exactly one color")
        record("vertex_vs_internal", {}, "vertices must carry exactly one color")
        return report
    internal = verify(g, Notion("internal-vertex", "edge", 1, 1)).holds
    vals = {"verifier": internal}
    cut = lambda S: _vertex_disconnects(g, S)
    cuts = list(_mono_cuts(g.vertices, cut))
    vals["no_mono_cut"] = not cuts
    vals["no_minimal_mono_cut"] = not any(_is_minimal(c, cut) for c in cuts)
    record("internal_1ca", vals)

    nbr_diff = all(
        any(e.other(v.id) != v.id and g.vertex(e.other(v.id)).colors != v.colors
            for e in g.edges if v.id in (e.u, e.v))
        for v in g.vertices)
    if nbr_diff:
        record("vertex_vs_internal",
               {"vertex": verify(g, Notion("vertex", "edge", 1, 1)).holds,
                "internal": internal})
    else:
        record("vertex_vs_internal", {}, "some vertex has no differently colored neighbour")
    return report
