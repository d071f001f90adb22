"""Orientations of undirected multigraphs: classical constructions and exact search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from . import coloring as col
from . import graph as gc
from . import matroid as mt
from .coloring import ColoringResult, Infeasible
from .graph import ColoredGraph, Cut, Edge
from .verify import Notion, verify

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class Orientation:
    """Direction of every edge: True keeps (u, v), False reverses it."""

    forward: tuple  # ((edge_id, bool), ...) sorted by edge id

    @classmethod
    def from_dict(cls, d: dict) -> "Orientation":
        return cls(tuple(sorted((int(k), bool(v)) for k, v in d.items())))

    def as_dict(self) -> dict:
        return dict(self.forward)

    def apply(self, g: ColoredGraph) -> ColoredGraph:
        fw = self.as_dict()
        if set(fw) != {e.id for e in g.edges}:
            raise ValueError("orientation does not cover exactly the edge set")
        es = tuple(e if fw[e.id] else replace(e, u=e.v, v=e.u) for e in g.edges)
        return replace(g, edges=es, directed=True)

    def to_text(self) -> str:
        return "".join(f"orient {k} {'fwd' if v else 'bwd'}\n" for k, v in self.forward)

    def to_json(self) -> dict:
        return {str(k): ("fwd" if v else "bwd") for k, v in self.forward}


def parse_orientation(text: str) -> Orientation:
    d = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) != 3 or tok[0] != "orient" or tok[2] not in ("fwd", "bwd"):
            raise ValueError(f"line {ln}: expected 'orient <edge-id> fwd|bwd'")
        d[int(tok[1])] = tok[2] == "fwd"
    return Orientation.from_dict(d)


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # found | none | budget-exhausted
    orientation: Orientation | None = None
    explored: int = 0
    coloring: ColoringResult | None = None
    case: str = ""


def _bridge_witness(g: ColoredGraph, k: int) -> Cut:
    ids = g.vertex_ids
    for t in ids[1:]:
        if gc.local_connectivity(g, ids[0], t, "edge") < k:
            return gc.min_cut_witness(g, "edge", ids[0], t)
    return Cut()


def robbins_orientation(g: ColoredGraph) -> Orientation:
    """Strongly connected orientation of a 2-edge-connected graph.

    Depth-first search from the smallest vertex: tree edges point away from
    the start, every other edge points from the later-discovered end back up.
    """
    if g.directed:
        raise ValueError("expects an undirected graph")
    if not gc.is_k_edge_connected(g, 2) and g.n != 1:
        raise Infeasible("graph is not 2-edge-connected", _bridge_witness(g, 2))
    inc = {v: [] for v in g.vertex_ids}
    for e in g.edges:
        inc[e.u].append(e)
        if not e.is_loop:
            inc[e.v].append(e)
    disc = {}
    fwd = {}
    for start in g.vertex_ids:
        if start in disc:
            continue
        disc[start] = len(disc)
        stack = [(start, iter(sorted(inc[start], key=lambda e: e.id)))]
        while stack:
            x, it = stack[-1]
            for e in it:
                if e.id in fwd:
                    continue
                y = e.other(x)
                if y not in disc:
                    fwd[e.id] = e.u == x
                    disc[y] = len(disc)
                    stack.append((y, iter(sorted(inc[y], key=lambda e: e.id))))
                    break
                # back edge: from the later discovered end to the earlier
                fwd[e.id] = disc[e.u] >= disc[e.v]
            else:
                stack.pop()
    return Orientation.from_dict(fwd)


def rooted_k_arc_orientation(g: ColoredGraph, k: int, root: int | None = None) -> Orientation:
    """Orient k edge-disjoint spanning trees away from the root.

    Remaining edges point from the smaller vertex id to the larger one.
    Raises Infeasible with a tree-packing violation when no k trees exist.
    """
    r = g.root if root is None else root
    if r is None:
        raise ValueError("a root is required")
    if g.n == 1:
        return Orientation.from_dict({e.id: True for e in g.edges})
    viol = mt.tree_packing_violation(g, k)
    if viol is not None:
        raise Infeasible(f"no {k} edge-disjoint spanning trees", Cut((), tuple(viol)))
    pack = mt.pack_k_bases(mt.graphic(g), k)
    fwd = {}
    for tree in pack.bases:
        adj = {}
        for i in tree:
            e = g.edges[i]
            adj.setdefault(e.u, []).append(e)
            adj.setdefault(e.v, []).append(e)
        seen = {r}
        frontier = [r]
        while frontier:
            nxt = []
            for x in frontier:
                for e in sorted(adj.get(x, []), key=lambda e: e.id):
                    y = e.other(x)
                    if y not in seen:
                        seen.add(y)
                        fwd[e.id] = e.u == x
                        nxt.append(y)
            frontier = nxt
    for e in g.edges:
        if e.id not in fwd:
            fwd[e.id] = e.u <= e.v
    return Orientation.from_dict(fwd)


def nash_williams_check(g: ColoredGraph, k: int) -> bool:
    """A strongly k-arc-connected orientation exists iff the graph is 2k-edge-connected."""
    return gc.is_k_edge_connected(g, 2 * k)


def thomassen_check(g: ColoredGraph) -> bool:
    """Existence of a strongly 2-vertex-connected orientation.

    For three or more vertices: 4-edge-connected and 2-edge-connected after
    deleting any vertex. Two vertices need four parallel edges, one vertex two
    loops (parallel arcs count as disjoint paths).
    """
    if g.n <= 2:
        return gc.is_k_edge_connected(g, 4) if g.n == 2 else gc.is_k_edge_connected(g, 2)
    if not gc.is_k_edge_connected(g, 4):
        return False
    return all(gc.is_k_edge_connected(gc.remove_vertex(g, v), 2) for v in g.vertex_ids)


# ---------------------------------------------------------------- exact search


def _optimistic(g: ColoredGraph, fixed: dict) -> ColoredGraph:
    """Digraph where undecided edges are present in both directions."""
    off = max((e.id for e in g.edges), default=0) + 1
    es = []
    for e in g.edges:
        d = fixed.get(e.id)
        if d is True or e.is_loop:
            es.append(e)
        elif d is False:
            es.append(replace(e, u=e.v, v=e.u))
        else:
            es.append(e)
            es.append(replace(e, id=e.id + off, u=e.v, v=e.u))
    return replace(g, edges=tuple(es), directed=True)


def _pregate(g: ColoredGraph, notion: Notion) -> bool:
    """Necessary conditions on the undirected instance (sound, cheap)."""
    if g.n < 2:
        return True
    und = replace(g, directed=False, root=None)
    if notion.part == "edge":
        k = 2 * notion.k if notion.scope == "strong" else notion.k
        return verify(und, Notion("edge", "edge", k, notion.l)).holds
    if notion.part == "vertex" and notion.scope == "strong":
        return verify(und, Notion("vertex", "edge", 2 * notion.k, notion.l)).holds
    return True


def _dominance_fixes(g: ColoredGraph) -> dict:
    """Pair up identical parallel edges and orient each pair oppositely."""
    groups = {}
    for e in g.edges:
        if e.is_loop:
            continue
        key = (min(e.u, e.v), max(e.u, e.v), e.colors, e.weight)
        groups.setdefault(key, []).append(e)
    fixed = {}
    for es in groups.values():
        for a, b in zip(es[0::2], es[1::2]):
            fixed[a.id] = a.u <= a.v
            fixed[b.id] = not (b.u <= b.v)
    return fixed


def find_ca_orientation_exact(g: ColoredGraph, notion: Notion, *, budget: int = DEFAULT_BUDGET,
                              prune: bool = True, pair_dominance: bool | None = None,
                              root: int | None = None) -> SearchOutcome:
    """Search all orientations for one whose colored digraph satisfies ``notion``.

    Edges are decided in id order, forward first, so the first hit is the
    lexicographically smallest (fwd < bwd) among those the search visits.
    With ``prune`` the search checks cheap necessary conditions up front and
    abandons a branch once the digraph with all undecided edges doubled
    already fails. ``pair_dominance`` (default: on when k == 1, where it is
    safe) pre-orients identical parallel edges oppositely.
    """
    if g.directed:
        raise ValueError("expects an undirected graph")
    if notion.scope == "undirected":
        raise ValueError("orientation notions need strong or rooted scope")
    if root is not None:
        g = g.with_root(root)
    if notion.scope == "rooted" and g.root is None:
        raise ValueError("rooted scope needs a root")
    if pair_dominance is None:
        pair_dominance = notion.k == 1
    if prune and not _pregate(g, notion):
        return SearchOutcome("none", None, 0)
    fixed = {e.id: True for e in g.edges if e.is_loop}
    if pair_dominance:
        fixed.update(_dominance_fixes(g))
    free = [e.id for e in g.edges if e.id not in fixed]
    explored = 0

    def ok(assign):
        nonlocal explored
        explored += 1
        return verify(_optimistic(g, assign), notion).holds

    stack = [(0, dict(fixed))]
    while stack:
        i, assign = stack.pop()
        if explored >= budget:
            return SearchOutcome("budget-exhausted", None, explored)
        if i == len(free):
            if ok(assign):
                return SearchOutcome("found", Orientation.from_dict(assign), explored)
            continue
        if prune and 0 < i and not ok(assign):
            continue
        eid = free[i]
        for d in (False, True):  # pushed in reverse so fwd is tried first
            nxt = dict(assign)
            nxt[eid] = d
            stack.append((i + 1, nxt))
    return SearchOutcome("none", None, explored)


def brute_force_orientations(g: ColoredGraph, notion: Notion, root: int | None = None):
    """Every satisfying orientation, by plain enumeration (for testing)."""
    if root is not None:
        g = g.with_root(root)
    ids = [e.id for e in g.edges]
    out = []
    for bits in itertools.product((True, False), repeat=len(ids)):
        o = Orientation(tuple(zip(ids, bits)))
        if verify(o.apply(g), notion).holds:
            out.append(o)
    return out


# ---------------------------------------------------------------- orient and color


def _mono(g):
    return ColoringResult("vertex", {v: 1 for v in g.vertex_ids})


def orient_and_color(g: ColoredGraph, notion: Notion, c: int, *, root: int | None = None,
                     budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Find an orientation together with a coloring (at most c colors) meeting ``notion``.

    Polynomial cases are handled by construction; the rest fall back to a
    joint exhaustive search over colorings and orientations.
    """
    if root is not None:
        g = g.with_root(root)
    r = g.root
    k, l = notion.k, notion.l
    if notion.scope == "rooted" and r is None:
        raise ValueError("rooted scope needs a root")

    if notion.part == "edge" and notion.scope == "rooted" and notion.mode == "edge" and k == 1:
        case = "a"
        if c < l + 1:
            return SearchOutcome("none", case=case)
        try:
            o = rooted_k_arc_orientation(g, l + 1, r)
        except Infeasible:
            return SearchOutcome("none", case=case)
        return SearchOutcome("found", o, 0, col.rooted_ca_coloring(o.apply(g), l, r), case)

    if notion.part == "vertex" and c >= 1 and (notion.mode == "edge" or k == 1):
        if notion.scope == "strong":
            case = "b"
            if g.n >= 2 and not nash_williams_check(g, k):
                return SearchOutcome("none", case=case)
            if k == 1:
                return SearchOutcome("found", robbins_orientation(g), 0, _mono(g), case)
            res = find_ca_orientation_exact(g, Notion("vertex", "edge", k, 0, "strong"),
                                            budget=budget)
            return replace(res, coloring=_mono(g) if res.orientation else None, case=case)
        case = "c"
        try:
            o = rooted_k_arc_orientation(g, k, r)
        except Infeasible:
            return SearchOutcome("none", case=case)
        return SearchOutcome("found", o, 0, _mono(g), case)

    if notion.part == "vertex" and c >= 1:
        case = "d"
        if notion.scope == "strong" and k == 2 and not thomassen_check(g):
            return SearchOutcome("none", case=case)
        res = find_ca_orientation_exact(g, Notion("vertex", "vertex", k, 0, notion.scope),
                                        budget=budget)
        return replace(res, coloring=_mono(g) if res.orientation else None, case=case)

    # joint exhaustive search
    case = "e"
    kind = "edge" if notion.part == "edge" else "vertex"
    elems = [e.id for e in g.edges] if kind == "edge" else list(g.vertex_ids)
    explored = 0
    for used in range(0, min(c, len(elems)) + 1):
        for s in col._rgs(len(elems), used):
            assign = {elems[j]: s[j] + 1 for j in range(len(elems))}
            h = g.with_edge_colors(assign) if kind == "edge" else g.with_vertex_colors(assign)
            res = find_ca_orientation_exact(h, notion, budget=max(budget - explored, 1))
            explored += res.explored
            if res.status == "found":
                return SearchOutcome("found", res.orientation, explored,
                                     ColoringResult(kind, assign), case)
            if explored >= budget:
                return SearchOutcome("budget-exhausted", None, explored, case=case)
    return SearchOutcome("none", None, explored, case=case)
