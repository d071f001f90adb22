"""Existence tests, constructions and exact search for color-avoiding colorings.

Produced colorings use colors 1, 2, ... and give every element a single color.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import graph as gc
from . import matroid as mt
from .graph import ColoredGraph, Cut
from .verify import GuardError, Notion, subset_count, verify

DEFAULT_BUDGET = 200_000


class Infeasible(Exception):
    """No object of the requested kind exists; ``witness`` explains why."""

    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class ColoringResult:
    kind: str  # "edge" or "vertex"
    assignment: dict  # element id -> color
    certificate: dict = field(default_factory=dict)

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def apply(self, g: ColoredGraph) -> ColoredGraph:
        if self.kind == "edge":
            return g.with_edge_colors(self.assignment)
        return g.with_vertex_colors(self.assignment)

    def to_json(self) -> dict:
        return {"kind": self.kind, "colors_used": self.colors_used,
                "assignment": {str(k): v for k, v in sorted(self.assignment.items())}}


@dataclass(frozen=True)
class OptOutcome:
    status: str  # optimal | feasible | infeasible | budget-exhausted
    result: ColoringResult | None = None
    lower_bound: int = 0
    explored: int = 0

    @property
    def colors(self):
        return None if self.result is None else self.result.colors_used


def write_coloring(g: ColoredGraph, res: ColoringResult) -> str:
    lines = [f"coloring {g.name}"]
    for k, c in sorted(res.assignment.items()):
        lines.append(f"color {res.kind} {k} {c}")
    return "\n".join(lines) + "\n"


def read_coloring(text: str) -> tuple:
    """Returns (graph name, ColoringResult)."""
    name, kind, assignment = None, None, {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "coloring" and len(tok) == 2:
            name = tok[1]
        elif tok[0] == "color" and len(tok) == 4 and tok[1] in ("edge", "vertex"):
            if kind not in (None, tok[1]):
                raise ValueError(f"line {ln}: mixed element kinds")
            kind = tok[1]
            assignment[int(tok[2])] = int(tok[3])
        else:
            raise ValueError(f"line {ln}: unexpected {line!r}")
    if name is None:
        raise ValueError("missing 'coloring <graph>' line")
    return name, ColoringResult(kind or "edge", assignment)


# ---------------------------------------------------------------- existence


def _root_idx(g, notion, root):
    if notion.scope != "rooted":
        return None
    r = g.root if root is None else root
    if r is None:
        raise ValueError("rooted scope needs a root")
    return g.index[r]


def _conn(n, eu, ev, scope, mode, k, r_idx):
    if scope == "rooted":
        return gc.rooted_k(n, eu, ev, r_idx, k, mode)
    test = gc.edge_k if mode == "edge" else gc.vertex_k
    return test(n, eu, ev, scope == "strong", k, k1_trivial=True)


def _max_subsets_guard(total, cap):
    if total > cap:
        raise GuardError(f"{total} element subsets exceed the cap of {cap}")


@dataclass(frozen=True)
class Existence:
    """Outcome of a structural existence test.

    ``condition`` names the checked property; on failure ``deleted`` holds the
    removed edge or vertex ids that break it and ``pair``/``cut`` a weak pair
    in what remains, with a minimum cut separating it.
    """

    holds: bool
    condition: str
    deleted: tuple = ()
    pair: tuple | None = None
    cut: Cut | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {"holds": self.holds, "condition": self.condition,
                "deleted": list(self.deleted),
                "pair": None if self.pair is None else list(self.pair),
                "cut": None if self.cut is None else self.cut.to_json(),
                "checked": self.checked}


def _weak_pair(h: ColoredGraph, scope, mode, need, root):
    """First pair of h with fewer than ``need`` disjoint paths, and a cut for it."""
    ids = h.vertex_ids
    if scope == "rooted":
        pairs = [(root, t) for t in ids if t != root] if root in h.index else []
    elif scope == "strong":
        pairs = [(s, t) for s in ids for t in ids if s != t]
    else:
        pairs = list(itertools.combinations(ids, 2))
    for s, t in pairs:
        if gc.local_connectivity(h, s, t, mode) < need:
            return (s, t), gc.min_cut_witness(h, "edge" if mode == "edge" else "mixed", s, t)
    return None, None


def exists_ca_coloring(g: ColoredGraph, notion: Notion, root: int | None = None,
                       max_subsets: int = 10**6) -> Existence:
    """Decide existence of a coloring via structural conditions only.

    * edge-colored, edge mode: (k+l)-edge (strong/rooted arc) connectivity;
    * edge-colored, vertex mode: k-vertex connectivity survives deleting any
      l edges;
    * vertex-colored: plain k-connectivity (or at most one vertex);
    * internally vertex-colored: after deleting any l vertices (never the
      root), what remains is k-connected or has at most one vertex.
    """
    r_idx = _root_idx(g, notion, root)
    rv = None if r_idx is None else g.vertex_ids[r_idx]
    n = g.n
    eu, ev = g._ends
    k, l, scope, mode = notion.k, notion.l, notion.scope, notion.mode
    flavour = "arc" if scope != "undirected" and mode == "edge" else mode
    pre = {"undirected": "", "strong": "strongly ", "rooted": "rooted "}[scope]

    def fail(cond, deleted, h, need, checked):
        pair, cut = _weak_pair(h, scope, mode, need, rv)
        return Existence(False, cond, tuple(deleted), pair, cut, checked)

    if notion.part == "edge":
        if mode == "edge":
            cond = f"{pre}{k + l}-{flavour}-connected"
            if n == 1 and scope != "rooted":
                ok = k == 1 or int(np.sum(eu == ev)) >= k + l
                return Existence(ok, cond, checked=1)
            if _conn(n, eu, ev, scope, "edge", k + l, r_idx):
                return Existence(True, cond, checked=1)
            return fail(cond, (), g, k + l, 1)
        m = g.m
        cond = f"{pre}{k}-vertex-connected after deleting any {l} edges"
        _max_subsets_guard(subset_count(m, l), max_subsets)
        checked = 0
        eids = [e.id for e in g.edges]
        for size in range(min(l, m) + 1):
            for E in itertools.combinations(range(m), size):
                checked += 1
                keep = np.ones(m, dtype=bool)
                keep[list(E)] = False
                if not _conn(n, eu[keep], ev[keep], scope, "vertex", k, r_idx):
                    gone = [eids[i] for i in E]
                    h = g.subgraph(None, [x for x in eids if x not in gone])
                    return fail(cond, gone, h, k, checked)
        return Existence(True, cond, checked=checked)
    if notion.part == "vertex":
        cond = f"{pre}{k}-{flavour}-connected"
        if n <= 1 or _conn(n, eu, ev, scope, mode, k, r_idx):
            return Existence(True, cond, checked=1)
        return fail(cond, (), g, k, 1)
    # internal-vertex
    cond = f"{pre}{k}-{flavour}-connected after deleting any {l} vertices"
    candidates = [i for i in range(n) if i != r_idx]
    _max_subsets_guard(subset_count(len(candidates), l), max_subsets)
    checked = 0
    for size in range(min(l, len(candidates)) + 1):
        for V in itertools.combinations(candidates, size):
            checked += 1
            keep = np.ones(n, dtype=bool)
            keep[list(V)] = False
            nn = int(keep.sum())
            if nn <= 1 and scope != "rooted":
                continue
            idx = np.cumsum(keep) - 1
            sel = keep[eu] & keep[ev]
            ri = None if r_idx is None else int(idx[r_idx])
            if not _conn(nn, idx[eu[sel]], idx[ev[sel]], scope, mode, k, ri):
                gone = [g.vertex_ids[i] for i in V]
                h = g.subgraph([x for x in g.vertex_ids if x not in gone])
                return fail(cond, gone, h, k, checked)
    return Existence(True, cond, checked=checked)


def internal_vertex_sum_form(g: ColoredGraph, k: int, l: int) -> bool:
    """(k+l)-vertex connectivity, the textbook sufficient condition for the
    internally vertex-colored vertex-mode case. It differs from the exact
    condition on small graphs where all weak pairs are adjacent (K3, k=1, l=2)."""
    return gc.is_k_vertex_connected(g, k + l)


# ---------------------------------------------------------------- constructions


def min_courteous_coloring(g: ColoredGraph) -> ColoringResult:
    """Fewest colors so that removing any one color keeps the graph connected.

    Equals the fewest independent sets covering the cographic matroid.
    """
    if g.directed:
        raise ValueError("expects an undirected graph")
    if not gc.is_connected(g):
        raise Infeasible("graph is disconnected", Cut())
    if g.m == 0:
        return ColoringResult("edge", {}, {"blocks": []})
    cm = mt.cographic(g)
    bridges = mt.loops(cm)
    if bridges:
        raise Infeasible("graph has a bridge", Cut((), (g.edges[bridges[0]].id,)))
    res = mt.partition_min(cm)
    assign = {}
    for c, block in enumerate(res.blocks, 1):
        for i in block:
            assign[g.edges[i].id] = c
    cert = {"blocks": [[g.edges[i].id for i in b] for b in res.blocks],
            "oracle_calls": res.oracle_calls,
            "dense_set": sorted(g.edges[i].id for i in (res.witness or ()))}
    return ColoringResult("edge", assign, cert)


def arborescence_packing(d: ColoredGraph, k: int, root: int | None = None) -> list:
    """k arc-disjoint spanning arborescences out of the root, as lists of arc ids.

    Each arborescence grows one arc at a time; candidate arcs leave the reached
    set and are scanned by (tail, head, id). An arc is admitted only if a flow
    probe confirms the remaining arcs can still finish this arborescence and
    all later ones.
    """
    r = d.root if root is None else root
    if r is None:
        raise ValueError("a root is required")
    if not gc.is_rooted_k_arc_connected(d, k, r):
        v = next(x for x in d.vertex_ids
                 if x != r and gc.local_connectivity(d, r, x, "edge") < k)
        raise Infeasible(f"not rooted {k}-arc-connected", gc.min_cut_witness(d, "edge", r, v))
    n = d.n
    ix = d.index
    ri = ix[r]
    arcs = [e for e in d.edges if not e.is_loop]
    alive = {e.id for e in arcs}
    tail = {e.id: ix[e.u] for e in arcs}
    head = {e.id: ix[e.v] for e in arcs}
    order = sorted(arcs, key=lambda e: (ix[e.u], ix[e.v], e.id))

    def probe(live, reached, owed):
        ids = sorted(live)
        eu = np.array([tail[a] for a in ids], dtype=np.int64)
        ev = np.array([head[a] for a in ids], dtype=np.int64)
        if not gc.rooted_k(n, eu, ev, ri, owed - 1, "edge"):
            return False
        if len(reached) == n:
            return True
        inside = np.zeros(n, dtype=bool)
        inside[list(reached)] = True
        cu = np.where(inside[eu], ri, eu)
        cv = np.where(inside[ev], ri, ev)
        return all(gc.edge_flow(n, cu, cv, True, ri, t, owed) >= owed
                   for t in range(n) if not inside[t])

    trees = []
    for i in range(k):
        owed = k - i
        reached = {ri}
        tree = []
        while len(reached) < n:
            for e in order:
                a = e.id
                if a not in alive or tail[a] not in reached or head[a] in reached:
                    continue
                if probe(alive - {a}, reached | {head[a]}, owed):
                    alive.discard(a)
                    reached.add(head[a])
                    tree.append(a)
                    break
            else:  # pragma: no cover - excluded by the packing theorem
                raise AssertionError("arborescence growth got stuck")
        trees.append(tree)
    return trees


def rooted_ca_coloring(d: ColoredGraph, l: int, root: int | None = None) -> ColoringResult:
    """Color a rooted (l+1)-arc-connected digraph with l+1 colors so that
    removing any l colors keeps every vertex reachable from the root.

    Arborescence i gets color i; arcs outside the packing get color 1.
    """
    if not d.directed:
        raise ValueError("expects a digraph")
    trees = arborescence_packing(d, l + 1, root)
    assign = {e.id: 1 for e in d.edges}
    for c, tree in enumerate(trees, 1):
        for a in tree:
            assign[a] = c
    return ColoringResult("edge", assign, {"arborescences": trees})


def single_color_colorings(g: ColoredGraph, notion: Notion,
                           root: int | None = None) -> ColoringResult | None:
    """A valid one-color vertex coloring, or None if none exists.

    Vertex-colored notions need plain k-connectivity. Internally
    vertex-colored ones need every required pair to be joined by k parallel
    edges (arcs), since one removal wipes out all inner vertices.
    """
    if notion.part == "edge":
        raise ValueError("one-color constructions are for vertex-colored notions")
    r_idx = _root_idx(g, notion, root)
    if notion.part == "vertex":
        if not exists_ca_coloring(g, notion, root):
            return None
    else:
        mult = {}
        for e in g.edges:
            if e.is_loop:
                continue
            a, b = g.index[e.u], g.index[e.v]
            mult[(a, b)] = mult.get((a, b), 0) + 1
            if not g.directed:
                mult[(b, a)] = mult.get((b, a), 0) + 1
        n = g.n
        if notion.scope == "rooted":
            pairs = [(r_idx, v) for v in range(n) if v != r_idx]
        else:
            pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        if any(mult.get(p, 0) < notion.k for p in pairs):
            return None
    res = ColoringResult("vertex", {v: 1 for v in g.vertex_ids})
    assert verify(res.apply(g), notion, root=root).holds
    return res


# ---------------------------------------------------------------- exact search


def _rgs(m, c):
    """Restricted growth strings of length m using exactly c symbols."""
    a = [0] * m

    def rec(i, used):
        if m - i < c - used:
            return
        if i == m:
            if used == c:
                yield tuple(a)
            return
        for x in range(min(used + 1, c)):
            a[i] = x
            yield from rec(i + 1, max(used, x + 1))

    if m == 0:
        if c == 0:
            yield ()
        return
    yield from rec(0, 0)


def lower_bound(g: ColoredGraph, notion: Notion) -> int:
    if notion.part != "edge":
        return 1 if g.n else 0
    if g.n == 1 and notion.k == 1:
        return 0
    if g.n == 1 and notion.scope == "rooted":
        return 0
    return notion.l + 1 if g.m else 0


def _monotone(notion):
    # coloring more elements can only hurt for these parts
    return notion.part in ("edge", "internal-vertex")


def exact_min_colors(g: ColoredGraph, notion: Notion, *, budget: int = DEFAULT_BUDGET,
                     root: int | None = None, use_gate: bool = True,
                     max_colors: int | None = None) -> OptOutcome:
    """Fewest colors of a valid coloring by exhaustive canonical search.

    Colorings are enumerated as restricted growth strings (the first element
    gets color 1, each later one at most one more than the largest so far),
    for 1, 2, ... colors. ``budget`` caps the number of verifier calls.
    """
    kind = "edge" if notion.part == "edge" else "vertex"
    elems = [e.id for e in g.edges] if kind == "edge" else list(g.vertex_ids)
    m = len(elems)
    lb = lower_bound(g, notion)
    if use_gate and not exists_ca_coloring(g, notion, root):
        return OptOutcome("infeasible", None, lb, 0)
    calls = 0
    blank = {x: () for x in elems}
    top = m if max_colors is None else min(m, max_colors)

    def check(assign):
        nonlocal calls
        calls += 1
        h = g.with_edge_colors(assign) if kind == "edge" else g.with_vertex_colors(assign)
        return verify(h, notion, root=root).holds

    for c in range(lb, top + 1):
        if c == 0:
            if calls >= budget:
                return OptOutcome("budget-exhausted", None, lb, calls)
            if check(blank):
                return OptOutcome("optimal", ColoringResult(kind, {}), lb, calls)
            continue
        # depth-first over partial strings with optional pruning
        stack = [()]
        while stack:
            prefix = stack.pop()
            i = len(prefix)
            used = max(prefix) + 1 if prefix else 0
            if m - i < c - used:
                continue
            if calls >= budget:
                return OptOutcome("budget-exhausted", None, lb, calls)
            if i == m:
                assign = {elems[j]: prefix[j] + 1 for j in range(m)}
                if check(assign):
                    return OptOutcome("optimal", ColoringResult(kind, assign), lb, calls)
                continue
            if _monotone(notion) and 0 < i < m:
                partial = {elems[j]: prefix[j] + 1 for j in range(i)}
                if not check(partial):
                    continue
            for x in reversed(range(min(used + 1, c))):
                stack.append(prefix + (x,))
    return OptOutcome("infeasible", None, lb, calls)


def _mst_weight(vertices, edges):
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total, joined = Fraction(0), 0
    for e in sorted(edges, key=lambda e: (e.weight, e.id)):
        a, b = find(e.u), find(e.v)
        if a != b:
            parent[a] = b
            total += e.weight
            joined += 1
    return total if joined == len(parent) - 1 else None


def weighted_ca_coloring_exact(g: ColoredGraph, omega, c: int, l: int, *,
                               budget: int = DEFAULT_BUDGET) -> OptOutcome:
    """Color edges with at most c colors so that after removing any l colors a
    spanning tree of weight at most ``omega`` remains (``omega=None`` means no
    weight limit). Exhaustive over canonical colorings."""
    if any(e.weight is None for e in g.edges):
        raise ValueError("every edge needs a weight")
    omega = None if omega is None else Fraction(omega)
    elems = [e.id for e in g.edges]
    m = len(elems)
    explored = 0
    for used in range(0, min(c, m) + 1):
        for s in _rgs(m, used):
            if explored >= budget:
                return OptOutcome("budget-exhausted", None, 0, explored)
            explored += 1
            assign = {elems[j]: s[j] + 1 for j in range(m)}
            ok = True
            for size in range(min(l, used) + 1):
                for C in itertools.combinations(range(1, used + 1), size):
                    rest = [e for e in g.edges if assign[e.id] not in C]
                    w = _mst_weight(g.vertex_ids, rest)
                    if w is None or (omega is not None and w > omega):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return OptOutcome("feasible", ColoringResult("edge", assign), 0, explored)
    return OptOutcome("infeasible", None, 0, explored)
