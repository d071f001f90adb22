"""Colored multigraphs and digraphs, their text format, and connectivity tests.

Conventions used throughout the package:

* an element (vertex or edge) carries a *set* of colors; the empty set means
  the element survives every color removal;
* a graph is k-edge- (k-vertex-) connected when it has at least two vertices
  and any two vertices are joined by k edge-disjoint (internally
  vertex-disjoint) paths, or when it is a single vertex with at least k
  loops.  Parallel edges count as separate paths, loops never carry flow;
* digraph analogues: strongly k-arc-connected (ordered pairs) and r-rooted
  k-arc-connected (k arc-disjoint paths from r to every vertex).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from . import kernels


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


@dataclass(frozen=True)
class Vertex:
    id: int
    colors: frozenset = frozenset()


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    colors: frozenset = frozenset()
    weight: Fraction | None = None

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class Cut:
    """A set of vertices and edges whose removal separates something."""

    vertices: tuple = ()
    edges: tuple = ()

    @property
    def size(self) -> int:
        return len(self.vertices) + len(self.edges)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}


@dataclass(frozen=True)
class ColoredGraph:
    vertices: tuple
    edges: tuple
    name: str = "g"
    directed: bool = False
    root: int | None = None

    def __post_init__(self):
        vs = tuple(sorted(self.vertices, key=lambda x: x.id))
        object.__setattr__(self, "vertices", vs)
        ids = [v.id for v in vs]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex id")
        known = set(ids)
        for e in self.edges:
            if e.u not in known or e.v not in known:
                raise ValueError(f"edge {e.id} has an undeclared endpoint")
        if self.root is not None and self.root not in known:
            raise ValueError(f"root {self.root} is not a vertex")

    # ---- basic accessors

    @cached_property
    def vertex_ids(self) -> tuple:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertex_ids)}

    @cached_property
    def _vmap(self) -> dict:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _emap(self) -> dict:
        return {e.id: e for e in self.edges}

    def vertex(self, vid: int) -> Vertex:
        return self._vmap[vid]

    def edge(self, eid: int) -> Edge:
        return self._emap[eid]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_palette(self) -> tuple:
        return tuple(sorted(set().union(*(e.colors for e in self.edges))))

    def vertex_palette(self) -> tuple:
        return tuple(sorted(set().union(*(v.colors for v in self.vertices))))

    def degree(self, vid: int) -> int:
        return sum((e.u == vid) + (e.v == vid) for e in self.edges)

    # ---- derived graphs

    def subgraph(self, keep_vertices: Iterable[int] | None = None,
                 keep_edges: Iterable[int] | None = None) -> "ColoredGraph":
        """Induced on ``keep_vertices`` and restricted to ``keep_edges``; ids are kept."""
        kv = set(self.vertex_ids if keep_vertices is None else keep_vertices)
        ke = None if keep_edges is None else set(keep_edges)
        vs = tuple(v for v in self.vertices if v.id in kv)
        es = tuple(e for e in self.edges
                   if e.u in kv and e.v in kv and (ke is None or e.id in ke))
        root = self.root if self.root in kv else None
        return replace(self, vertices=vs, edges=es, root=root)

    def with_edge_colors(self, colors: dict) -> "ColoredGraph":
        es = tuple(replace(e, colors=frozenset(_as_set(colors.get(e.id, ()))))
                   for e in self.edges)
        return replace(self, edges=es)

    def with_vertex_colors(self, colors: dict) -> "ColoredGraph":
        vs = tuple(replace(v, colors=frozenset(_as_set(colors.get(v.id, ()))))
                   for v in self.vertices)
        return replace(self, vertices=vs)

    def with_root(self, root: int | None) -> "ColoredGraph":
        return replace(self, root=root)

    def underlying(self) -> "ColoredGraph":
        return replace(self, directed=False)

    # ---- array views for the kernels

    @cached_property
    def _ends(self) -> tuple:
        ix = self.index
        eu = np.array([ix[e.u] for e in self.edges], dtype=np.int64)
        ev = np.array([ix[e.v] for e in self.edges], dtype=np.int64)
        return eu, ev

    @cached_property
    def _edge_color_masks(self) -> dict:
        out = {}
        for i, e in enumerate(self.edges):
            for c in e.colors:
                out.setdefault(c, np.zeros(self.m, dtype=bool))[i] = True
        return out

    @cached_property
    def _vertex_color_masks(self) -> dict:
        out = {}
        for i, v in enumerate(self.vertices):
            for c in v.colors:
                out.setdefault(c, np.zeros(self.n, dtype=bool))[i] = True
        return out

    def edge_mask_without(self, colors) -> np.ndarray:
        alive = np.ones(self.m, dtype=bool)
        masks = self._edge_color_masks
        for c in colors:
            if c in masks:
                alive &= ~masks[c]
        return alive

    def vertex_mask_without(self, colors) -> np.ndarray:
        alive = np.ones(self.n, dtype=bool)
        masks = self._vertex_color_masks
        for c in colors:
            if c in masks:
                alive &= ~masks[c]
        return alive


def ColoredDigraph(vertices, edges, name="g", root=None) -> ColoredGraph:
    return ColoredGraph(tuple(vertices), tuple(edges), name=name, directed=True, root=root)


def _as_set(c):
    if isinstance(c, int):
        return {c}
    return set(c)


def make_graph(n_or_ids, edges, *, directed=False, root=None, name="g",
               vertex_colors=None) -> ColoredGraph:
    """Convenience builder.

    ``edges`` holds ``(u, v)`` or ``(u, v, colors)`` or ``(u, v, colors, weight)``
    tuples; colors may be an int or an iterable. Edge ids follow list order.
    """
    ids = range(n_or_ids) if isinstance(n_or_ids, int) else n_or_ids
    vc = vertex_colors or {}
    vs = tuple(Vertex(i, frozenset(_as_set(vc.get(i, ())))) for i in ids)
    es = []
    for i, t in enumerate(edges):
        u, v = t[0], t[1]
        cols = frozenset(_as_set(t[2])) if len(t) > 2 and t[2] is not None else frozenset()
        w = Fraction(t[3]) if len(t) > 3 and t[3] is not None else None
        es.append(Edge(i, u, v, cols, w))
    return ColoredGraph(vs, tuple(es), name=name, directed=directed, root=root)


# ---------------------------------------------------------------- text format

_TOKEN_C = re.compile(r"^c=(\d+(,\d+)*)?$")


def _parse_colors(tok: str, line: int) -> frozenset:
    if not _TOKEN_C.match(tok):
        raise ParseError(line, f"bad color list {tok!r}")
    body = tok[2:]
    return frozenset(int(x) for x in body.split(",")) if body else frozenset()


def _parse_int(tok: str, line: int, what: str) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise ParseError(line, f"bad {what} {tok!r}")
    return int(tok)


def parse(text: str, implicit_vertices: bool | None = None) -> ColoredGraph:
    """Read the line-oriented graph format.

    When the file has no ``vertex`` lines, vertices come from the edge
    endpoints. Otherwise every endpoint must be declared unless
    ``implicit_vertices`` is true.
    """
    name = None
    directed = None
    root = None
    root_line = 0
    verts: dict = {}
    raw_edges = []
    saw_vertex = False
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head == "graph":
            if len(tok) != 2 or name is not None:
                raise ParseError(ln, "expected a single 'graph <name>' line")
            name = tok[1]
        elif head == "directed":
            if len(tok) != 2 or tok[1] not in ("0", "1"):
                raise ParseError(ln, "expected 'directed 0|1'")
            directed = tok[1] == "1"
        elif head == "root":
            if len(tok) != 2:
                raise ParseError(ln, "expected 'root <id>'")
            root = _parse_int(tok[1], ln, "root")
            root_line = ln
        elif head == "vertex":
            if len(tok) not in (2, 3):
                raise ParseError(ln, "expected 'vertex <id> [c=...]'")
            vid = _parse_int(tok[1], ln, "vertex id")
            if vid in verts:
                raise ParseError(ln, f"duplicate vertex {vid}")
            cols = _parse_colors(tok[2], ln) if len(tok) == 3 else frozenset()
            verts[vid] = cols
            saw_vertex = True
        elif head == "edge":
            if len(tok) < 3:
                raise ParseError(ln, "expected 'edge <u> <v> [w=..] [c=..]'")
            u = _parse_int(tok[1], ln, "endpoint")
            v = _parse_int(tok[2], ln, "endpoint")
            w = None
            cols = frozenset()
            for t in tok[3:]:
                if t.startswith("w=") and w is None:
                    try:
                        w = Fraction(t[2:])
                    except (ValueError, ZeroDivisionError):
                        raise ParseError(ln, f"bad weight {t!r}") from None
                elif t.startswith("c="):
                    cols = _parse_colors(t, ln)
                else:
                    raise ParseError(ln, f"unexpected token {t!r}")
            raw_edges.append((ln, u, v, cols, w))
        else:
            raise ParseError(ln, f"unknown directive {head!r}")
    if name is None:
        raise ParseError(1, "missing 'graph <name>' header")
    if directed is None:
        raise ParseError(1, "missing 'directed 0|1' line")
    if root is not None and not directed:
        raise ParseError(root_line, "root declared on an undirected graph")
    weighted = {w is not None for *_, w in raw_edges}
    if len(weighted) > 1:
        first = next(ln for ln, *_, w in raw_edges if w is None)
        raise ParseError(first, "weights must be given on all edges or none")
    implicit = (not saw_vertex) if implicit_vertices is None else implicit_vertices
    edges = []
    for i, (ln, u, v, cols, w) in enumerate(raw_edges):
        for x in (u, v):
            if x not in verts:
                if not implicit:
                    raise ParseError(ln, f"endpoint {x} is not a declared vertex")
                verts[x] = frozenset()
        edges.append(Edge(i, u, v, cols, w))
    if root is not None and root not in verts:
        if not implicit:
            raise ParseError(root_line, f"root {root} is not a declared vertex")
        verts[root] = frozenset()
    vs = tuple(Vertex(k, c) for k, c in verts.items())
    return ColoredGraph(vs, tuple(edges), name=name, directed=directed, root=root)


def format_weight(w: Fraction) -> str:
    w = Fraction(w)
    d = w.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{w.numerator}/{w.denominator}"
    if w.denominator == 1:
        return str(w.numerator)
    places = max(twos, fives)
    scaled = abs(w.numerator) * (10 ** places) // w.denominator
    s = str(scaled).rjust(places + 1, "0")
    out = f"{s[:-places]}.{s[-places:]}"
    return ("-" if w < 0 else "") + out


def _fmt_colors(cols) -> str:
    return "c=" + ",".join(str(c) for c in sorted(cols))


def serialize(g: ColoredGraph) -> str:
    lines = [f"graph {g.name}", f"directed {int(g.directed)}"]
    # the format only carries roots on digraphs; undirected roots travel as --root
    if g.root is not None and g.directed:
        lines.append(f"root {g.root}")
    for v in g.vertices:
        lines.append(f"vertex {v.id}" + (f" {_fmt_colors(v.colors)}" if v.colors else ""))
    for e in g.edges:
        s = f"edge {e.u} {e.v}"
        if e.weight is not None:
            s += f" w={format_weight(e.weight)}"
        if e.colors:
            s += f" {_fmt_colors(e.colors)}"
        lines.append(s)
    return "\n".join(lines) + "\n"


def remove_colors(g: ColoredGraph, colors, part: str = "edge") -> ColoredGraph:
    """Delete every edge (or vertex, with ``part='vertex'``) touching ``colors``."""
    colors = set(colors)
    if part == "edge":
        return g.subgraph(keep_edges=[e.id for e in g.edges if not (e.colors & colors)])
    if part == "vertex":
        return g.subgraph(keep_vertices=[v.id for v in g.vertices if not (v.colors & colors)])
    raise ValueError(f"unknown part {part!r}")


def remove_vertex(g: ColoredGraph, vid: int) -> ColoredGraph:
    return g.subgraph(keep_vertices=[x for x in g.vertex_ids if x != vid])


# ---------------------------------------------------------------- flow networks
#
# The helpers below work on index-level data: n vertices 0..n-1, int arrays
# eu/ev of edge endpoints (loops allowed, they are dropped), and a flag for
# direction. They are what the CA verifier calls in its inner loops.


def _strip_loops(eu, ev):
    keep = eu != ev
    return eu[keep], ev[keep]


def _edge_net(eu, ev, directed):
    eu, ev = _strip_loops(eu, ev)
    if directed:
        return eu, ev
    return np.concatenate([eu, ev]), np.concatenate([ev, eu])


def edge_flow(n, eu, ev, directed, s, t, limit):
    tail, head = _edge_net(eu, ev, directed)
    f, _ = kernels.maxflow(n, tail, head, np.ones(len(tail), dtype=np.int64), s, t, limit)
    return f


def _split_net(n, eu, ev, directed, s, t, edge_cap, limit):
    eu, ev = _strip_loops(eu, ev)
    big = max(limit, 1) + len(eu) + n
    vin = np.arange(n, dtype=np.int64) * 2
    vcap = np.ones(n, dtype=np.int64)
    vcap[s] = big
    vcap[t] = big
    tails = [vin, 2 * eu + 1]
    heads = [vin + 1, 2 * ev]
    caps = [vcap, np.full(len(eu), edge_cap, dtype=np.int64)]
    if not directed:
        tails.append(2 * ev + 1)
        heads.append(2 * eu)
        caps.append(np.full(len(eu), edge_cap, dtype=np.int64))
    return np.concatenate(tails), np.concatenate(heads), np.concatenate(caps), big


def vertex_flow(n, eu, ev, directed, s, t, limit):
    """Max number of internally vertex-disjoint s-t paths (edges used once)."""
    tail, head, cap, _ = _split_net(n, eu, ev, directed, s, t, 1, limit)
    f, _ = kernels.maxflow(2 * n, tail, head, cap, 2 * s + 1, 2 * t, limit)
    return f


def connected(n, eu, ev) -> bool:
    """Weak connectivity; the empty and one-vertex graphs count as connected."""
    if n <= 1:
        return True
    return kernels.components(n, eu, ev) == 1


def strongly_connected(n, eu, ev) -> bool:
    if n <= 1:
        return True
    eu, ev = _strip_loops(eu, ev)
    if not kernels.reach(n, eu, ev, 0).all():
        return False
    return bool(kernels.reach(n, ev, eu, 0).all())


def rooted_reach(n, eu, ev, r) -> bool:
    eu, ev = _strip_loops(eu, ev)
    return bool(kernels.reach(n, eu, ev, r).all())


def edge_k(n, eu, ev, directed, k, *, k1_trivial=False) -> bool:
    """k-edge (or strong k-arc) connectivity under the package conventions."""
    if n == 0:
        return False
    if n == 1:
        if k1_trivial and k <= 1:
            return True
        return int(np.sum(eu == ev)) >= k
    if k <= 0:
        return True
    if k == 1:
        return strongly_connected(n, eu, ev) if directed else connected(n, eu, ev)
    for t in range(1, n):
        if edge_flow(n, eu, ev, directed, 0, t, k) < k:
            return False
        if directed and edge_flow(n, eu, ev, directed, t, 0, k) < k:
            return False
    return True


def vertex_k(n, eu, ev, directed, k, *, k1_trivial=False) -> bool:
    if n == 0:
        return False
    if n == 1:
        if k1_trivial and k <= 1:
            return True
        return int(np.sum(eu == ev)) >= k
    if k <= 0:
        return True
    if k == 1:
        return strongly_connected(n, eu, ev) if directed else connected(n, eu, ev)
    for s in range(n):
        for t in range(n):
            if s == t or (not directed and t < s):
                continue
            if vertex_flow(n, eu, ev, directed, s, t, k) < k:
                return False
    return True


def rooted_k(n, eu, ev, r, k, mode="edge") -> bool:
    """Every vertex receives k disjoint paths from r (vacuous on one vertex)."""
    if k <= 0 or n <= 1:
        return True
    if k == 1:
        return rooted_reach(n, eu, ev, r)
    flow = edge_flow if mode == "edge" else vertex_flow
    return all(flow(n, eu, ev, True, r, t, k) >= k for t in range(n) if t != r)


# ---------------------------------------------------------------- public predicates


def _view(g: ColoredGraph):
    eu, ev = g._ends
    return g.n, eu, ev


def is_connected(g: ColoredGraph) -> bool:
    n, eu, ev = _view(g)
    return connected(n, eu, ev)


def is_k_edge_connected(g: ColoredGraph, k: int) -> bool:
    n, eu, ev = _view(g)
    return edge_k(n, eu, ev, False, k)


def is_k_vertex_connected(g: ColoredGraph, k: int) -> bool:
    n, eu, ev = _view(g)
    return vertex_k(n, eu, ev, False, k)


def is_strongly_k_arc_connected(d: ColoredGraph, k: int) -> bool:
    n, eu, ev = _view(d)
    return edge_k(n, eu, ev, True, k)


def is_strongly_k_vertex_connected(d: ColoredGraph, k: int) -> bool:
    n, eu, ev = _view(d)
    return vertex_k(n, eu, ev, True, k)


def _root_index(d: ColoredGraph, r):
    r = d.root if r is None else r
    if r is None:
        raise ValueError("a root is required")
    return d.index[r]


def is_rooted_k_arc_connected(d: ColoredGraph, k: int, r: int | None = None) -> bool:
    n, eu, ev = _view(d)
    return rooted_k(n, eu, ev, _root_index(d, r), k, "edge")


def is_rooted_k_vertex_connected(d: ColoredGraph, k: int, r: int | None = None) -> bool:
    n, eu, ev = _view(d)
    return rooted_k(n, eu, ev, _root_index(d, r), k, "vertex")


def local_connectivity(g: ColoredGraph, s: int, t: int, mode: str = "edge") -> int:
    """Number of disjoint s-t paths (edge-disjoint or internally vertex-disjoint)."""
    n, eu, ev = _view(g)
    ix = g.index
    cap = len(g.edges) + 1
    flow = edge_flow if mode == "edge" else vertex_flow
    return flow(n, eu, ev, g.directed, ix[s], ix[t], cap)


def min_cut_witness(g: ColoredGraph, kind: str, s: int, t: int) -> Cut:
    """A minimum s-t cut.

    ``kind`` is ``edge`` (edges or arcs), ``vertex`` (vertices only; s and t
    must not be adjacent) or ``mixed`` (vertices and edges, matching the
    internally-disjoint path count). Arc direction follows ``g.directed``.
    """
    n, eu, ev = _view(g)
    ix = g.index
    si, ti = ix[s], ix[t]
    if si == ti:
        raise ValueError("s and t must differ")
    eids = np.array([e.id for e in g.edges], dtype=np.int64)
    keep = eu != ev
    eu, ev, eids = eu[keep], ev[keep], eids[keep]
    if kind == "edge":
        tail, head = _edge_net(eu, ev, g.directed)
        _, side = kernels.maxflow(n, tail, head, np.ones(len(tail), dtype=np.int64),
                                  si, ti, len(eu) + 1)
        if g.directed:
            hit = side[eu] & ~side[ev]
        else:
            hit = side[eu] != side[ev]
        return Cut((), tuple(int(x) for x in eids[hit]))
    if kind in ("vertex", "mixed"):
        if kind == "vertex":
            adj = ((eu == si) & (ev == ti)) | ((eu == ti) & (ev == si) & (not g.directed))
            if adj.any():
                raise ValueError("s and t are adjacent; no vertex cut separates them")
        limit = len(eu) + n + 1
        ecap = 1 if kind == "mixed" else limit
        tail, head, cap, _ = _split_net(n, eu, ev, g.directed, si, ti, ecap, limit)
        _, side = kernels.maxflow(2 * n, tail, head, cap, 2 * si + 1, 2 * ti, limit)
        vin, vout = side[0::2], side[1::2]
        vcut = [g.vertex_ids[i] for i in range(n) if vin[i] and not vout[i]]
        hit = side[2 * eu + 1] & ~side[2 * ev]
        if not g.directed:
            hit |= side[2 * ev + 1] & ~side[2 * eu]
        return Cut(tuple(vcut), tuple(int(x) for x in eids[hit]))
    raise ValueError(f"unknown cut kind {kind!r}")


# ---------------------------------------------------------------- generators


def random_colored_graph(n: int, m: int, palette, seed: int, mode: str = "uniform",
                         trees: int = 2, directed: bool = False,
                         name: str = "random") -> ColoredGraph:
    """Seeded random loopless multigraph with one color per edge.

    ``uniform`` picks endpoints and colors uniformly. ``per-tree`` first lays
    down ``trees`` random spanning trees, gives tree i the i-th palette color
    and colors the remaining edges uniformly.
    """
    rng = np.random.default_rng(seed)
    palette = list(palette)
    if n < 1 or (n == 1 and m > 0):
        raise ValueError("need n >= 2 to place loopless edges")
    edges = []
    if mode == "per-tree":
        if len(palette) < trees:
            raise ValueError("palette smaller than the number of trees")
        if m < trees * (n - 1):
            raise ValueError("too few edges for the requested tree packing")
        for i in range(trees):
            order = rng.permutation(n).tolist()
            for j in range(1, n):
                p = order[int(rng.integers(0, j))]
                a, b = p, order[j]
                if directed and rng.random() < 0.5:
                    a, b = b, a
                edges.append((a, b, palette[i]))
    elif mode != "uniform":
        raise ValueError(f"unknown mode {mode!r}")
    while len(edges) < m:
        a, b = rng.choice(n, size=2, replace=False).tolist()
        edges.append((a, b, palette[int(rng.integers(0, len(palette)))]))
    return make_graph(n, edges, directed=directed, name=name)


def random_colored_digraph(n, m, palette, seed, mode="uniform", trees=2, name="random"):
    return random_colored_graph(n, m, palette, seed, mode, trees, directed=True, name=name)


def random_rooted_digraph(n: int, k: int, extra: int, seed: int, root: int = 0,
                          name: str = "rooted") -> ColoredGraph:
    """Union of k random spanning arborescences out of ``root`` plus random arcs.

    The result is root-k-arc-connected by construction. Arcs are uncolored.
    """
    rng = np.random.default_rng(seed)
    arcs = []
    others = [v for v in range(n) if v != root]
    for _ in range(k):
        order = [root] + rng.permutation(others).tolist()
        for j in range(1, n):
            arcs.append((order[int(rng.integers(0, j))], order[j]))
    for _ in range(extra):
        a, b = rng.choice(n, size=2, replace=False).tolist()
        arcs.append((a, b))
    perm = rng.permutation(len(arcs)).tolist()
    return make_graph(n, [arcs[i] for i in perm], directed=True, root=root, name=name)
