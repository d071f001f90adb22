"""Gadget builders for the hardness reductions, plus brute-force oracles.

Every builder returns a :class:`Gadget`: the constructed graph together with
human-readable vertex labels and an edge role table. Roles drive the forward
map from a source witness (truth assignment, orientation) to a target
orientation, and the backward map that reads a source witness off a target
orientation.

Edge roles:

``("var", i)``      the edge u_i v_i of variable i (stored as u_i -> v_i)
``("pair", fwd)``   one edge of a parallel pair; fwd tells its intended direction
``("root",)``       an edge leaving the root, stored root -> other end
``("link", eid)``   the gadget edge standing for source edge ``eid``
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import coloring as col
from . import graph as gc
from .graph import ColoredGraph, make_graph
from .orientation import Orientation, find_ca_orientation_exact
from .verify import Notion, verify


class ReductionError(ValueError):
    pass


# ---------------------------------------------------------------- source objects


@dataclass(frozen=True)
class NaeFormula:
    """Positive CNF formula read under not-all-equal semantics.

    Variables are numbered 1..n; each clause is a tuple of variable ids.
    """

    n: int
    clauses: tuple

    def __post_init__(self):
        cl = tuple(tuple(int(x) for x in c) for c in self.clauses)
        object.__setattr__(self, "clauses", cl)
        if not cl:
            raise ReductionError("formula has no clauses")
        for c in cl:
            if any(x <= 0 for x in c):
                raise ReductionError("negated literal in a positive formula")
            if any(x > self.n for x in c):
                raise ReductionError(f"variable out of range in clause {c}")
            if len(set(c)) != len(c):
                raise ReductionError(f"repeated variable in clause {c}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def positive(self) -> bool:
        return True

    @property
    def linear(self) -> bool:
        sets = [set(c) for c in self.clauses]
        return all(len(a & b) <= 1 for a, b in itertools.combinations(sets, 2))

    @property
    def exact4(self) -> bool:
        return all(len(self.occurs(i)) == 4 for i in range(1, self.n + 1))

    @property
    def toy(self) -> bool:
        """True unless the instance lies in the regime the hardness proof covers."""
        full = self.m >= 11 and all(len(c) == 3 for c in self.clauses)
        return not (full and self.linear and self.exact4)

    def occurs(self, i: int) -> tuple:
        """Clause indices (1-based) containing variable i."""
        return tuple(j for j, c in enumerate(self.clauses, 1) if i in c)

    def flags(self) -> dict:
        return {"positive": True, "linear": self.linear, "exact4": self.exact4,
                "toy": self.toy}


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph on vertices 0..n-1 with hyperedges of size at least two."""

    n: int
    edges: tuple

    def __post_init__(self):
        es = tuple(tuple(sorted(set(int(x) for x in e))) for e in self.edges)
        object.__setattr__(self, "edges", es)
        for e in es:
            if len(e) < 2:
                raise ReductionError(f"hyperedge {e} is a loop")
            if e[0] < 0 or e[-1] >= self.n:
                raise ReductionError(f"hyperedge {e} out of range")


def parse_nae(text: str) -> NaeFormula:
    n, clauses = None, []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "nae" and len(tok) == 2 and n is None:
                n = int(tok[1])
            elif tok[0] == "clause" and n is not None and len(tok) >= 2:
                clauses.append(tuple(int(x) for x in tok[1:]))
            else:
                raise ValueError
        except ValueError:
            raise gc.ParseError(ln, f"unexpected line {line!r}") from None
    if n is None:
        raise gc.ParseError(1, "missing 'nae <n>' header")
    return NaeFormula(n, tuple(clauses))


def serialize_nae(f: NaeFormula) -> str:
    return f"nae {f.n}\n" + "".join("clause " + " ".join(map(str, c)) + "\n"
                                    for c in f.clauses)


def parse_hypergraph(text: str) -> Hypergraph:
    n, edges = None, []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "hyp" and len(tok) == 2 and n is None:
                n = int(tok[1])
            elif tok[0] == "edge" and n is not None:
                edges.append(tuple(int(x) for x in tok[1:]))
            else:
                raise ValueError
        except ValueError:
            raise gc.ParseError(ln, f"unexpected line {line!r}") from None
    if n is None:
        raise gc.ParseError(1, "missing 'hyp <n>' header")
    return Hypergraph(n, tuple(edges))


def serialize_hypergraph(h: Hypergraph) -> str:
    return f"hyp {h.n}\n" + "".join("edge " + " ".join(map(str, e)) + "\n" for e in h.edges)


# ---------------------------------------------------------------- gadgets


@dataclass(frozen=True)
class Gadget:
    graph: ColoredGraph
    labels: dict = field(default_factory=dict)   # vertex id -> name
    roles: dict = field(default_factory=dict)    # edge id -> role tuple
    kind: str = ""
    regime: str = "exact"

    def vertex(self, label: str) -> int:
        for v, name in self.labels.items():
            if name == label:
                return v
        raise KeyError(label)


class _Builder:
    def __init__(self):
        self.labels = {}
        self.edges = []
        self.roles = {}
        self.vcolors = {}

    def add_vertex(self, label, colors=()):
        v = len(self.labels)
        self.labels[v] = label
        if colors:
            self.vcolors[v] = set(colors)
        return v

    def add_edge(self, u, v, colors=(), role=None):
        self.roles[len(self.edges)] = role
        self.edges.append((u, v, set(colors)))

    def add_pair(self, u, v, colors=()):
        self.add_edge(u, v, colors, ("pair", True))
        self.add_edge(u, v, colors, ("pair", False))

    def add_pair_path(self, u, v, color_seq, tag):
        """Path u .. v of parallel pairs, one color per pair."""
        cur = u
        for t, c in enumerate(color_seq):
            nxt = v if t == len(color_seq) - 1 else self.add_vertex(f"{tag}.{t + 1}")
            self.add_pair(cur, nxt, {c})
            cur = nxt

    def build(self, name, kind, *, directed=False, root=None, regime="exact"):
        g = make_graph(len(self.labels), self.edges, directed=directed, root=root,
                       name=name, vertex_colors=self.vcolors)
        return Gadget(g, dict(self.labels), dict(self.roles), kind, regime)


def build_hypergraph_gadget(h: Hypergraph, rooted: bool = False,
                            orient: bool = False) -> Gadget:
    """Clique on the hypergraph's vertices plus one hub vertex per hyperedge.

    ``rooted`` gives the digraph variant (every edge in both directions and a
    root arc to each original vertex). ``orient`` gives the undirected variant
    used for the orientation question: every edge doubled and a single root
    edge to each original vertex.
    """
    if rooted and orient:
        raise ValueError("choose at most one of rooted / orient")
    b = _Builder()
    for v in range(h.n):
        b.add_vertex(f"v{v}")
    hubs = [b.add_vertex(f"w{j}") for j in range(len(h.edges))]
    base = [(a, c) for a, c in itertools.combinations(range(h.n), 2)]
    base += [(v, hubs[j]) for j, e in enumerate(h.edges) for v in e]
    if rooted:
        r = b.add_vertex("r")
        for a, c in base:
            b.add_edge(a, c)
            b.add_edge(c, a)
        for v in range(h.n):
            b.add_edge(r, v, role=("root",))
        return b.build("hypergraph_rooted", "hypergraph-rooted", directed=True, root=r)
    if orient:
        r = b.add_vertex("r")
        for a, c in base:
            b.add_pair(a, c)
        for v in range(h.n):
            b.add_edge(r, v, role=("root",))
        return b.build("hypergraph_orient", "hypergraph-orient", root=r)
    for a, c in base:
        b.add_edge(a, c)
    return b.build("hypergraph", "hypergraph")


def _expand_lists(b: _Builder, empty_color: int):
    """Rewrite color-list edges so each edge carries exactly one color."""
    old_edges, old_roles = b.edges, b.roles
    b.edges, b.roles = [], {}
    i = 0
    while i < len(old_edges):
        u, v, cols = old_edges[i]
        role = old_roles[i]
        if role == ("pair", True):
            if len(cols) >= 2:
                b.add_pair_path(u, v, sorted(cols), f"{b.labels[u]}~{b.labels[v]}")
            else:
                b.add_pair(u, v, cols or {empty_color})
            i += 2
            continue
        b.add_edge(u, v, cols or {empty_color}, role)
        i += 1


def build_nae_gadget(f: NaeFormula, scope: str = "strong", expand: bool = False) -> Gadget:
    """Edge-colored graph whose color-avoiding orientations encode NAE assignments.

    Parallel pairs carry color lists (sets); ``expand`` rewrites them into
    paths of single-colored pairs.
    """
    if scope not in ("strong", "rooted"):
        raise ValueError("scope must be strong or rooted")
    n, m = f.n, f.m
    occ = {i: set(f.occurs(i)) for i in range(1, n + 1)}
    b = _Builder()
    regime = "toy" if f.toy else "exact"
    if scope == "strong":
        s = b.add_vertex("s")
        s1 = b.add_vertex("s'")
        u = {i: None for i in range(1, n + 1)}
        v = dict(u)
        for i in range(1, n + 1):
            u[i] = b.add_vertex(f"u{i}")
            v[i] = b.add_vertex(f"v{i}")
        w = {j: b.add_vertex(f"w{j}") for j in range(1, m + 1)}
        for i in range(1, n + 1):
            b.add_edge(u[i], v[i], (), ("var", i))
            b.add_pair(v[i], s1)
        for j in range(1, m + 1):
            b.add_pair(s, w[j], {j})
        for j, c in enumerate(f.clauses, 1):
            for i in sorted(c):
                b.add_pair(w[j], u[i], occ[i] - {j})
        if expand:
            original = list(b.labels)
            _expand_lists(b, m + 1)
            hub = b.add_vertex("s''")
            b.add_pair(hub, s, {m + 1})
            for x in original:
                b.add_pair_path(hub, x, range(1, m + 1), f"s''~{b.labels[x]}")
        return b.build("nae_strong", "nae-strong", regime=regime)

    r = b.add_vertex("r")
    u, v = {}, {}
    for i in range(1, n + 1):
        u[i] = b.add_vertex(f"u{i}")
        v[i] = b.add_vertex(f"v{i}")
    w = {j: b.add_vertex(f"w{j}") for j in range(1, m + 1)}
    w1 = {j: b.add_vertex(f"w'{j}") for j in range(1, m + 1)}
    for j in range(1, m + 1):
        b.add_edge(r, w[j], {j}, ("root",))
        b.add_edge(r, w1[j], {j + m}, ("root",))
    for i in range(1, n + 1):
        b.add_edge(u[i], v[i], (), ("var", i))
    for j, c in enumerate(f.clauses, 1):
        for i in sorted(c):
            rest = occ[i] - {j}
            b.add_pair(w[j], u[i], rest)
            b.add_pair(w1[j], v[i], {x + m for x in rest})
    if expand:
        _expand_lists(b, 2 * m + 1)
    return b.build("nae_rooted", "nae-rooted", root=r, regime=regime)


def build_edge_to_vertex_gadget(g: ColoredGraph, rooted: bool = False,
                                internal: bool = False, root: int | None = None) -> Gadget:
    """Turn an edge-colored graph into a vertex-colored one.

    Each edge e = uv becomes two adjacent vertices colored like e; every
    original vertex x gets two satellites x'' (color m+1) and x''' (color m+2),
    each joined by a parallel pair to every edge-vertex sitting at x.
    ``rooted`` drops r''' and roots the result at r''; with ``internal`` as
    well, r'' is recolored to m+3.
    """
    if g.directed:
        raise ValueError("expects an undirected graph")
    if g.n < 2:
        raise ReductionError("need at least two vertices")
    r = g.root if root is None else root
    if rooted and r is None:
        raise ValueError("rooted variant needs a root")
    m = max((c for e in g.edges for c in e.colors), default=0)
    b = _Builder()
    ends = {}
    for e in g.edges:
        ends[e.id] = (b.add_vertex(f"{e.u}'e{e.id}", e.colors),
                      b.add_vertex(f"{e.v}'e{e.id}", e.colors))
    two = {x: b.add_vertex(f"{x}''", {m + 3 if (rooted and internal and x == r) else m + 1})
           for x in g.vertex_ids}
    three = {x: b.add_vertex(f"{x}'''", {m + 2}) for x in g.vertex_ids
             if not (rooted and x == r)}
    for e in g.edges:
        a, c = ends[e.id]
        b.add_edge(a, c, (), ("link", e.id))
        for end, x in ((a, e.u), (c, e.v)):
            b.add_pair(end, two[x])
            if x in three:
                b.add_pair(end, three[x])
    if rooted:
        # r''' is never created, so ids stay dense
        return b.build(f"{g.name}_vertex_rooted", "edge-to-vertex-rooted", root=two[r])
    return b.build(f"{g.name}_vertex", "edge-to-vertex")


# ---------------------------------------------------------------- witness maps


def _assign_dict(f: NaeFormula | None, assignment) -> dict:
    if isinstance(assignment, dict):
        return {int(k): bool(v) for k, v in assignment.items()}
    return {i: bool(x) for i, x in enumerate(assignment, 1)}


def assignment_to_orientation(gadget: Gadget, f: NaeFormula | None, assignment) -> Orientation:
    """Orientation of a NAE gadget induced by a truth assignment."""
    a = _assign_dict(f, assignment)
    out = {}
    for eid, role in gadget.roles.items():
        if role[0] == "var":
            if role[1] not in a:
                raise ReductionError(f"assignment misses variable {role[1]}")
            out[eid] = a[role[1]]
        elif role[0] == "pair":
            out[eid] = role[1]
        elif role[0] == "root":
            out[eid] = True
        else:
            raise ReductionError(f"edge {eid} has no rule for role {role}")
    return Orientation.from_dict(out)


def orientation_to_assignment(gadget: Gadget, orientation: Orientation) -> dict:
    d = orientation.as_dict()
    return {role[1]: d[eid] for eid, role in sorted(gadget.roles.items())
            if role and role[0] == "var"}


def lift_orientation(gadget: Gadget, source: Orientation) -> Orientation:
    """Carry a source-graph orientation onto an edge-to-vertex gadget."""
    d = source.as_dict()
    out = {}
    for eid, role in gadget.roles.items():
        if role[0] == "link":
            out[eid] = d[role[1]]
        elif role[0] == "pair":
            out[eid] = role[1]
        elif role[0] == "root":
            out[eid] = True
        else:
            raise ReductionError(f"edge {eid} has no rule for role {role}")
    return Orientation.from_dict(out)


def project_orientation(gadget: Gadget, target: Orientation) -> Orientation:
    d = target.as_dict()
    return Orientation.from_dict({role[1]: d[eid] for eid, role in gadget.roles.items()
                                  if role[0] == "link"})


# ---------------------------------------------------------------- brute-force oracles


def brute_nae(f: NaeFormula):
    """First NAE-satisfying assignment (tuple of bools) in binary order, or None."""
    for bits in itertools.product((True, False), repeat=f.n):
        if all(len({bits[i - 1] for i in c}) == 2 for c in f.clauses):
            return bits
    return None


def brute_hyp2col(h: Hypergraph):
    """A proper 2-coloring (tuple of 0/1 per vertex) or None."""
    for bits in itertools.product((0, 1), repeat=h.n):
        if all(len({bits[v] for v in e}) == 2 for e in h.edges):
            return bits
    return None


def _hamiltonian_cycles(g: ColoredGraph):
    """Every Hamiltonian cycle as a frozenset of edge ids (multigraph aware)."""
    n = g.n
    ids = g.vertex_ids
    if n < 2:
        return []
    adj = {v: [] for v in ids}
    for e in g.edges:
        if not e.is_loop:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
    start = ids[0]
    found = set()
    path, used = [start], []

    def dfs(x):
        if len(path) == n:
            for y, eid in adj[x]:
                if y == start and (n > 2 or eid != used[0]):
                    found.add(frozenset(used + [eid]))
            return
        for y, eid in adj[x]:
            if y not in path:
                path.append(y)
                used.append(eid)
                dfs(y)
                path.pop()
                used.pop()

    dfs(start)
    return sorted(found, key=sorted)


def ham_decomposition(g: ColoredGraph):
    """Split a 4-regular graph into two edge-disjoint Hamiltonian cycles.

    Returns a pair of sorted edge-id tuples, or None.
    """
    if g.directed:
        raise ValueError("expects an undirected graph")
    if any(g.degree(v) != 4 for v in g.vertex_ids):
        raise ValueError("graph is not 4-regular")
    cycles = _hamiltonian_cycles(g)
    pool = set(cycles)
    everything = frozenset(e.id for e in g.edges)
    for c in cycles:
        rest = everything - c
        if rest in pool:
            return tuple(sorted(c)), tuple(sorted(rest))
    return None


def two_disjoint_strong_subdigraphs(d: ColoredGraph):
    """Two arc-disjoint strongly connected spanning subdigraphs, or None.

    Brute force over arc bipartitions (arcs outside both may be dropped, so
    checking a split of all arcs suffices by monotonicity).
    """
    if not d.directed:
        raise ValueError("expects a digraph")
    arcs = [e for e in d.edges if not e.is_loop]
    ids = d.vertex_ids

    def strong(sub):
        h = d.subgraph(ids, [e.id for e in sub])
        return gc.is_strongly_k_arc_connected(h, 1)

    for bits in itertools.product((0, 1), repeat=len(arcs)):
        if arcs and bits[0] == 1:
            continue  # swap symmetry
        a = [e for e, x in zip(arcs, bits) if x == 0]
        b = [e for e, x in zip(arcs, bits) if x == 1]
        if strong(a) and strong(b):
            return tuple(e.id for e in a), tuple(e.id for e in b)
    return None


def two_trees_within(g: ColoredGraph, omega):
    """Two edge-disjoint spanning trees each of weight at most omega, or None."""
    omega = Fraction(omega)
    ids = g.vertex_ids
    need = len(ids) - 1
    edges = list(g.edges)

    def is_tree(sub):
        if len(sub) != need:
            return False
        parent = {v: v for v in ids}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for e in sub:
            a, b = find(e.u), find(e.v)
            if a == b:
                return False
            parent[a] = b
        return True

    trees = [t for t in itertools.combinations(edges, need)
             if is_tree(t) and sum(e.weight for e in t) <= omega]
    for a, b in itertools.combinations(trees, 2):
        if not {e.id for e in a} & {e.id for e in b}:
            return tuple(e.id for e in a), tuple(e.id for e in b)
    return None


# ---------------------------------------------------------------- instance families


def hypergraphs(max_vertices: int, max_edges: int):
    """Every hypergraph (as a set of distinct hyperedges) within the bounds."""
    for n in range(1, max_vertices + 1):
        cand = [c for size in range(2, n + 1) for c in itertools.combinations(range(n), size)]
        for k in range(0, max_edges + 1):
            for es in itertools.combinations(cand, k):
                yield Hypergraph(n, es)


def colored_multigraphs(max_vertices: int, max_edges: int, colors: int, *,
                        min_vertices: int = 2, loops: bool = False):
    """Single-colored multigraphs: every multiset of (pair, color) slots."""
    for n in range(min_vertices, max_vertices + 1):
        pairs = [(a, b) for a in range(n) for b in range(a if loops else a + 1, n)]
        slots = [(a, b, c) for a, b in pairs for c in range(1, colors + 1)]
        for m in range(0, max_edges + 1):
            for es in itertools.combinations_with_replacement(slots, m):
                yield make_graph(n, list(es), name=f"n{n}")


def nae_formulas(max_vars: int, max_clauses: int, width=(2, 3)):
    """Positive formulas with distinct clauses of the given widths."""
    for n in range(2, max_vars + 1):
        cand = [c for w in width for c in itertools.combinations(range(1, n + 1), w)]
        for m in range(1, max_clauses + 1):
            for cl in itertools.combinations(cand, m):
                if set(itertools.chain(*cl)) == set(range(1, n + 1)):
                    yield NaeFormula(n, cl)


def four_regular_graphs():
    """A fixed family of small 4-regular (multi)graphs."""
    out = []
    for n in (3, 4, 5):
        es = [(i, (i + 1) % n) for i in range(n)]
        out.append(make_graph(n, es + es, name=f"doubled_c{n}"))
    out.append(make_graph(5, list(itertools.combinations(range(5), 2)), name="k5"))
    octa = [(a, b) for a, b in itertools.combinations(range(6), 2) if b - a != 3]
    out.append(make_graph(6, octa, name="octahedron"))
    for n in (6, 7):
        es = [(i, (i + d) % n) for d in (1, 2) for i in range(n)]
        out.append(make_graph(n, es, name=f"circulant_{n}_1_2"))
    # two tripled edges joined by a 2-edge cut: every Hamiltonian cycle uses both
    # crossing edges, so no decomposition exists
    es = [(0, 1)] * 3 + [(2, 3)] * 3 + [(0, 2), (1, 3)]
    out.append(make_graph(4, es, name="split_tripled_pairs"))
    return out


# ---------------------------------------------------------------- equivalence checks


@dataclass
class ReductionReport:
    family: str
    regime: str
    instances: int = 0
    agree: int = 0
    positives: int = 0
    counterexample: str | None = None
    forward_checked: int = 0
    forward_failures: int = 0
    notes: list = field(default_factory=list)
    asserted: bool = True  # False when instances lie outside the proof's hypotheses

    @property
    def ok(self) -> bool:
        return self.agree == self.instances and self.forward_failures == 0

    def to_json(self) -> dict:
        return {"family": self.family, "regime": self.regime, "instances": self.instances,
                "agree": self.agree, "positives": self.positives,
                "counterexample": self.counterexample,
                "forward_checked": self.forward_checked,
                "forward_failures": self.forward_failures, "ok": self.ok,
                "asserted": self.asserted,
                "notes": list(self.notes)}


IV1 = Notion("internal-vertex", "edge", 1, 1)
ARC_STRONG = Notion("edge", "edge", 1, 1, "strong")
ARC_ROOTED = Notion("edge", "edge", 1, 1, "rooted")


def _check_hypergraph(h: Hypergraph):
    src = brute_hyp2col(h)
    gd = build_hypergraph_gadget(h)
    out = col.exact_min_colors(gd.graph, IV1, max_colors=2, use_gate=False)
    tgt = out.status == "optimal"
    fwd = None
    if src is not None:
        colors = {v: src[v] + 1 for v in range(h.n)}
        colors.update({v: 1 for v in gd.graph.vertex_ids if v >= h.n})
        fwd = verify(gd.graph.with_vertex_colors(colors), IV1).holds
    return src is not None, tgt, fwd


def _check_hypergraph_rooted(h: Hypergraph):
    src = brute_hyp2col(h)
    gd = build_hypergraph_gadget(h, rooted=True)
    nt = Notion("internal-vertex", "edge", 1, 1, "rooted")
    out = col.exact_min_colors(gd.graph, nt, max_colors=2, use_gate=False)
    tgt = out.status == "optimal"
    fwd = None
    if src is not None:
        colors = {v: (src[v] + 1 if v < h.n else 1) for v in gd.graph.vertex_ids}
        fwd = verify(gd.graph.with_vertex_colors(colors), nt).holds
    return src is not None, tgt, fwd


def _check_hypergraph_orient(h: Hypergraph):
    from .orientation import orient_and_color
    src = brute_hyp2col(h)
    gd = build_hypergraph_gadget(h, orient=True)
    nt = Notion("internal-vertex", "edge", 1, 1, "rooted")
    tgt = orient_and_color(gd.graph, nt, 2).status == "found"
    fwd = None
    if src is not None:
        colors = {v: (src[v] + 1 if v < h.n else 1) for v in gd.graph.vertex_ids}
        o = assignment_to_orientation(gd, None, {})
        fwd = verify(o.apply(gd.graph.with_vertex_colors(colors)), nt).holds
    return src is not None, tgt, fwd


_E2V_TARGET = {
    "edge-to-vertex": (False, False, Notion("vertex", "edge", 1, 1, "strong")),
    "edge-to-vertex-rooted": (True, False, Notion("vertex", "edge", 1, 1, "rooted")),
    "edge-to-vertex-internal": (False, False, Notion("internal-vertex", "edge", 1, 1, "strong")),
    "edge-to-vertex-internal-rooted": (True, True,
                                       Notion("internal-vertex", "edge", 1, 1, "rooted")),
}


def _check_edge_to_vertex(args):
    family, g = args
    rooted, internal, nt = _E2V_TARGET[family]
    if rooted:
        g = g.with_root(g.vertex_ids[0])
    src_notion = ARC_ROOTED if rooted else ARC_STRONG
    src = find_ca_orientation_exact(g, src_notion, pair_dominance=False)
    gd = build_edge_to_vertex_gadget(g, rooted=rooted, internal=internal)
    tgt = find_ca_orientation_exact(gd.graph, nt)
    fwd = None
    if src.status == "found":
        fwd = verify(lift_orientation(gd, src.orientation).apply(gd.graph), nt).holds
    if tgt.status == "found" and fwd is not False:
        back = project_orientation(gd, tgt.orientation)
        fwd = verify(back.apply(g), src_notion).holds
    if "budget-exhausted" in (src.status, tgt.status):
        raise ReductionError("search budget exhausted")
    return src.status == "found", tgt.status == "found", fwd


def _check_nae(args):
    scope, f, expand = args
    src = brute_nae(f)
    gd = build_nae_gadget(f, scope, expand=expand)
    nt = ARC_STRONG if scope == "strong" else ARC_ROOTED
    tgt = find_ca_orientation_exact(gd.graph, nt)
    fwd = None
    if src is not None:
        fwd = verify(assignment_to_orientation(gd, f, src).apply(gd.graph), nt).holds
    return src is not None, tgt.status == "found", fwd


def _check_kotzig(g):
    src = ham_decomposition(g)
    out = col.exact_min_colors(g, Notion("edge", "edge", 2, 1), max_colors=2, use_gate=False)
    fwd = None
    if src is not None:
        a, b = src
        colors = {e: 1 for e in a} | {e: 2 for e in b}
        fwd = verify(g.with_edge_colors(colors), Notion("edge", "edge", 2, 1)).holds
    return src is not None, out.status == "optimal", fwd


def _weighted_instances(length, weights):
    for ws in itertools.product(weights, repeat=2 * length):
        es = []
        for i in range(length):
            es.append((i, i + 1, None, ws[2 * i]))
            es.append((i, i + 1, None, ws[2 * i + 1]))
        yield make_graph(length + 1, es, name="doubled_path")


def _check_weighted(args):
    g, omega = args
    src = two_trees_within(g, omega)
    out = col.weighted_ca_coloring_exact(g, omega, 2, 1)
    return src is not None, out.status == "feasible", None


def _small_digraphs(max_vertices, max_arcs):
    for n in range(2, max_vertices + 1):
        slots = [(a, b) for a in range(n) for b in range(n) if a != b]
        for m in range(n, max_arcs + 1):
            for es in itertools.combinations_with_replacement(slots, m):
                yield make_graph(n, list(es), directed=True, name=f"d{n}")


def _check_yeo(d):
    src = two_disjoint_strong_subdigraphs(d)
    out = col.exact_min_colors(d, ARC_STRONG, max_colors=2, use_gate=False)
    return src is not None, out.status == "optimal", None


FAMILIES = ("hypergraph", "hypergraph-rooted", "hypergraph-orient", "edge-to-vertex",
            "edge-to-vertex-rooted", "edge-to-vertex-internal",
            "edge-to-vertex-internal-rooted", "nae-strong", "nae-rooted",
            "kotzig", "weighted", "yeo")

DEFAULT_BOUNDS = {
    "hypergraph": {"vertices": 4, "edges": 3},
    "hypergraph-rooted": {"vertices": 4, "edges": 3},
    "hypergraph-orient": {"vertices": 3, "edges": 2},
    "edge-to-vertex": {"vertices": 4, "edges": 4, "colors": 2},
    "nae-strong": {"vars": 4, "clauses": 3, "linear": True},
    "nae-rooted": {"vars": 4, "clauses": 3, "linear": True},
    "kotzig": {},
    "weighted": {"length": 2, "weights": (1, 2, 3)},
    "yeo": {"vertices": 3, "arcs": 6},
}
for _f in ("edge-to-vertex-rooted", "edge-to-vertex-internal", "edge-to-vertex-internal-rooted"):
    DEFAULT_BOUNDS[_f] = DEFAULT_BOUNDS["edge-to-vertex"]

HARD_LIMITS = {"vertices": 5, "edges": 5, "vars": 6, "clauses": 4, "arcs": 7, "length": 3}


def _instances(family, b):
    if family.startswith("hypergraph"):
        fn = {"hypergraph": _check_hypergraph, "hypergraph-rooted": _check_hypergraph_rooted,
              "hypergraph-orient": _check_hypergraph_orient}[family]
        return fn, list(hypergraphs(b["vertices"], b["edges"])), serialize_hypergraph
    if family.startswith("edge-to-vertex"):
        gs = colored_multigraphs(b["vertices"], b["edges"], b.get("colors", 2))
        return (_check_edge_to_vertex, [(family, g) for g in gs],
                lambda a: gc.serialize(a[1]))
    if family.startswith("nae"):
        scope = family.split("-")[1]
        fs = [f for f in nae_formulas(b["vars"], b["clauses"], tuple(b.get("width", (2, 3))))
              if f.linear or not b.get("linear", False)]
        return (_check_nae, [(scope, f, b.get("expand", False)) for f in fs],
                lambda a: serialize_nae(a[1]))
    if family == "kotzig":
        return _check_kotzig, four_regular_graphs(), gc.serialize
    if family == "weighted":
        ws, ln = tuple(b["weights"]), b["length"]
        omegas = range(ln * min(ws), ln * max(ws) + 1)
        items = [(g, om) for g in _weighted_instances(ln, ws) for om in omegas]
        return _check_weighted, items, lambda a: gc.serialize(a[0]) + f"omega {a[1]}\n"
    if family == "yeo":
        return _check_yeo, list(_small_digraphs(b["vertices"], b["arcs"])), gc.serialize
    raise ValueError(f"unknown family {family!r}")


def check_reduction(family: str, bounds: dict | None = None, jobs: int = 1) -> ReductionReport:
    """Compare a source-side oracle with a target-side solver on a bounded family.

    Also checks the forward map (source witness to target witness) wherever
    the family has one. Bounds beyond ``HARD_LIMITS`` are refused.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    b = dict(DEFAULT_BOUNDS.get(family, {}))
    b.update(bounds or {})
    for key, cap in HARD_LIMITS.items():
        if key in b and b[key] > cap:
            raise ReductionError(f"bound {key}={b[key]} exceeds the limit {cap}")
    fn, items, show = _instances(family, b)
    rep = ReductionReport(family, "exhaustive")
    if family.startswith("nae"):
        # desk-scale formulas are far below the clause count the construction
        # relies on, so agreement here is measured, not promised
        rep.regime = "toy"
        rep.asserted = False
        rep.notes.append("instances are below the clause count the construction needs")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(fn, items, chunksize=16))
    else:
        results = [fn(x) for x in items]
    for item, (src, tgt, fwd) in zip(items, results):
        rep.instances += 1
        rep.positives += bool(src)
        if src == tgt:
            rep.agree += 1
        elif rep.counterexample is None:
            rep.counterexample = show(item)
        if fwd is not None:
            rep.forward_checked += 1
            rep.forward_failures += not fwd
    return rep
