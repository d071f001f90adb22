"""Matroid independence oracles and the partition / packing engine.

Elements are always ``0..size-1``. For the graph-backed families element i is
the i-th edge of the graph (in declaration order), not the edge id.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

from .graph import ColoredGraph


class MatroidError(ValueError):
    pass


def _forest(pairs) -> bool:
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def _components(vertices, pairs) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    c = len(parent)
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            c -= 1
    return c


class MatroidOracle:
    """Base class: subclasses implement ``_indep``; calls are memoised and counted."""

    size: int
    provenance: str = "abstract"

    def __init__(self):
        self._memo = {}
        self.calls = 0

    def is_independent(self, X) -> bool:
        X = frozenset(X)
        hit = self._memo.get(X)
        if hit is None:
            self.calls += 1
            hit = self._memo[X] = self._indep(X)
        return hit

    def _indep(self, X: frozenset) -> bool:
        raise NotImplementedError

    @property
    def ground(self) -> frozenset:
        return frozenset(range(self.size))

    def __repr__(self):
        return f"<{type(self).__name__} {self.provenance} on {self.size}>"


class GraphicMatroid(MatroidOracle):
    def __init__(self, g: ColoredGraph):
        super().__init__()
        self.graph = g
        self.ends = [(e.u, e.v) for e in g.edges]
        self.size = len(self.ends)
        self.provenance = f"graphic({g.name})"

    def _indep(self, X):
        return _forest(self.ends[i] for i in X)


class CographicMatroid(MatroidOracle):
    """X is independent when deleting X leaves the graph connected."""

    def __init__(self, g: ColoredGraph):
        super().__init__()
        self.graph = g
        self.ends = [(e.u, e.v) for e in g.edges]
        self.vertices = g.vertex_ids
        self.size = len(self.ends)
        self.provenance = f"cographic({g.name})"
        if _components(self.vertices, self.ends) > 1:
            raise MatroidError("cographic matroid needs a connected graph")

    def _indep(self, X):
        rest = (p for i, p in enumerate(self.ends) if i not in X)
        return _components(self.vertices, rest) == 1


class UniformMatroid(MatroidOracle):
    def __init__(self, r: int, n: int):
        super().__init__()
        if not 0 <= r <= n:
            raise MatroidError("uniform matroid needs 0 <= r <= n")
        self.r, self.size = r, n
        self.provenance = f"uniform({r},{n})"

    def _indep(self, X):
        return len(X) <= self.r


class ExplicitMatroid(MatroidOracle):
    """Independent sets are the subsets of the listed bases."""

    def __init__(self, size: int, bases, name: str = "explicit"):
        super().__init__()
        self.size = size
        self.bases = [frozenset(b) for b in bases]
        self.name = name
        self.provenance = f"explicit({name})"
        if not self.bases:
            raise MatroidError("an explicit matroid needs at least one basis")
        if len({len(b) for b in self.bases}) != 1:
            raise MatroidError("bases must all have the same size")
        if any(x >= size or x < 0 for b in self.bases for x in b):
            raise MatroidError("basis element outside the ground set")

    def _indep(self, X):
        return any(X <= b for b in self.bases)


class DualMatroid(MatroidOracle):
    """X is independent in the dual when its complement still spans."""

    def __init__(self, inner: MatroidOracle):
        super().__init__()
        self.inner = inner
        self.size = inner.size
        self.provenance = f"dual({inner.provenance})"
        self._full = rank(inner, inner.ground)

    def _indep(self, X):
        return rank(self.inner, self.inner.ground - X) == self._full


def dual(oracle: MatroidOracle) -> MatroidOracle:
    return DualMatroid(oracle)


def cographic(g: ColoredGraph) -> MatroidOracle:
    return CographicMatroid(g)


def graphic(g: ColoredGraph) -> MatroidOracle:
    return GraphicMatroid(g)


def uniform(r: int, n: int) -> MatroidOracle:
    return UniformMatroid(r, n)


def rank(oracle: MatroidOracle, X=None) -> int:
    """Greedy rank, scanning elements in increasing order."""
    X = oracle.ground if X is None else X
    base = set()
    for x in sorted(X):
        if oracle.is_independent(base | {x}):
            base.add(x)
    return len(base)


def loops(oracle: MatroidOracle) -> list:
    return [x for x in range(oracle.size) if not oracle.is_independent({x})]


def find_cut_at_most(oracle: MatroidOracle, l: int):
    """Smallest cut (inclusion-minimal set meeting every basis) of size <= l, or None.

    Sets are tried by size, then lexicographically.
    """
    full = rank(oracle)
    S = oracle.ground
    for size in range(1, min(l, oracle.size) + 1):
        for X in itertools.combinations(range(oracle.size), size):
            Xs = frozenset(X)
            if rank(oracle, S - Xs) < full and all(
                    rank(oracle, S - (Xs - {x})) == full for x in Xs):
                return X
    return None


def courteous_check(oracle: MatroidOracle, coloring, l: int):
    """Does every removal of at most l colors leave a spanning set?

    ``coloring`` maps element -> set of colors (an int is a single color).
    Returns (True, None) or (False, offending color tuple).
    """
    sets = {x: ({c} if isinstance(c, int) else set(c)) for x, c in coloring.items()}
    palette = sorted(set().union(*sets.values())) if sets else []
    full = rank(oracle)
    S = oracle.ground
    for size in range(min(l, len(palette)) + 1):
        for C in itertools.combinations(palette, size):
            gone = {x for x, cs in sets.items() if cs & set(C)}
            if rank(oracle, S - gone) < full:
                return False, C
    return True, None


# ---------------------------------------------------------------- partition engine


@dataclass
class PartitionResult:
    blocks: list
    oracle_calls: int
    witness: frozenset | None = None  # set X with |X| > (blocks-1) * r(X)

    @property
    def count(self) -> int:
        return len(self.blocks)


def _augment(oracle, blocks, x):
    """Try to insert x into the block family by a shortest exchange path.

    Nodes are elements; an arc y -> z exists when z sits in block i, y does not,
    and block_i - z + y is independent. y is a sink for block j when y is not
    in block j and block_j + y is independent. Returns True on success;
    otherwise returns the set of elements reachable from x.
    """
    where = {}
    for i, B in enumerate(blocks):
        for z in B:
            where[z] = i
    parent = {x: None}
    q = deque([x])
    while q:
        y = q.popleft()
        home = where.get(y)
        for j, B in enumerate(blocks):
            if j != home and oracle.is_independent(B | {y}):
                path = [y]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                blocks[j].add(y)
                for cur, prev in zip(path, path[1:]):
                    b = where[cur]
                    blocks[b].discard(cur)
                    blocks[b].add(prev)
                return True
        for j, B in enumerate(blocks):
            if j == home:
                continue
            for z in sorted(B):
                if z in parent:
                    continue
                if oracle.is_independent((B - {z}) | {y}):
                    parent[z] = y
                    q.append(z)
    return frozenset(parent)


def _run_engine(oracle, nblocks, grow):
    blocks: list = [set() for _ in range(nblocks)]
    stuck = []
    last_reach = frozenset()
    for x in range(oracle.size):
        out = _augment(oracle, blocks, x)
        if out is True:
            continue
        if grow:
            blocks.append({x})
            last_reach = out
        else:
            stuck.append(x)
    return blocks, stuck, last_reach


def partition_min(oracle: MatroidOracle) -> PartitionResult:
    """Cover the ground set with the fewest independent sets.

    Elements are inserted one at a time along shortest exchange paths; a new
    block is opened only when no path exists, in which case the reachable set
    X certifies |X| > (current blocks) * r(X). Fails on matroids with loops.
    """
    if loops(oracle):
        raise MatroidError("matroid has a loop; no partition into independent sets")
    before = oracle.calls
    blocks, _, witness = _run_engine(oracle, 0, grow=True)
    for B in blocks:
        assert oracle.is_independent(B)
    return PartitionResult([sorted(B) for B in blocks], oracle.calls - before,
                           witness or None)


@dataclass
class PackingResult:
    ok: bool
    bases: list
    oracle_calls: int
    blocking: frozenset | None = None  # X with |S-X| + k r(X) < k r(S)


def pack_k_bases(oracle: MatroidOracle, k: int) -> PackingResult:
    """Find k pairwise disjoint bases, or a set certifying there are none."""
    before = oracle.calls
    full = rank(oracle)
    blocks, stuck, _ = _run_engine(oracle, k, grow=False)
    ok = all(len(B) == full for B in blocks)
    blocking = None
    if not ok:
        # elements reachable from the uncovered ones in the final exchange graph
        blocking = _reachable_from(oracle, blocks, stuck)
    return PackingResult(ok, [sorted(B) for B in blocks], oracle.calls - before, blocking)


def _reachable_from(oracle, blocks, starts):
    seen = set(starts)
    q = deque(starts)
    where = {z: i for i, B in enumerate(blocks) for z in B}
    while q:
        y = q.popleft()
        home = where.get(y)
        for j, B in enumerate(blocks):
            if j == home:
                continue
            for z in B:
                if z not in seen and oracle.is_independent((B - {z}) | {y}):
                    seen.add(z)
                    q.append(z)
    return frozenset(seen)


def tree_packing_violation(g: ColoredGraph, k: int):
    """Edge ids F with |F| < k (c(G-F) - 1), or None when k disjoint spanning trees exist."""
    if _components(g.vertex_ids, [(e.u, e.v) for e in g.edges]) > 1:
        return ()
    res = pack_k_bases(GraphicMatroid(g), k)
    if res.ok:
        return None
    X = res.blocking
    parent = {v: v for v in g.vertex_ids}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for i in X:
        e = g.edges[i]
        ra, rb = find(e.u), find(e.v)
        if ra != rb:
            parent[ra] = rb
    return tuple(e.id for e in g.edges if find(e.u) != find(e.v))


# ---------------------------------------------------------------- I/O and axioms


def parse_matroid(text: str) -> ExplicitMatroid:
    name, size, bases = None, None, []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "matroid" and len(tok) == 2:
                name = tok[1]
            elif tok[0] == "elements" and len(tok) == 2:
                size = int(tok[1])
            elif tok[0] == "basis":
                bases.append([int(t) for t in tok[1:]])
            else:
                raise MatroidError(f"line {ln}: unexpected {line!r}")
        except ValueError as exc:
            raise MatroidError(f"line {ln}: {exc}") from None
    if name is None or size is None:
        raise MatroidError("missing 'matroid' or 'elements' line")
    return ExplicitMatroid(size, bases, name)


def serialize_matroid(m: ExplicitMatroid) -> str:
    lines = [f"matroid {m.name}", f"elements {m.size}"]
    for b in m.bases:
        lines.append("basis " + " ".join(str(x) for x in sorted(b)) if b else "basis")
    return "\n".join(lines) + "\n"


def bases_of(oracle: MatroidOracle) -> list:
    r = rank(oracle)
    return [frozenset(B) for B in itertools.combinations(range(oracle.size), r)
            if oracle.is_independent(B)]


def axiom_check(oracle: MatroidOracle, max_size: int = 10):
    """Exhaustively test the independence axioms. Returns (ok, message)."""
    n = oracle.size
    if n > max_size:
        raise MatroidError(f"axiom check limited to {max_size} elements")
    if not oracle.is_independent(()):
        return False, "empty set dependent"
    indep = [frozenset(X) for r in range(n + 1)
             for X in itertools.combinations(range(n), r) if oracle.is_independent(X)]
    ind = set(indep)
    for Y in indep:
        for y in Y:
            if Y - {y} not in ind:
                return False, f"not hereditary at {sorted(Y)}"
    for X in indep:
        for Y in indep:
            if len(X) < len(Y) and not any(X | {y} in ind for y in Y - X):
                return False, f"exchange fails for {sorted(X)}, {sorted(Y)}"
    return True, "ok"


def covering_bound(oracle: MatroidOracle) -> int:
    """max over nonempty X of ceil(|X| / r(X)) by enumeration (inf for loops)."""
    best = 0
    for r in range(1, oracle.size + 1):
        for X in itertools.combinations(range(oracle.size), r):
            rk = rank(oracle, X)
            if rk == 0:
                return math.inf
            best = max(best, -(-len(X) // rk))
    return best
