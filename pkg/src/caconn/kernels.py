"""Hot inner loops: unit-capacity max-flow, reachability and component counts.

Every kernel exists twice. The ``_jit_*`` versions are compiled with numba
when it is importable; the ``_py_*`` versions are plain Python over lists and
numpy arrays. Setting ``CACONN_NO_JIT=1`` in the environment forces the
fallback. Both paths take the same arguments and return the same values, and
the test-suite checks that they agree.

Graphs are passed as flat int64 arrays: ``tail``/``head`` for arcs (an
undirected edge is passed as two opposite arcs by the caller) and ``cap`` for
arc capacities.
"""

from __future__ import annotations

import os
from collections import deque

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USE_JIT = HAVE_NUMBA and os.environ.get("CACONN_NO_JIT", "") not in ("1", "true", "yes")


# ---------------------------------------------------------------- fallback


def _py_maxflow(n, tail, head, cap, s, t, limit):
    """Augmenting-path max-flow from s to t, stopping once ``limit`` is reached.

    Returns ``(value, side)`` where ``side`` marks the nodes reachable from s in
    the final residual network (a minimum cut when value < limit).
    """
    tail = tail.tolist()
    head = head.tolist()
    res = []
    to = []
    adj = [[] for _ in range(n)]
    for i, (u, v) in enumerate(zip(tail, head)):
        adj[u].append(2 * i)
        adj[v].append(2 * i + 1)
        to.append(v)
        to.append(u)
        res.append(int(cap[i]))
        res.append(0)
    flow = 0
    side = [False] * n
    while True:
        parent = [-1] * n
        side = [False] * n
        side[s] = True
        q = deque([s])
        while q and not side[t]:
            x = q.popleft()
            for a in adj[x]:
                y = to[a]
                if res[a] > 0 and not side[y]:
                    side[y] = True
                    parent[y] = a
                    q.append(y)
        if not side[t] or flow >= limit:
            break
        b = limit - flow
        y = t
        while y != s:
            a = parent[y]
            if res[a] < b:
                b = res[a]
            y = to[a ^ 1]
        y = t
        while y != s:
            a = parent[y]
            res[a] -= b
            res[a ^ 1] += b
            y = to[a ^ 1]
        flow += b
    return flow, np.array(side, dtype=np.bool_)


def _py_reach(n, tail, head, s):
    """Nodes reachable from s along arcs."""
    adj = [[] for _ in range(n)]
    for u, v in zip(tail.tolist(), head.tolist()):
        adj[u].append(v)
    seen = np.zeros(n, dtype=np.bool_)
    seen[s] = True
    q = deque([s])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                q.append(y)
    return seen


def _py_components(n, eu, ev):
    """Number of connected components of an undirected multigraph on n nodes."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in zip(eu.tolist(), ev.tolist()):
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            comps -= 1
    return comps


def _py_internal_pairs(n, tail, head, deleted):
    """For every ordered pair (u, v), can u reach v using only undeleted inner nodes?

    The endpoints themselves may be deleted; only intermediate nodes must
    survive. Returns an n-by-n boolean matrix.
    """
    adj = [[] for _ in range(n)]
    for u, v in zip(tail.tolist(), head.tolist()):
        adj[u].append(v)
    dl = deleted.tolist()
    out = np.zeros((n, n), dtype=np.bool_)
    for s in range(n):
        seen = [False] * n
        seen[s] = True
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                out[s, y] = True
                if not seen[y] and not dl[y]:
                    seen[y] = True
                    q.append(y)
    return out


# ---------------------------------------------------------------- numba


@njit(cache=True)
def _jit_maxflow(n, tail, head, cap, s, t, limit):
    m = tail.shape[0]
    deg = np.zeros(n + 1, dtype=np.int64)
    for i in range(m):
        deg[tail[i] + 1] += 1
        deg[head[i] + 1] += 1
    for i in range(n):
        deg[i + 1] += deg[i]
    fill = deg[:n].copy()
    slots = np.empty(2 * m, dtype=np.int64)
    to = np.empty(2 * m, dtype=np.int64)
    res = np.empty(2 * m, dtype=np.int64)
    for i in range(m):
        u = tail[i]
        v = head[i]
        slots[fill[u]] = 2 * i
        fill[u] += 1
        slots[fill[v]] = 2 * i + 1
        fill[v] += 1
        to[2 * i] = v
        to[2 * i + 1] = u
        res[2 * i] = cap[i]
        res[2 * i + 1] = 0
    flow = 0
    parent = np.empty(n, dtype=np.int64)
    side = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    while True:
        for i in range(n):
            parent[i] = -1
            side[i] = False
        side[s] = True
        qh = 0
        qt = 0
        queue[qt] = s
        qt += 1
        while qh < qt and not side[t]:
            x = queue[qh]
            qh += 1
            for j in range(deg[x], deg[x + 1]):
                a = slots[j]
                y = to[a]
                if res[a] > 0 and not side[y]:
                    side[y] = True
                    parent[y] = a
                    queue[qt] = y
                    qt += 1
        if not side[t] or flow >= limit:
            break
        b = limit - flow
        y = t
        while y != s:
            a = parent[y]
            if res[a] < b:
                b = res[a]
            y = to[a ^ 1]
        y = t
        while y != s:
            a = parent[y]
            res[a] -= b
            res[a ^ 1] += b
            y = to[a ^ 1]
        flow += b
    return flow, side


@njit(cache=True)
def _jit_reach(n, tail, head, s):
    m = tail.shape[0]
    deg = np.zeros(n + 1, dtype=np.int64)
    for i in range(m):
        deg[tail[i] + 1] += 1
    for i in range(n):
        deg[i + 1] += deg[i]
    fill = deg[:n].copy()
    nbr = np.empty(m, dtype=np.int64)
    for i in range(m):
        nbr[fill[tail[i]]] = head[i]
        fill[tail[i]] += 1
    seen = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    seen[s] = True
    queue[0] = s
    qh = 0
    qt = 1
    while qh < qt:
        x = queue[qh]
        qh += 1
        for j in range(deg[x], deg[x + 1]):
            y = nbr[j]
            if not seen[y]:
                seen[y] = True
                queue[qt] = y
                qt += 1
    return seen


@njit(cache=True)
def _jit_components(n, eu, ev):
    parent = np.arange(n)
    comps = n
    for i in range(eu.shape[0]):
        a = eu[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ev[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[a] = b
            comps -= 1
    return comps


@njit(cache=True)
def _jit_internal_pairs(n, tail, head, deleted):
    m = tail.shape[0]
    deg = np.zeros(n + 1, dtype=np.int64)
    for i in range(m):
        deg[tail[i] + 1] += 1
    for i in range(n):
        deg[i + 1] += deg[i]
    fill = deg[:n].copy()
    nbr = np.empty(m, dtype=np.int64)
    for i in range(m):
        nbr[fill[tail[i]]] = head[i]
        fill[tail[i]] += 1
    out = np.zeros((n, n), dtype=np.bool_)
    seen = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        for i in range(n):
            seen[i] = False
        seen[s] = True
        queue[0] = s
        qh = 0
        qt = 1
        while qh < qt:
            x = queue[qh]
            qh += 1
            for j in range(deg[x], deg[x + 1]):
                y = nbr[j]
                out[s, y] = True
                if not seen[y] and not deleted[y]:
                    seen[y] = True
                    queue[qt] = y
                    qt += 1
    return out


# ---------------------------------------------------------------- dispatch

_I64 = np.int64


def _arr(x):
    return np.ascontiguousarray(x, dtype=_I64)


def maxflow(n, tail, head, cap, s, t, limit):
    """Max-flow value (capped at ``limit``) and source side of a residual cut."""
    tail, head, cap = _arr(tail), _arr(head), _arr(cap)
    if USE_JIT:
        f, side = _jit_maxflow(_I64(n), tail, head, cap, _I64(s), _I64(t), _I64(limit))
        return int(f), side
    return _py_maxflow(n, tail, head, cap, s, t, limit)


def reach(n, tail, head, s):
    tail, head = _arr(tail), _arr(head)
    if USE_JIT:
        return _jit_reach(_I64(n), tail, head, _I64(s))
    return _py_reach(n, tail, head, s)


def components(n, eu, ev):
    eu, ev = _arr(eu), _arr(ev)
    if USE_JIT:
        return int(_jit_components(_I64(n), eu, ev))
    return _py_components(n, eu, ev)


def internal_pairs(n, tail, head, deleted):
    tail, head = _arr(tail), _arr(head)
    deleted = np.ascontiguousarray(deleted, dtype=np.bool_)
    if USE_JIT:
        return _jit_internal_pairs(_I64(n), tail, head, deleted)
    return _py_internal_pairs(n, tail, head, deleted)


def backend() -> str:
    return "numba" if USE_JIT else "python"
