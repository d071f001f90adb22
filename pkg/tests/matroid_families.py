"""Seeded random and structured matroid oracles on at most 8 elements."""

import itertools
import random

from caconn import matroid as mt
from caconn.graph import make_graph


def _random_graph(rng, connected):
    while True:
        n = rng.randint(2, 5)
        m = rng.randint(1, 8)
        es = [tuple(rng.sample(range(n), 2)) for _ in range(m)]
        g = make_graph(n, es)
        if not connected or mt._components(g.vertex_ids, es) == 1:
            return g


def structured():
    out = [mt.uniform(r, n) for n in range(1, 9) for r in range(1, n + 1)]
    for n in range(3, 7):
        cyc = make_graph(n, [(i, (i + 1) % n) for i in range(n)], name=f"c{n}")
        out += [mt.graphic(cyc), mt.cographic(cyc), mt.dual(mt.graphic(cyc))]
    k4 = make_graph(4, list(itertools.combinations(range(4), 2)), name="k4")
    out += [mt.graphic(k4), mt.cographic(k4), mt.dual(mt.dual(mt.graphic(k4)))]
    return out


def random_oracles(count=240, seed=2024):
    rng = random.Random(seed)
    out = []
    kinds = ["graphic", "cographic", "dual", "explicit", "uniform"]
    for i in range(count):
        kind = kinds[i % len(kinds)]
        if kind == "graphic":
            g = _random_graph(rng, connected=False)
            if any(e.is_loop for e in g.edges):
                continue
            out.append(mt.graphic(g))
        elif kind == "cographic":
            out.append(mt.cographic(_random_graph(rng, connected=True)))
        elif kind == "dual":
            out.append(mt.dual(mt.graphic(_random_graph(rng, connected=True))))
        elif kind == "explicit":
            inner = mt.graphic(_random_graph(rng, connected=False))
            out.append(mt.ExplicitMatroid(inner.size, mt.bases_of(inner), f"x{i}"))
        else:
            n = rng.randint(1, 8)
            out.append(mt.uniform(rng.randint(1, n), n))
    return out


def loopless(oracles):
    return [o for o in oracles if not mt.loops(o)]
