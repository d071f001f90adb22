import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from caconn import figures
from caconn import graph as gc
from caconn.graph import make_graph, parse
from caconn.verify import (GuardError, Notion, equivalence_suite, subset_count, verify,
                           verify_pair)
from figure_facts import FACTS
from strategies import colored_graphs


@pytest.mark.parametrize("stem, part, mode, k, l, scope, expected", FACTS)
def test_figure_fact(stem, part, mode, k, l, scope, expected):
    g = parse(figures.fixture_text(f"{stem}.cg"))
    assert verify(g, Notion(part, mode, k, l, scope)).holds is expected


def test_fig2_third_witness():
    g3 = figures.fig2()[2]
    v = verify(g3, Notion("edge", "edge", 1, 2))
    assert not v.holds
    assert set(v.colors) == {figures.RED, figures.GREEN}
    assert v.pair is not None and v.cut.size == 0


def test_uncolored_matches_plain():
    g = figures.fig1()
    for k in (1, 2, 3):
        for l in (1, 2):
            assert verify(g, Notion("edge", "edge", k, l)).holds == gc.is_k_edge_connected(g, k)


def test_incompatible_scope():
    with pytest.raises(ValueError):
        verify(figures.fig1(), Notion(scope="strong"))
    with pytest.raises(ValueError):
        verify(figures.bidirected_triangle().with_root(None), Notion(scope="rooted"))


def test_guard():
    g = make_graph(2, [(0, 1, c) for c in range(1, 30)])
    nt = Notion("edge", "edge", 1, 3)
    assert subset_count(29, 3) > 1000
    with pytest.raises(GuardError):
        verify(g, nt, max_subsets=1000)
    # 29 parallel edges survive any 3 removed colors
    assert verify(g, nt).holds


def test_verdict_json_shape():
    v = verify(figures.fig2()[0], Notion())
    js = v.to_json()
    assert list(js) == ["holds", "notion", "witness"]
    assert js["witness"]["colors"] == [figures.RED]
    assert set(js["witness"]["cut"]) == {"vertices", "edges"}


# ---------------------------------------------------------------- pair queries


def test_pair_examples():
    mid = figures.fig4()[1]
    nt = Notion("internal-vertex", "edge", 1, 1)
    assert not verify_pair(mid, nt, 0, 2).holds
    assert verify_pair(mid, nt, 0, 1).holds
    tri = figures.fig4()[0]
    for u, v in itertools.permutations(range(3), 2):
        assert verify_pair(tri, Notion("internal-vertex", "edge", 1, 2), u, v).holds
        assert verify_pair(tri, Notion("vertex", "edge", 1, 2), u, v).holds


def test_pair_rejects_equal_endpoints():
    with pytest.raises(ValueError):
        verify_pair(figures.fig1(), Notion(), 0, 0)


# ---------------------------------------------------------------- brute-force agreement

NOTIONS = [(p, m, sc) for p in ("edge", "vertex", "internal-vertex") for m in ("edge", "vertex")
           for sc in ("undirected", "strong", "rooted")]


def _instance(data, part, scope, max_n=4, max_m=6):
    return data.draw(colored_graphs(max_n=max_n, max_m=max_m, max_colors=3,
                                    directed=scope != "undirected",
                                    vertex_colors=part != "edge", rooted=scope == "rooted"))


@settings(max_examples=300)
@given(st.sampled_from(NOTIONS), st.integers(1, 2), st.integers(0, 2), st.data())
def test_verify_matches_definition(notion, k, l, data):
    part, mode, scope = notion
    g = _instance(data, part, scope)
    got = verify(g, Notion(part, mode, k, l, scope)).holds
    assert got == oracles.ca_holds(g, part, mode, k, l, scope)


@settings(max_examples=150)
@given(st.sampled_from(NOTIONS), st.integers(1, 2), st.integers(1, 2), st.data())
def test_witness_replays(notion, k, l, data):
    part, mode, scope = notion
    g = _instance(data, part, scope)
    v = verify(g, Notion(part, mode, k, l, scope))
    if v.holds:
        return
    C = set(v.colors)
    u, w = v.pair
    if part == "edge":
        h = gc.remove_colors(g, C)
    else:
        keep = [x.id for x in g.vertices if x.id in (u, w) or not (x.colors & C)]
        h = g.subgraph(keep_vertices=keep)
    assert gc.local_connectivity(h, u, w, mode) < k
    assert v.cut.size == gc.local_connectivity(h, u, w, mode)
    cut_v, cut_e = set(v.cut.vertices), set(v.cut.edges)
    rest = h.subgraph(keep_vertices=[x for x in h.vertex_ids if x not in cut_v],
                      keep_edges=[e.id for e in h.edges if e.id not in cut_e])
    assert not oracles.reaches(rest.vertex_ids, [(e.u, e.v) for e in rest.edges], u, w,
                               scope != "undirected")


@settings(max_examples=120)
@given(st.sampled_from(NOTIONS), st.data())
def test_downward_monotone(notion, data):
    part, mode, scope = notion
    g = _instance(data, part, scope, max_m=7)
    table = {(k, l): verify(g, Notion(part, mode, k, l, scope)).holds
             for k in (1, 2, 3) for l in (0, 1, 2)}
    for (k, l), ok in table.items():
        if ok:
            assert all(table[kk, ll] for kk in range(1, k + 1) for ll in range(l + 1))


@settings(max_examples=120)
@given(colored_graphs(max_n=4, max_m=7, max_colors=3), st.integers(1, 2), st.integers(1, 2),
       st.data())
def test_refining_a_color_keeps_verdict(g, k, l, data):
    nt = Notion("edge", "edge", k, l)
    if not verify(g, nt).holds or not g.edge_palette():
        return
    c = data.draw(st.sampled_from(g.edge_palette()))
    fresh = max(g.edge_palette()) + 1
    flips = data.draw(st.lists(st.booleans(), min_size=g.m, max_size=g.m))
    recol = {e.id: ({fresh} if flip and c in e.colors else e.colors)
             for e, flip in zip(g.edges, flips)}
    assert verify(g.with_edge_colors(recol), nt).holds


def _simple_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [p for i, p in enumerate(pairs) if mask >> i & 1]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_unique_colors_shift_k(n):
    # one private color per edge: removing l colors is removing l edges
    for es in _simple_graphs(n):
        g = make_graph(n, [(u, v, i + 1) for i, (u, v) in enumerate(es)])
        for k, l in ((1, 1), (1, 2), (2, 1)):
            assert verify(g, Notion("edge", "edge", k, l)).holds == \
                gc.is_k_edge_connected(g, k + l)


@settings(max_examples=100)
@given(colored_graphs(max_n=5, max_m=8, vertex_colors=True), st.integers(1, 2),
       st.sampled_from(["edge", "vertex"]))
def test_single_vertex_color_is_plain(g, k, mode):
    g = g.with_vertex_colors({v: {1} for v in g.vertex_ids})
    plain = gc.is_k_edge_connected(g, k) if mode == "edge" else gc.is_k_vertex_connected(g, k)
    assert verify(g, Notion("vertex", mode, k, 1)).holds == plain


@settings(max_examples=100)
@given(st.sampled_from(NOTIONS), st.integers(1, 2), st.data())
def test_uncolored_any_notion(notion, k, data):
    part, mode, scope = notion
    g = _instance(data, "edge", scope, max_n=5)
    g = g.with_edge_colors({e.id: frozenset() for e in g.edges})
    want = oracles.k_connected(g.vertex_ids, [(e.u, e.v) for e in g.edges], k, mode, scope,
                               g.root)
    assert verify(g, Notion(part, mode, k, 2, scope)).holds == want


# ---------------------------------------------------------------- equivalence suite


def test_suite_triangle():
    rep = equivalence_suite(figures.fig4()[0])
    assert rep["vertex_vs_internal"]["status"] == "agree"
    assert rep["vertex_vs_internal"]["values"] == {"vertex": True, "internal": True}


def test_suite_single_vertex_out_of_scope():
    rep = equivalence_suite(make_graph(1, [], vertex_colors={0: 1}))
    assert all(r["status"] == "skipped" for r in rep.values())
    assert all("proposition scope" in r["reason"] for r in rep.values())


def test_suite_rejects_digraph():
    with pytest.raises(ValueError):
        equivalence_suite(figures.bidirected_triangle())


@settings(max_examples=200)
@given(colored_graphs(max_n=4, max_m=5, max_colors=3), st.data())
def test_suite_never_disagrees(g, data):
    vc = {v: data.draw(st.integers(1, 3)) for v in g.vertex_ids}
    rep = equivalence_suite(g.with_vertex_colors(vc))
    assert all(r["status"] != "disagree" for r in rep.values()), rep
