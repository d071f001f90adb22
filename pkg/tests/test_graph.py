import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from caconn import figures
from caconn import graph as gc
from caconn.graph import ParseError, make_graph, parse, serialize
from caconn.verify import Notion, verify
from strategies import colored_graphs


def path3():
    return make_graph(3, [(0, 1), (1, 2)])


# ---------------------------------------------------------------- text format


def test_parse_minimal():
    g = parse("graph t\ndirected 0\nedge 0 1 c=3")
    assert g.n == 2 and g.m == 1
    assert g.edges[0].colors == {3}
    assert not g.directed


def test_parse_fig2_triangle():
    text = "graph g2\ndirected 0\nedge 0 1 c=2\nedge 0 2 c=1\nedge 1 2 c=3\n"
    g = parse(text)
    assert g.n == 3
    assert sorted(tuple(e.colors)[0] for e in g.edges) == [1, 2, 3]


def test_dangling_endpoint():
    text = "graph t\ndirected 0\nvertex 0\nvertex 1\nedge 0 5 c=1\n"
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == 5


@pytest.mark.parametrize("text, line", [
    ("graph t\ndirected 0\nvertex 0\nvertex 0\n", 4),
    ("graph t\ndirected 0\nroot 0\nvertex 0\n", 3),
    ("graph t\ndirected 2\n", 2),
    ("graph t\ndirected 0\nedge 0 x\n", 3),
    ("graph t\ndirected 0\nedge 0 1 c=a\n", 3),
    ("graph t\ndirected 0\nfrobnicate\n", 3),
])
def test_malformed_lines(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line


def test_empty_graph_serializes_to_header():
    g = make_graph(0, [], name="empty")
    assert serialize(g) == "graph empty\ndirected 0\n"


def test_fig1_roundtrip():
    g = figures.fig1()
    h = parse(serialize(g))
    assert [(e.id, e.u, e.v) for e in h.edges] == [(e.id, e.u, e.v) for e in g.edges]
    assert h.m == 5 and h.n == 4
    assert serialize(h) == serialize(g)


def test_weights_on_every_edge():
    g = make_graph(2, [(0, 1, 1, Fraction(1, 2)), (0, 1, 2, 3)])
    text = serialize(g)
    assert sum("w=" in ln for ln in text.splitlines()) == 2
    h = parse(text)
    assert [e.weight for e in h.edges] == [Fraction(1, 2), 3]


def test_partial_weights_rejected():
    with pytest.raises(ParseError):
        parse("graph t\ndirected 0\nedge 0 1 w=1\nedge 0 1\n")


def test_comments_and_root():
    g = parse("# hello\ngraph d\ndirected 1\nroot 1\nedge 1 0 c=1 # arc\n")
    assert g.directed and g.root == 1


@settings(max_examples=80)
@given(colored_graphs(max_n=5, max_m=6, loops=True))
def test_roundtrip_property(g):
    h = parse(serialize(g))
    assert h.vertex_ids == g.vertex_ids
    assert [(e.id, e.u, e.v, e.colors, e.weight) for e in h.edges] == \
        [(e.id, e.u, e.v, e.colors, e.weight) for e in g.edges]
    assert serialize(h) == serialize(g)


@settings(max_examples=40)
@given(colored_graphs(max_n=4, max_m=5, directed=True, vertex_colors=True, rooted=True))
def test_roundtrip_directed_vertex_colored(g):
    h = parse(serialize(g))
    assert h == g


# ---------------------------------------------------------------- color removal


def test_remove_red_isolates_top():
    g1 = figures.fig2()[0]
    h = gc.remove_colors(g1, {figures.RED})
    assert h.n == 3 and h.m == 1
    assert not gc.is_connected(h)


def test_remove_nothing():
    g = figures.fig2()[3]
    assert gc.remove_colors(g, set()) == g


def test_multicolored_edge_removed():
    g = make_graph(2, [(0, 1, {1, 2})])
    assert gc.remove_colors(g, {2}).m == 0


def test_uncolored_edge_survives():
    g = make_graph(2, [(0, 1), (0, 1, 1)])
    h = gc.remove_colors(g, {1, 2, 3})
    assert [e.id for e in h.edges] == [0]


def test_remove_vertex_colors():
    g = figures.fig4()[2]
    h = gc.remove_colors(g, {figures.BLUE}, "vertex")
    assert h.vertex_ids == (0, 2) and h.m == 0


@settings(max_examples=60)
@given(colored_graphs(max_n=4, max_m=7, max_colors=4),
       st.sets(st.integers(1, 4)), st.sets(st.integers(1, 4)))
def test_removal_composes(g, A, B):
    one = gc.remove_colors(g, A | B)
    two = gc.remove_colors(gc.remove_colors(g, A), B)
    assert one == two


# ---------------------------------------------------------------- predicates


def test_cycle_two_edge_connected():
    assert gc.is_k_edge_connected(figures.c4(), 2)


def test_fig1_edge_connectivity():
    g = figures.fig1()
    assert gc.is_k_edge_connected(g, 2)
    assert not gc.is_k_edge_connected(g, 3)


def test_one_vertex_conventions():
    loops = make_graph(1, [(0, 0), (0, 0)])
    assert gc.is_k_edge_connected(loops, 2)
    assert not gc.is_k_edge_connected(loops, 3)
    assert not gc.is_k_edge_connected(make_graph(1, []), 1)


def test_two_vertex_parallel_vertex_connected():
    g = make_graph(2, [(0, 1), (0, 1)])
    assert gc.is_k_vertex_connected(g, 2)
    assert not gc.is_k_vertex_connected(g, 3)


def test_k4_vertex_connectivity():
    assert gc.is_k_vertex_connected(figures.k4(), 3)
    assert not gc.is_k_vertex_connected(figures.k4(), 4)


def test_path_not_two_connected():
    assert not gc.is_k_vertex_connected(path3(), 2)
    assert gc.is_k_vertex_connected(path3(), 1)


def test_directed_triangle():
    d = make_graph(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert gc.is_strongly_k_arc_connected(d, 1)
    assert not gc.is_strongly_k_arc_connected(d, 2)


def test_fig5_rooted():
    # flow truth for the uncolored digraph: every nonempty set avoiding the
    # root has in-degree at least 2, and the root has a vertex of in-degree 2
    d = figures.fig5()[0]
    assert gc.is_rooted_k_arc_connected(d, 1)
    assert gc.is_rooted_k_arc_connected(d, 2)
    assert not gc.is_rooted_k_arc_connected(d, 3)
    assert not verify(d, Notion("edge", "edge", 2, 1, "rooted")).holds


def test_two_parallel_arcs_rooted():
    d = make_graph(2, [(0, 1), (0, 1)], directed=True, root=0)
    assert gc.is_rooted_k_arc_connected(d, 2)
    assert not gc.is_rooted_k_arc_connected(d.with_root(1), 1)


def test_disconnected_is_not_connected():
    g = make_graph(4, [(0, 1), (2, 3)])
    assert not gc.is_k_edge_connected(g, 1)
    assert not gc.is_k_vertex_connected(g, 1)


_PRED = {
    ("edge", "undirected"): gc.is_k_edge_connected,
    ("vertex", "undirected"): gc.is_k_vertex_connected,
    ("edge", "strong"): gc.is_strongly_k_arc_connected,
    ("vertex", "strong"): gc.is_strongly_k_vertex_connected,
    ("edge", "rooted"): gc.is_rooted_k_arc_connected,
    ("vertex", "rooted"): gc.is_rooted_k_vertex_connected,
}


@settings(max_examples=150)
@given(st.sampled_from(sorted(_PRED)), st.integers(1, 3), st.data())
def test_predicates_match_bruteforce(key, k, data):
    mode, scope = key
    g = data.draw(colored_graphs(max_n=5, max_m=8, directed=scope != "undirected",
                                 rooted=scope == "rooted"))
    got = _PRED[key](g, k)
    want = oracles.k_connected(g.vertex_ids, [(e.u, e.v) for e in g.edges], k, mode,
                               scope, g.root)
    assert got == want


@settings(max_examples=80)
@given(st.sampled_from(sorted(_PRED)), st.data())
def test_predicates_monotone(key, data):
    mode, scope = key
    g = data.draw(colored_graphs(max_n=5, max_m=9, directed=scope != "undirected",
                                 rooted=scope == "rooted"))
    vals = [_PRED[key](g, k) for k in range(1, 5)]
    assert all(a or not b for a, b in zip(vals, vals[1:]))


# ---------------------------------------------------------------- cuts


def _separates(g, cut, s, t):
    keep = [v for v in g.vertex_ids if v not in cut.vertices]
    h = g.subgraph(keep_vertices=keep,
                   keep_edges=[e.id for e in g.edges if e.id not in cut.edges])
    return not oracles.reaches(h.vertex_ids, [(e.u, e.v) for e in h.edges], s, t, g.directed)


def test_fig2_top_cut():
    g1 = figures.fig2()[0]
    cut = gc.min_cut_witness(g1, "edge", 2, 0)
    assert cut.size == 1 and cut.edges == (0,)


def test_k4_edge_cut():
    for s, t in itertools.combinations(range(4), 2):
        assert gc.min_cut_witness(figures.k4(), "edge", s, t).size == 3


def test_path_vertex_cut():
    cut = gc.min_cut_witness(path3(), "vertex", 0, 2)
    assert cut.vertices == (1,) and cut.edges == ()


def test_different_components_empty_cut():
    g = make_graph(4, [(0, 1), (2, 3)])
    assert gc.min_cut_witness(g, "edge", 0, 3).size == 0
    assert gc.min_cut_witness(g, "mixed", 0, 3).size == 0


def test_vertex_cut_rejects_adjacent():
    with pytest.raises(ValueError):
        gc.min_cut_witness(path3(), "vertex", 0, 1)


@settings(max_examples=150)
@given(st.booleans(), st.sampled_from(["edge", "mixed"]), st.data())
def test_menger_duality(directed, kind, data):
    g = data.draw(colored_graphs(max_n=5, max_m=8, directed=directed))
    s, t = data.draw(st.sampled_from(list(itertools.permutations(g.vertex_ids, 2))))
    cut = gc.min_cut_witness(g, kind, s, t)
    mode = "edge" if kind == "edge" else "vertex"
    lam = gc.local_connectivity(g, s, t, mode)
    assert cut.size == lam
    assert s not in cut.vertices and t not in cut.vertices
    assert _separates(g, cut, s, t)
    es = [(e.u, e.v) for e in g.edges]
    assert oracles.local_at_least(g.vertex_ids, es, s, t, lam, mode, directed)
    assert not oracles.local_at_least(g.vertex_ids, es, s, t, lam + 1, mode, directed)


# ---------------------------------------------------------------- generators


def test_k1_generator():
    g = gc.random_colored_graph(1, 0, [1], seed=0)
    assert g.n == 1 and g.m == 0


def test_generator_deterministic():
    a = gc.random_colored_graph(6, 10, [1, 2, 3], seed=7)
    b = gc.random_colored_graph(6, 10, [1, 2, 3], seed=7)
    assert serialize(a) == serialize(b)
    assert serialize(a) != serialize(gc.random_colored_graph(6, 10, [1, 2, 3], seed=8))


def test_per_tree_k4_is_ca():
    g = gc.random_colored_graph(4, 6, [1, 2], seed=3, mode="per-tree", trees=2)
    assert verify(g, Notion("edge", "edge", 1, 1)).holds


@pytest.mark.parametrize("seed", range(10))
def test_per_tree_colors_are_trees(seed):
    g = gc.random_colored_graph(5, 10, [1, 2, 3], seed=seed, mode="per-tree", trees=2)
    for c in (1, 2):
        es = [(e.u, e.v) for e in g.edges if c in e.colors]
        assert len(es) >= 4
        assert oracles.k_connected(g.vertex_ids, es, 1, "edge", "undirected")


def test_per_tree_errors():
    with pytest.raises(ValueError):
        gc.random_colored_graph(4, 5, [1, 2], seed=0, mode="per-tree", trees=2)
    with pytest.raises(ValueError):
        gc.random_colored_graph(4, 6, [1], seed=0, mode="per-tree", trees=2)
    with pytest.raises(ValueError):
        gc.random_colored_graph(1, 1, [1], seed=0)


@pytest.mark.parametrize("seed", range(8))
def test_random_rooted_digraph(seed):
    d = gc.random_rooted_digraph(6, 2, 3, seed)
    assert d.m == 2 * 5 + 3
    assert gc.is_rooted_k_arc_connected(d, 2)


def test_digraph_twin():
    d = gc.random_colored_digraph(5, 8, [1, 2], seed=1, mode="per-tree", trees=2)
    assert d.directed and d.m == 8
