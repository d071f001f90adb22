import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caconn import figures
from caconn import graph as gc
from caconn import reductions as red
from caconn.graph import make_graph
from caconn.orientation import Orientation
from caconn.verify import Notion, verify

ARC_STRONG = Notion("edge", "edge", 1, 1, "strong")
ARC_ROOTED = Notion("edge", "edge", 1, 1, "rooted")
IV1 = Notion("internal-vertex", "edge", 1, 1)


# ---------------------------------------------------------------- source objects


def test_nae_validation():
    with pytest.raises(red.ReductionError):
        red.NaeFormula(2, ())
    with pytest.raises(red.ReductionError):
        red.NaeFormula(2, ((1, -2),))
    with pytest.raises(red.ReductionError):
        red.NaeFormula(2, ((1, 3),))
    with pytest.raises(red.ReductionError):
        red.NaeFormula(2, ((1, 1),))


def test_nae_flags():
    f = figures.fig8()
    assert f.positive and f.linear and not f.exact4 and f.toy
    assert f.occurs(2) == (1, 2, 3)
    assert f.flags()["toy"] is True
    assert not red.NaeFormula(3, ((1, 2), (1, 2, 3))).linear


def test_hypergraph_validation():
    with pytest.raises(red.ReductionError):
        red.Hypergraph(3, ((0,),))
    with pytest.raises(red.ReductionError):
        red.Hypergraph(3, ((0, 3),))


def test_source_text_roundtrip():
    f = figures.fig8()
    assert red.parse_nae(red.serialize_nae(f)) == f
    h = figures.fig6()
    assert red.parse_hypergraph(red.serialize_hypergraph(h)) == h
    assert red.serialize_nae(f) == figures.fixture_text("fig8.nae")
    with pytest.raises(gc.ParseError):
        red.parse_nae("nae 2\nclause 1 x\n")
    with pytest.raises(ValueError):
        red.parse_hypergraph("edge 0 1\n")


# ---------------------------------------------------------------- hypergraph gadgets


def test_fig6_gadget():
    h = figures.fig6()
    gd = red.build_hypergraph_gadget(h)
    assert gd.graph.n == 9
    assert gd.graph.m == 15 + 9
    assert red.brute_hyp2col(h) is not None
    colors = {v: figures.FIG6_COLORING[v] + 1 for v in range(6)}
    colors.update({v: 1 for v in range(6, 9)})
    assert verify(gd.graph.with_vertex_colors(colors), IV1).holds


def test_smallest_hypergraph_gadget():
    gd = red.build_hypergraph_gadget(red.Hypergraph(2, ((0, 1),)))
    assert gd.graph.n == 3
    assert sorted((e.u, e.v) for e in gd.graph.edges) == [(0, 1), (0, 2), (1, 2)]


def test_rooted_hypergraph_gadget():
    gd = red.build_hypergraph_gadget(figures.fig6(), rooted=True)
    d = gd.graph
    assert d.directed and d.root == 9
    assert sorted(e.v for e in d.edges if e.u == d.root) == list(range(6))


def test_hypergraph_brute_oracle():
    tri = red.Hypergraph(3, ((0, 1), (1, 2), (0, 2)))
    assert red.brute_hyp2col(tri) is None
    col = red.brute_hyp2col(figures.fig6())
    for e in figures.fig6().edges:
        assert len({col[v] for v in e}) == 2


# ---------------------------------------------------------------- NAE gadgets


def test_fig8_gadget_counts():
    f = figures.fig8()
    gd = red.build_nae_gadget(f)
    assert gd.regime == "toy"
    assert gd.graph.n == 2 + 2 * f.n + f.m
    incid = sum(len(c) for c in f.clauses)
    assert gd.graph.m == f.n + 2 * f.n + 2 * f.m + 2 * incid


def test_fig9_forward_map():
    f = figures.fig8()
    for expand in (False, True):
        gd = red.build_nae_gadget(f, expand=expand)
        o = red.assignment_to_orientation(gd, f, figures.FIG9_ASSIGNMENT)
        assert verify(o.apply(gd.graph), ARC_STRONG).holds


def test_fig10_forward_map():
    f = figures.fig10()
    gd = red.build_nae_gadget(f, "rooted")
    assert gd.graph.n == 1 + 2 * f.n + 2 * f.m
    o = red.assignment_to_orientation(gd, f, figures.FIG10_ASSIGNMENT)
    assert verify(o.apply(gd.graph), ARC_ROOTED).holds


def test_fig10_expanded_forward_map_fails():
    # x1 and x3 occur once, so their pair lists are empty and expansion gives
    # the variable edge and both pairs the same fresh color: removing it cuts u1 off
    f = figures.fig10()
    gd = red.build_nae_gadget(f, "rooted", expand=True)
    o = red.assignment_to_orientation(gd, f, figures.FIG10_ASSIGNMENT)
    v = verify(o.apply(gd.graph), ARC_ROOTED)
    assert not v.holds and v.colors == (2 * f.m + 1,)


def test_expanded_edges_single_colored():
    gd = red.build_nae_gadget(figures.fig8(), expand=True)
    assert all(len(e.colors) == 1 for e in gd.graph.edges)
    gd = red.build_nae_gadget(figures.fig10(), "rooted", expand=True)
    assert all(len(e.colors) == 1 for e in gd.graph.edges)


def test_assignment_roundtrip():
    f = figures.fig8()
    gd = red.build_nae_gadget(f)
    for bits in itertools.product((True, False), repeat=f.n):
        o = red.assignment_to_orientation(gd, f, bits)
        assert red.orientation_to_assignment(gd, o) == dict(enumerate(bits, 1))
    with pytest.raises(red.ReductionError):
        red.assignment_to_orientation(gd, f, {1: True})


def test_brute_nae():
    assert red.brute_nae(red.NaeFormula(3, ((1, 2, 3),))) is not None
    assert red.brute_nae(red.NaeFormula(3, ((1, 2), (2, 3), (1, 3)))) is None
    a = red.brute_nae(figures.fig8())
    assert all(len({a[i - 1] for i in c}) == 2 for c in figures.fig8().clauses)


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(1, 5), min_size=2, max_size=3, unique=True),
                min_size=1, max_size=4))
def test_nae_forward_rooted_linear_toys(clauses):
    n = max(max(c) for c in clauses)
    try:
        f = red.NaeFormula(n, tuple(tuple(c) for c in clauses))
    except red.ReductionError:
        return
    a = red.brute_nae(f)
    # a variable in no clause is unreachable from the root by construction
    if a is None or not f.linear or not all(f.occurs(i) for i in range(1, n + 1)):
        return
    gd = red.build_nae_gadget(f, "rooted")
    o = red.assignment_to_orientation(gd, f, a)
    assert verify(o.apply(gd.graph), ARC_ROOTED).holds


def test_unknown_scope():
    with pytest.raises(ValueError):
        red.build_nae_gadget(figures.fig8(), "undirected")


# ---------------------------------------------------------------- edge-to-vertex gadget


def test_fig11_gadget():
    g = figures.fig11()
    gd = red.build_edge_to_vertex_gadget(g)
    assert gd.graph.n == 2 * g.m + 2 * g.n == 14
    m = 3
    vc = [gd.graph.vertex(v).colors for v in gd.graph.vertex_ids]
    assert sum(c == {m + 1} for c in vc) == g.n
    assert sum(c == {m + 2} for c in vc) == g.n


def test_single_edge_gadget():
    g = make_graph(2, [(0, 1, 1)])
    gd = red.build_edge_to_vertex_gadget(g)
    assert gd.graph.n == 6
    assert gd.graph.m == 1 + 2 * 4


def test_rooted_gadget_variants():
    g = figures.fig11().with_root(1)
    gd = red.build_edge_to_vertex_gadget(g, rooted=True)
    assert gd.graph.n == 13
    assert gd.graph.vertex(gd.graph.root).colors == {4}
    gd = red.build_edge_to_vertex_gadget(g, rooted=True, internal=True)
    assert gd.graph.vertex(gd.graph.root).colors == {6}
    with pytest.raises(red.ReductionError):
        red.build_edge_to_vertex_gadget(make_graph(1, []))


def test_lift_and_project():
    g = make_graph(3, [(0, 1, 1), (1, 2, 2), (2, 0, 1)])
    gd = red.build_edge_to_vertex_gadget(g)
    o = Orientation.from_dict({0: True, 1: False, 2: True})
    assert red.project_orientation(gd, red.lift_orientation(gd, o)) == o


@pytest.mark.parametrize("m", [1, 2, 3])
def test_edge_to_vertex_equivalence_three_edges(m):
    # every 2-colored multigraph on 3 vertices with m edges
    rep = red.check_reduction("edge-to-vertex", {"vertices": 3, "edges": m})
    assert rep.ok and rep.instances > 0


# ---------------------------------------------------------------- other oracles


def test_ham_decomposition():
    dc4 = make_graph(4, [(i, (i + 1) % 4) for i in range(4)] * 2)
    a, b = red.ham_decomposition(dc4)
    assert sorted(a + b) == list(range(8))
    with pytest.raises(ValueError):
        red.ham_decomposition(figures.c4())
    split = [g for g in red.four_regular_graphs() if g.name == "split_tripled_pairs"][0]
    assert red.ham_decomposition(split) is None


def test_two_trees_within():
    g = make_graph(3, [(0, 1, None, 1), (0, 1, None, 1), (1, 2, None, 1), (1, 2, None, 10)])
    assert red.two_trees_within(g, 2) is None
    assert red.two_trees_within(g, 11) is not None


def test_two_strong_subdigraphs():
    d = make_graph(2, [(0, 1), (1, 0), (0, 1), (1, 0)], directed=True)
    assert red.two_disjoint_strong_subdigraphs(d) is not None
    d3 = make_graph(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert red.two_disjoint_strong_subdigraphs(d3) is None


# ---------------------------------------------------------------- bounded families

ASSERTED = ["hypergraph", "hypergraph-rooted", "hypergraph-orient", "edge-to-vertex-rooted",
            "edge-to-vertex-internal", "edge-to-vertex-internal-rooted", "kotzig", "weighted",
            "yeo"]
SMALL = {"edge-to-vertex-rooted": {"edges": 3}, "edge-to-vertex-internal": {"edges": 3},
         "edge-to-vertex-internal-rooted": {"edges": 3}, "yeo": {"arcs": 5}}


@pytest.mark.parametrize("family", ASSERTED)
def test_family_agrees(family):
    rep = red.check_reduction(family, SMALL.get(family))
    assert rep.asserted
    assert rep.ok, rep.to_json()
    assert rep.instances > 0


def test_nae_families_are_informational():
    rep = red.check_reduction("nae-rooted", {"vars": 3, "clauses": 2})
    assert rep.regime == "toy" and not rep.asserted
    assert rep.ok
    rep = red.check_reduction("nae-strong", {"vars": 3, "clauses": 2})
    assert not rep.asserted and rep.notes


def test_bounds_guard():
    with pytest.raises(red.ReductionError):
        red.check_reduction("hypergraph", {"vertices": 9})
    with pytest.raises(ValueError):
        red.check_reduction("nope")


def test_parallel_matches_serial():
    a = red.check_reduction("hypergraph", {"vertices": 3, "edges": 2})
    b = red.check_reduction("hypergraph", {"vertices": 3, "edges": 2}, jobs=2)
    assert a.to_json() == b.to_json()


def test_report_json():
    js = red.check_reduction("kotzig").to_json()
    assert js["ok"] and js["regime"] == "exhaustive"
    assert set(js) >= {"family", "instances", "agree", "counterexample", "forward_failures"}


def test_gadget_sizes_polynomial():
    for f in red.nae_formulas(4, 3):
        gd = red.build_nae_gadget(f)
        incid = sum(len(c) for c in f.clauses)
        assert gd.graph.m == 3 * f.n + 2 * f.m + 2 * incid
        gd = red.build_nae_gadget(f, "rooted")
        assert gd.graph.m == 2 * f.m + f.n + 4 * incid
        assert gc.parse(gc.serialize(gd.graph)) == gd.graph.with_root(None)
