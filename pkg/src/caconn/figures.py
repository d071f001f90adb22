"""Small named instances used as fixtures, in tests and by the CLI.

Color codes: red 1, green 2, blue 3.
"""

from __future__ import annotations

import itertools
from importlib import resources

from . import matroid as mt
from . import reductions as red
from .graph import ColoredGraph, make_graph, serialize

RED, GREEN, BLUE = 1, 2, 3


def fig1() -> ColoredGraph:
    return make_graph(4, [(1, 2), (0, 1), (0, 2), (2, 3), (0, 3)], name="fig1")


def fig1_matroid() -> mt.ExplicitMatroid:
    g = fig1()
    return mt.ExplicitMatroid(g.m, mt.bases_of(mt.graphic(g)), "fig1_graphic")


def fig2() -> list:
    a, b, c = 0, 1, 2
    return [
        make_graph(3, [(a, c, RED), (b, c, BLUE)], name="fig2_g1"),
        make_graph(3, [(a, b, GREEN), (a, c, RED), (b, c, BLUE)], name="fig2_g2"),
        make_graph(3, [(a, b, GREEN), (a, b, RED), (a, c, RED), (a, c, GREEN), (b, c, BLUE)],
                   name="fig2_g3"),
        make_graph(3, [(a, b, GREEN), (a, b, RED), (a, c, GREEN), (a, c, BLUE),
                       (b, c, RED), (b, c, BLUE)], name="fig2_g4"),
    ]


def fig4() -> list:
    return [
        make_graph(3, [(0, 1), (1, 2), (0, 2)], name="fig4_triangle",
                   vertex_colors={0: RED, 1: BLUE, 2: GREEN}),
        make_graph(3, [(0, 1), (1, 2)], name="fig4_mid",
                   vertex_colors={0: RED, 1: RED, 2: RED}),
        make_graph(3, [(0, 1), (1, 2)], name="fig4_distinct",
                   vertex_colors={0: RED, 1: BLUE, 2: GREEN}),
    ]


def fig5() -> list:
    arcs = [(0, 1, GREEN), (0, 2, RED), (1, 3, RED), (2, 1, BLUE), (3, 2, GREEN), (0, 3, BLUE)]
    return [
        make_graph(4, arcs, directed=True, root=0, name="fig5_arc"),
        make_graph(3, [(0, 1), (1, 2)], directed=True, root=0, name="fig5_vertex",
                   vertex_colors={0: RED, 1: RED, 2: RED}),
    ]


def fig6() -> red.Hypergraph:
    return red.Hypergraph(6, ((0, 1, 2), (2, 3, 4), (0, 4, 5)))


FIG6_COLORING = (0, 1, 0, 1, 0, 1)  # red / blue classes


def fig7() -> list:
    return [
        make_graph(2, [(0, 1, RED), (0, 1, BLUE), (0, 1, GREEN)], name="fig7_parallel"),
        make_graph(3, [(0, 1, RED), (1, 2, BLUE), (0, 2, GREEN)], root=0,
                   name="fig7_triangle"),
    ]


def fig8() -> red.NaeFormula:
    return red.NaeFormula(5, ((1, 2), (2, 3), (2, 4), (4, 5)))


FIG9_ASSIGNMENT = (True, False, True, True, False)


def fig10() -> red.NaeFormula:
    return red.NaeFormula(3, ((1, 2), (2, 3)))


FIG10_ASSIGNMENT = (True, False, True)


def fig11() -> ColoredGraph:
    u, v, w, s = 0, 1, 2, 3
    return make_graph(4, [(v, u, RED), (v, w, BLUE), (v, s, GREEN)], name="fig11")


def c4() -> ColoredGraph:
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)], name="c4")


def bidirected_triangle() -> ColoredGraph:
    arcs = [(a, b) for a, b in itertools.permutations(range(3), 2)]
    return make_graph(3, arcs, directed=True, root=0, name="bidirected_triangle")


def k4() -> ColoredGraph:
    return make_graph(4, list(itertools.combinations(range(4), 2)), name="k4")


# ---------------------------------------------------------------- fixture table


def source_fixtures() -> dict:
    """File name -> canonical text for every shipped input instance."""
    out = {"fig1.cg": serialize(fig1()),
           "fig1.mat": mt.serialize_matroid(fig1_matroid()),
           "fig6.hyp": red.serialize_hypergraph(fig6()),
           "fig8.nae": red.serialize_nae(fig8()),
           "fig10.nae": red.serialize_nae(fig10()),
           "fig11.cg": serialize(fig11()),
           "c4.cg": serialize(c4()),
           "k4.cg": serialize(k4()),
           "bidirected_triangle.cg": serialize(bidirected_triangle())}
    for g in fig2() + fig4() + fig5() + fig7():
        out[f"{g.name}.cg"] = serialize(g)
    return out


# golden outputs: file name -> (reduce kind, source fixture, expand)
GOLDEN = {
    "fig6_gadget.cg": ("hypergraph", "fig6.hyp", False),
    "fig6_gadget_rooted.cg": ("hypergraph-rooted", "fig6.hyp", False),
    "fig8_gadget.cg": ("nae-strong", "fig8.nae", False),
    "fig8_gadget_expanded.cg": ("nae-strong", "fig8.nae", True),
    "fig10_gadget.cg": ("nae-rooted", "fig10.nae", False),
    "fig11_gadget.cg": ("edge-to-vertex", "fig11.cg", False),
}


def fixture_path(name: str):
    return resources.files("caconn") / "fixtures" / name


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text()
