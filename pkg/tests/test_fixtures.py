import pytest

from caconn import figures
from caconn import graph as gc
from caconn import matroid as mt
from caconn import reductions as red
from caconn.cli import build_gadget

SOURCES = figures.source_fixtures()


@pytest.mark.parametrize("name", sorted(SOURCES))
def test_source_fixture_matches_definition(name):
    assert figures.fixture_text(name) == SOURCES[name]


@pytest.mark.parametrize("name", sorted(figures.GOLDEN))
def test_golden_reproduces(name):
    kind, source, expand = figures.GOLDEN[name]
    gd = build_gadget(kind, figures.fixture_text(source), expand=expand)
    assert gc.serialize(gd.graph) == figures.fixture_text(name)


@pytest.mark.parametrize("name", sorted(SOURCES) + sorted(figures.GOLDEN))
def test_roundtrip_byte_exact(name):
    text = figures.fixture_text(name)
    if name.endswith(".cg"):
        again = gc.serialize(gc.parse(text))
    elif name.endswith(".mat"):
        again = mt.serialize_matroid(mt.parse_matroid(text))
    elif name.endswith(".nae"):
        again = red.serialize_nae(red.parse_nae(text))
    else:
        again = red.serialize_hypergraph(red.parse_hypergraph(text))
    assert again == text


def test_every_fixture_is_listed():
    shipped = {p.name for p in figures.fixture_path("").iterdir() if p.is_file()}
    assert shipped == set(SOURCES) | set(figures.GOLDEN)
