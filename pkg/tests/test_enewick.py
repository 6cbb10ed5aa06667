import pytest

from orchardnet import are_isomorphic, parse_enewick, write_dot, write_enewick
from orchardnet.enewick import parse_enewick_digraph
from orchardnet.errors import ENewickError, ENewickSemanticError, ENewickSyntaxError
from orchardnet.fixtures import NAMES, load, text

from conftest import generated_networks


def test_cherry():
    net = parse_enewick("(a,b);")
    assert net.leaf_labels == {"a", "b"}
    assert len(net.vertices) == 3


def test_single_vertex_round_trip():
    assert write_enewick(parse_enewick("a;")) == "a;"


def test_fig1_n2_fixture_counts():
    n2 = load("fig1_n2")
    assert n2.leaf_labels == {"x1", "x2", "x3"}
    assert n2.n_reticulations == 4
    assert len(n2.vertices) == 2 * (3 + 4) - 1


def test_hybrid_reference_before_definition():
    net = parse_enewick("((a,#H1),(b)#H1);")
    assert net.n_reticulations == 1
    assert net.is_reticulation(net.parent(net.leaf("b")))


def test_comments_and_whitespace_are_skipped():
    net = parse_enewick("[a comment]\n( a , [inner] b ) ;\n")
    assert net.leaf_labels == {"a", "b"}


@pytest.mark.parametrize("source, line, column", [
    ("((a,b);", 1, 7),
    ("(a,b)", 1, 6),
    ("(a,,b);", 1, 4),
    ("(a,b);x", 1, 7),
    ("(a,\n(b,c)#);", 2, 7),
    ("[open comment (a,b);", 1, 1),
])
def test_syntax_errors_have_positions(source, line, column):
    with pytest.raises(ENewickSyntaxError) as info:
        parse_enewick(source)
    assert info.value.category == "syntax"
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize("source", [
    "((a,b,c),d);",          # out-degree three
    "((a),b);",              # in-degree one, out-degree one
    "(a,a);",                # duplicate label
    "((a,#H1),b);",          # tag never defined
    "((a)#H1,(b)#H1);",      # tag defined twice
    "((a)#H1,(b,c));",       # tag defined but never referenced
    "(((a)#H1,#H1),(#H1,b));",  # tag used three times
    "((a,b)x,c);",           # internal label
])
def test_semantic_errors(source):
    with pytest.raises(ENewickSemanticError) as info:
        parse_enewick(source)
    assert info.value.category == "semantic"
    assert isinstance(info.value, ENewickError)


def test_parallel_arcs_are_reported():
    with pytest.raises(ENewickSemanticError):
        parse_enewick("((a)#H1,#H1);")


def test_digraph_parse_keeps_invalid_structure():
    g = parse_enewick_digraph("((a,b,c),d);")
    assert max(len(g.children(v)) for v in g.vertices) == 3


def test_fixture_files_cite_their_figure():
    for name in NAMES:
        assert text(name).startswith("[Fig. ")


def test_fixtures_are_a_write_fixed_point():
    for name in NAMES:
        once = write_enewick(load(name))
        assert write_enewick(parse_enewick(once)) == once


def test_generated_round_trip():
    for net in generated_networks(100, seed=21):
        once = write_enewick(net)
        again = parse_enewick(once)
        assert are_isomorphic(again, net)
        assert write_enewick(again) == once


def test_writing_ignores_vertex_ids():
    net = load("fig1_n1")
    moved = net.renumbered({v: 50 - v for v in net.vertices})
    assert write_enewick(moved) == write_enewick(net)
    assert write_dot(moved) == write_dot(net)


def test_dot_marks_reticulations_as_squares():
    dot = write_dot(load("fig3_n1"))
    assert dot.count("shape=square") == 4
    assert dot.count("shape=plaintext") == 5
    assert dot.startswith("digraph network {") and dot.endswith("}\n")
    assert "\r" not in dot


def test_dot_lists_every_arc():
    net = load("fig1_n1")
    assert write_dot(net).count("->") == len(net.arcs())
