import random

import pytest

from orchardnet import (PhyloNetwork, ReduciblePair, are_isomorphic, cut_reticulated_cherry,
                        find_cherries, find_reticulated_cherries, is_orchard, random_orchard,
                        reduce_leaf)
from orchardnet.cherries import add_cherry, add_reticulated_cherry, pick, reducible_pairs
from orchardnet.errors import NotACherry
from orchardnet.fixtures import load
from orchardnet.network import is_recoverable

from conftest import generated_networks


def test_fig1_n1_cherries():
    n1 = load("fig1_n1")
    assert find_cherries(n1) == {frozenset({"x1", "x2"})}
    assert find_reticulated_cherries(n1) == {("x3", "x4"), ("x6", "x5")}


def test_reduce_cherry_of_two_leaves_gives_single_vertex():
    net = PhyloNetwork.from_arcs([(0, 1), (0, 2)], {1: "a", 2: "b"})
    single = reduce_leaf(net, "a", "b")
    assert single.is_single_vertex
    assert single.leaf_labels == {"a"}


def test_reduce_x2_on_fig1_n1():
    n1 = load("fig1_n1")
    reduced = reduce_leaf(n1, "x1", "x2")
    assert reduced.leaf_labels == n1.leaf_labels - {"x2"}
    assert len(reduced.vertices) == len(n1.vertices) - 2


def test_reduce_leaf_counts():
    net = random_orchard(5, 2, 7)
    (pair, *_) = find_cherries(net)
    a, b = sorted(pair)
    reduced = reduce_leaf(net, a, b)
    assert reduced.leaf_labels == net.leaf_labels - {b}
    assert len(reduced.vertices) == len(net.vertices) - 2


def test_cut_counts_on_fig1_n1():
    n1 = load("fig1_n1")
    cut = cut_reticulated_cherry(n1, "x3", "x4")
    assert cut.n_reticulations == 2
    assert len(cut.vertices) == len(n1.vertices) - 2
    assert cut.leaf_labels == n1.leaf_labels


def test_picking_requires_a_cherry():
    n1 = load("fig1_n1")
    with pytest.raises(NotACherry):
        reduce_leaf(n1, "x1", "x3")
    with pytest.raises(NotACherry):
        cut_reticulated_cherry(n1, "x4", "x3")


def test_fig1_n2_picking_sequence():
    # cut (x1, x2) until no reticulations remain, then reduce x3, then x2
    net = load("fig1_n2")
    cuts = 0
    while net.n_reticulations:
        cuts += 1
        assert ("x1", "x2") in find_reticulated_cherries(net)
        net = cut_reticulated_cherry(net, "x1", "x2")
    assert cuts == 4
    net = reduce_leaf(net, "x2", "x3")
    net = reduce_leaf(net, "x1", "x2")
    assert net.is_single_vertex


def test_figure_orchard_status():
    assert is_orchard(load("fig1_n1"))[0]
    assert is_orchard(load("fig1_n2"))[0]
    assert not is_orchard(load("fig3_n1"))[0]
    assert not is_orchard(load("fig3_n2"))[0]


def test_witness_replays_to_single_vertex():
    net = random_orchard(6, 4, 21)
    ok, sequence = is_orchard(net)
    assert ok
    for step in sequence:
        net, _ = pick(net, step.pair)
    assert net.is_single_vertex


def test_reducible_pairs_list_cherries_first():
    pairs = reducible_pairs(load("fig1_n1"))
    assert pairs[0] == ReduciblePair.cherry("x1", "x2")
    assert [p for p in pairs if not p.is_cherry] == [ReduciblePair.reticulated("x3", "x4"),
                                                       ReduciblePair.reticulated("x6", "x5")]


def test_any_picking_order_reaches_a_single_vertex():
    # picking order does not matter for orchard networks
    for i, net in enumerate(generated_networks(30, seed=3)):
        for order in range(20):
            assert is_orchard(net, rng=random.Random(1000 * i + order))[0]


def test_picking_keeps_orchard_networks_orchard():
    for net in generated_networks(40, seed=4):
        for pair in reducible_pairs(net):
            assert is_orchard(pick(net, pair)[0])[0]


def test_orchard_networks_are_recoverable():
    for net in generated_networks(100, seed=5):
        assert is_orchard(net)[0]
        assert is_recoverable(net)


def test_picking_keeps_recoverability():
    for net in generated_networks(40, seed=6):
        for pair in reducible_pairs(net):
            assert is_recoverable(pick(net, pair)[0])
    for name in ("fig3_n1", "fig3_n2"):
        net = load(name)
        for pair in reducible_pairs(net):
            assert is_recoverable(pick(net, pair)[0])


def test_cut_then_add_is_the_identity_up_to_isomorphism():
    for net in generated_networks(40, seed=7):
        for a, b in find_reticulated_cherries(net):
            again = add_reticulated_cherry(cut_reticulated_cherry(net, a, b), a, b)
            assert are_isomorphic(again, net)
        for pair in find_cherries(net):
            a, b = sorted(pair)
            assert are_isomorphic(add_cherry(reduce_leaf(net, a, b), a, b), net)
