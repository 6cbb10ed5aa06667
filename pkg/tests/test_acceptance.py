"""The eight acceptance criteria, one test each.

Every test records a one-line verdict that the ``acceptance criteria``
section of the pytest summary prints, and also prints it directly (visible
with ``-s``).
"""

import math
import random
import statistics
import time
import timeit
from itertools import combinations

from orchardnet import (PhyloNetwork, are_isomorphic, construct_orchard, exhibit,
                        full_simplification, is_orchard, is_recoverable, parse_enewick,
                        path_graph, random_orchard, trinet_set, trinet_sets_equal,
                        write_enewick)
from orchardnet.fixtures import NAMES, load

from conftest import ACCEPTANCE, generated_networks
from structural_checks import STRUCTURAL_CHECKS


def record(number: int, passed: bool, text: str) -> None:
    ACCEPTANCE[number] = (passed, text)
    print(f"[{'PASS' if passed else 'FAIL'}] {number}. {text}")
    assert passed, text


def count_identity_holds(net) -> bool:
    return len(net.vertices) == 2 * (net.n_leaves + net.n_reticulations) - 1


def test_counterexample_networks():
    start = time.perf_counter()
    n1, n2 = load("fig3_n1"), load("fig3_n2")
    t1, t2 = trinet_set(n1), trinet_set(n2)
    outcome = {
        "recoverable": is_recoverable(n1) and is_recoverable(n2),
        "not isomorphic": not are_isomorphic(n1, n2),
        "equal trinets": len(t1) == 10 and trinet_sets_equal(t1, t2),
        "neither orchard": not is_orchard(n1)[0] and not is_orchard(n2)[0],
    }
    elapsed = time.perf_counter() - start
    record(1, all(outcome.values()) and elapsed < 1.0,
           f"counterexample: {outcome} in {elapsed:.2f}s")


def test_trinet_round_trip_on_1000_networks():
    start = time.perf_counter()
    failures = []
    for i, net in enumerate(generated_networks(1000, seed=1000)):
        rebuilt = construct_orchard(net.leaf_labels, trinet_set(net))
        if not are_isomorphic(rebuilt, net):
            failures.append(i)
    elapsed = time.perf_counter() - start
    record(2, not failures and elapsed < 120,
           f"round trip: {1000 - len(failures)}/1000 isomorphic in {elapsed:.1f}s")


def test_fig2_exhibit_and_path_graph():
    n1 = load("fig1_n1")
    leaves = ["x2", "x3", "x4"]
    same = are_isomorphic(exhibit(n1, leaves), load("fig2_trinet"))
    g = path_graph(n1, leaves)
    counts = (len(g.vertices), len(g.arcs()))
    # 13 arcs as drawn: two straight strokes in the figure pass through a vertex
    record(3, same and counts == (12, 13),
           f"Fig. 2: exhibit isomorphic={same}, path graph (vertices, arcs)={counts}")


def test_structural_property_suite():
    results = {}
    for offset, (name, check) in enumerate(STRUCTURAL_CHECKS.items()):
        failures = 0
        nets = generated_networks(200, seed=2000 + offset, max_leaves=10, max_retics=8)
        for net in nets:
            assert len(net.vertices) <= 40
            try:
                check(net)
            except AssertionError:
                failures += 1
        results[name] = failures
    record(4, not any(results.values()),
           f"structural properties over 200 networks each, failures: {results}")


def test_count_identity():
    checked = bad = 0
    networks = [load(name) for name in NAMES]
    networks += list(generated_networks(200, seed=3000, min_leaves=1))
    for net in list(networks):
        if net.n_leaves >= 3:
            networks.extend(trinet_set(net).values())
        networks.append(parse_enewick(write_enewick(net)))
    for net in networks:
        checked += 1
        bad += not count_identity_holds(net)
    record(5, bad == 0, f"count identity |V| = 2(|X|+r) - 1 on {checked} networks, {bad} violations")


def test_reconstruction_scaling():
    sizes = {15: (4, 4), 31: (8, 8), 63: (16, 16)}
    medians = {}
    slowest = 0.0
    for n_vertices, (n, r) in sizes.items():
        times = []
        for seed in range(3):
            net = random_orchard(n, r, seed)
            assert len(net.vertices) == n_vertices
            ts = trinet_set(net)
            assert are_isomorphic(construct_orchard(net.leaf_labels, ts), net)
            # repeat fast runs so the smallest size is not lost in timer noise
            calls, total = timeit.Timer(lambda: construct_orchard(net.leaf_labels, ts)).autorange()
            times.append(total / calls)
        medians[n_vertices] = statistics.median(times)
        slowest = max(slowest, max(times))
    slope = math.log(medians[63] / medians[15]) / math.log(63 / 15)
    record(6, slope <= 7 and slowest < 60,
           f"scaling: log-log slope {slope:.2f}, medians "
           + ", ".join(f"|V|={k}: {v:.4f}s" for k, v in medians.items()))


def test_simplification_confluence():
    instances = 0
    disagreements = 0
    picker = random.Random(4000)
    for net in generated_networks(100, seed=4000):
        labels = sorted(net.leaf_labels)
        subset = picker.sample(labels, picker.randint(2, len(labels)))
        g = path_graph(net, subset)
        results = [PhyloNetwork.from_digraph(full_simplification(g, rng=random.Random(k)))
                   for k in range(10)]
        instances += 1
        disagreements += sum(not are_isomorphic(a, b) for a, b in combinations(results, 2))
    record(7, disagreements == 0,
           f"confluence: {instances} instances x 10 orders, {disagreements} non-isomorphic pairs")


def test_enewick_fixed_point():
    networks = [load(name) for name in NAMES] + list(generated_networks(500, seed=5000))
    unstable = 0
    for net in networks:
        once = write_enewick(net)
        twice = write_enewick(parse_enewick(once))
        unstable += once != twice or not are_isomorphic(parse_enewick(once), net)
    record(8, unstable == 0,
           f"eNewick fixed point on {len(networks)} networks, {unstable} unstable")
