"""Path graphs, full simplification, exhibited networks and trinet sets.

Every derived graph keeps the vertex ids of the network it came from.  When a
vertex is suppressed its provenance set is merged into its parent, so the
surviving vertex "standing in" for any source vertex can be found afterwards
with :func:`image_of`.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .network import (PhyloNetwork, TrackedDigraph, ancestors, descendants,
                      lowest_stable_ancestor)

Triple = tuple[str, str, str]
TrinetSet = dict  # Triple -> PhyloNetwork


def trinet_key(labels: Iterable[str]) -> Triple:
    key = tuple(sorted(labels))
    if len(key) != 3 or len(set(key)) != 3:
        raise ValueError(f"a trinet key needs three distinct labels, got {key}")
    return key


def _as_digraph(g) -> TrackedDigraph:
    return g.to_digraph() if isinstance(g, PhyloNetwork) else g


def path_graph(g, labels: Iterable[str]) -> TrackedDigraph:
    """Union of all paths from ``lsa(labels)`` to a leaf in ``labels``.

    Works on a network or on any single-source :class:`TrackedDigraph`.  The
    result is the subgraph induced by the vertices that descend from the lsa
    and lead to some chosen leaf; provenance is copied from ``g``.
    """
    labels = list(labels)
    top = lowest_stable_ancestor(g, labels)
    targets = [g.leaf(lab) for lab in labels]
    keep = descendants(g, top) & ancestors(g, targets)
    return _as_digraph(g).induced(keep)


def _suppressible(g: TrackedDigraph) -> list[int]:
    return [v for v in sorted(g.succ) if len(g.pred[v]) == 1 and len(g.succ[v]) == 1]


def _parallel_arcs(g: TrackedDigraph) -> list[tuple[int, int]]:
    found = []
    for u in sorted(g.succ):
        cs = g.succ[u]
        if len(cs) != len(set(cs)):
            found.extend((u, c) for c in sorted(set(cs)) if cs.count(c) > 1)
    return found


def full_simplification(g: TrackedDigraph, rng=None) -> TrackedDigraph:
    """Suppress in-1/out-1 vertices and drop duplicate parallel arcs until neither applies.

    Without ``rng`` suppressions run first, lowest vertex id first.  With a
    ``random.Random``-like ``rng`` the next operation is drawn uniformly from
    all applicable ones (used to probe confluence).  Returns a new graph.
    """
    g = g.copy()
    while True:
        sup = _suppressible(g)
        par = _parallel_arcs(g)
        if not sup and not par:
            return g
        if rng is not None:
            ops = [("s", v) for v in sup] + [("p", arc) for arc in par]
            op, target = ops[rng.randrange(len(ops))]
        elif sup:
            op, target = "s", sup[0]
        else:
            op, target = "p", par[0]
        if op == "s":
            g.suppress(target)
        else:
            g.remove_arc(*target)


def exhibit_digraph(g, labels: Iterable[str], rng=None) -> TrackedDigraph:
    return full_simplification(path_graph(g, labels), rng=rng)


def exhibit(net, labels: Iterable[str], rng=None) -> PhyloNetwork:
    """The network exhibited by ``net`` on ``labels``.

    Surviving vertices keep their ids; ``result.provenance`` records which
    source vertices each one absorbed.
    """
    return PhyloNetwork.from_digraph(exhibit_digraph(net, labels, rng=rng))


def image_of(g, v: int) -> int | None:
    """The vertex of a derived graph whose provenance contains ``v``, if any."""
    prov = g.provenance
    if v in prov and v in prov[v]:
        return v
    for w, absorbed in prov.items():
        if v in absorbed:
            return w
    return None


def trinet_set(net: PhyloNetwork) -> TrinetSet:
    """All trinets exhibited by ``net``, keyed by sorted leaf triple."""
    labels = sorted(net.leaf_labels)
    if len(labels) < 3:
        raise ValueError("trinet sets need at least three leaves")
    return {key: exhibit(net, key) for key in combinations(labels, 3)}
