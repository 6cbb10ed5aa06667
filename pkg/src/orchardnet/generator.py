"""Seeded random orchard networks, built by running cherry picking backwards."""

from __future__ import annotations

import numpy as np

from .network import PhyloNetwork, TrackedDigraph

# numpy's Generator over PCG64; seeds replay only with this bit generator,
# stored networks are the portable form of a fixture
PRNG_ALGORITHM = "PCG64"


def _subdivide_pendant(g: TrackedDigraph, leaf: int) -> int:
    (p,) = g.pred[leaf]
    mid = g.add_vertex()
    g.remove_arc(p, leaf)
    g.add_arc(p, mid)
    g.add_arc(mid, leaf)
    return mid


def _grow_cherry(g: TrackedDigraph, leaf: int, label: str) -> int:
    """Give ``leaf`` a new sibling ``label``; return the new leaf's id."""
    if not g.pred[leaf]:
        root = g.add_vertex()
        g.add_arc(root, leaf)
        mid = root
    else:
        mid = _subdivide_pendant(g, leaf)
    new = g.add_vertex(label=label)
    g.add_arc(mid, new)
    return new


def _grow_reticulated(g: TrackedDigraph, a: int, b: int) -> None:
    """Subdivide the arcs into leaves ``a`` and ``b`` and join the new vertices."""
    pa = _subdivide_pendant(g, a)
    pb = _subdivide_pendant(g, b)
    g.add_arc(pa, pb)


def random_orchard(n_leaves: int, n_retics: int, seed: int) -> PhyloNetwork:
    """A random orchard network with the given numbers of leaves and reticulations.

    Leaves are labelled ``x1 .. xn``.  The construction interleaves ``n - 1``
    cherry insertions and ``r`` reticulated-cherry insertions at random; the
    reverse of that construction is a picking sequence, so the result is
    orchard.
    """
    if n_leaves < 1 or n_retics < 0:
        raise ValueError("need n_leaves >= 1 and n_retics >= 0")
    if n_leaves == 1 and n_retics:
        raise ValueError("a single-leaf network cannot have reticulations")
    rng = np.random.Generator(np.random.PCG64(seed))

    labels = [f"x{i}" for i in rng.permutation(n_leaves) + 1]
    moves = ["C"] * (n_leaves - 1) + ["R"] * n_retics
    if moves:
        rest = moves[1:]
        rng.shuffle(rest)
        moves = ["C"] + rest

    g = TrackedDigraph()
    leaves = [g.add_vertex(label=labels[0])]
    for move in moves:
        if move == "C":
            target = leaves[rng.integers(len(leaves))]
            leaves.append(_grow_cherry(g, target, labels[len(leaves)]))
        else:
            i, j = rng.choice(len(leaves), size=2, replace=False)
            _grow_reticulated(g, leaves[i], leaves[j])
    return PhyloNetwork.from_digraph(g)
