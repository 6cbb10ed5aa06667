"""Cherries, reticulated cherries, and orchard recognition by cherry picking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidNetwork, NotACherry
from .network import PhyloNetwork, validate

CHERRY = "cherry"
RETICULATED_CHERRY = "reticulated_cherry"


class ReduciblePair(NamedTuple):
    """A cherry ``{a, b}`` or a reticulated cherry ``(a, b)``.

    For a reticulated cherry ``a`` hangs below the tree vertex and ``b``
    below the reticulation.  For a cherry the pair is stored with ``a < b``.
    """

    kind: str
    a: str
    b: str

    @classmethod
    def cherry(cls, a: str, b: str) -> ReduciblePair:
        a, b = sorted((a, b))
        return cls(CHERRY, a, b)

    @classmethod
    def reticulated(cls, a: str, b: str) -> ReduciblePair:
        return cls(RETICULATED_CHERRY, a, b)

    @property
    def is_cherry(self) -> bool:
        return self.kind == CHERRY

    def __str__(self) -> str:
        if self.is_cherry:
            return f"{{{self.a},{self.b}}}"
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class Pick:
    pair: ReduciblePair
    # label removed when reducing a cherry; None for a cut
    victim: str | None = None

    def __str__(self) -> str:
        if self.victim is not None:
            return f"reduce {self.victim} of cherry {self.pair}"
        return f"cut reticulated cherry {self.pair}"


PickingSequence = list


def find_cherries(net: PhyloNetwork) -> set[frozenset[str]]:
    found = set()
    for v in net.vertices:
        cs = net.children(v)
        if len(cs) == 2 and all(net.is_leaf(c) for c in cs):
            found.add(frozenset(net.label(c) for c in cs))
    return found


def find_reticulated_cherries(net: PhyloNetwork) -> set[tuple[str, str]]:
    found = set()
    for pb in net.reticulations:
        (b,) = net.children(pb)
        if not net.is_leaf(b):
            continue
        for pa in net.parents(pb):
            if not net.is_tree_vertex(pa):
                continue
            for a in net.children(pa):
                if a != pb and net.is_leaf(a):
                    found.add((net.label(a), net.label(b)))
    return found


def _finish(g) -> PhyloNetwork:
    report = validate(g)
    if not report.ok:
        raise InvalidNetwork(report)
    return PhyloNetwork.from_digraph(g)


def reduce_leaf(net: PhyloNetwork, a: str, b: str) -> PhyloNetwork:
    """Delete leaf ``b`` of the cherry ``{a, b}`` and suppress the shared parent."""
    if frozenset((a, b)) not in find_cherries(net) or a == b:
        raise NotACherry(f"{{{a},{b}}} is not a cherry")
    va, vb = net.leaf(a), net.leaf(b)
    p = net.parent(va)
    if p == net.root:
        return PhyloNetwork.single(a, va)
    g = net.to_digraph()
    g.remove_vertex(vb)
    g.suppress(p)
    return _finish(g)


def cut_reticulated_cherry(net: PhyloNetwork, a: str, b: str) -> PhyloNetwork:
    """Delete the reticulation arc of ``(a, b)`` and suppress both its endpoints.

    If suppression would create a parallel arc the bypass is not duplicated and
    the result is re-validated; an invalid result raises ``InvalidNetwork``.
    """
    if (a, b) not in find_reticulated_cherries(net):
        raise NotACherry(f"({a},{b}) is not a reticulated cherry")
    pa, pb = net.parent(net.leaf(a)), net.parent(net.leaf(b))
    g = net.to_digraph()
    g.remove_arc(pa, pb)
    for v in (pa, pb):
        (p,) = g.pred[v]
        (c,) = g.succ[v]
        g.remove_vertex(v)
        if c not in g.succ[p]:
            g.add_arc(p, c)
    return _finish(g)


def _subdivide_pendant(g, leaf: int) -> int:
    (p,) = g.pred[leaf]
    mid = g.add_vertex()
    g.remove_arc(p, leaf)
    g.add_arc(p, mid)
    g.add_arc(mid, leaf)
    return mid


def add_cherry(net: PhyloNetwork, a: str, b: str) -> PhyloNetwork:
    """Inverse of reducing ``b``: hang a new leaf ``b`` next to leaf ``a``."""
    if b in net.leaf_labels:
        raise ValueError(f"label {b!r} already present")
    g = net.to_digraph()
    va = net.leaf(a)
    if net.is_single_vertex():
        mid = g.add_vertex()
        g.add_arc(mid, va)
    else:
        mid = _subdivide_pendant(g, va)
    g.add_arc(mid, g.add_vertex(label=b))
    return PhyloNetwork.from_digraph(g)


def add_reticulated_cherry(net: PhyloNetwork, a: str, b: str) -> PhyloNetwork:
    """Inverse of cutting ``(a, b)``: subdivide both pendant arcs and join them."""
    if a == b:
        raise ValueError("a reticulated cherry needs two distinct leaves")
    g = net.to_digraph()
    pa = _subdivide_pendant(g, net.leaf(a))
    pb = _subdivide_pendant(g, net.leaf(b))
    g.add_arc(pa, pb)
    return PhyloNetwork.from_digraph(g)


def reducible_pairs(net: PhyloNetwork) -> list[ReduciblePair]:
    """All reducible pairs, cherries first, each group in lexicographic order."""
    cherries = sorted(ReduciblePair.cherry(*sorted(c)) for c in find_cherries(net))
    rets = sorted(ReduciblePair.reticulated(a, b) for a, b in find_reticulated_cherries(net))
    return cherries + rets


def pick(net: PhyloNetwork, pair: ReduciblePair) -> tuple[PhyloNetwork, Pick]:
    """Apply one picking step; cherries lose their lexicographically larger leaf."""
    if pair.is_cherry:
        return reduce_leaf(net, pair.a, pair.b), Pick(pair, victim=pair.b)
    return cut_reticulated_cherry(net, pair.a, pair.b), Pick(pair)


def is_orchard(net: PhyloNetwork, rng=None) -> tuple[bool, list[Pick] | None]:
    """Decide whether ``net`` is orchard by greedy cherry picking.

    Any pick order decides correctly, so the first available pair is taken;
    passing a ``random.Random``-like ``rng`` picks uniformly instead (and then
    reduces a random leaf of each cherry).
    """
    sequence: list[Pick] = []
    while not net.is_single_vertex():
        pairs = reducible_pairs(net)
        if not pairs:
            return False, None
        if rng is None:
            net, step = pick(net, pairs[0])
        else:
            pair = pairs[rng.randrange(len(pairs))]
            if pair.is_cherry and rng.random() < 0.5:
                net, step = reduce_leaf(net, pair.b, pair.a), Pick(pair, victim=pair.a)
            else:
                net, step = pick(net, pair)
        sequence.append(step)
    return True, sequence
