"""Rebuilding an orchard network from the trinets it exhibits.

The recursion finds a pair that is a cherry (or reticulated cherry) of every
trinet containing it, rewrites the trinet set into that of the picked network,
recurses, and then re-attaches the picked pair.

For a reticulated cherry ``(a, b)`` the trinets on ``{b, x, y}`` (with ``a``
absent) are the delicate case: the parent of ``b`` may or may not survive in
them, and when it does one of its two in-arcs has to go.  Which one is read off
the trinets ``{a, b, x}`` and ``{a, b, y}`` by tracking the parent of ``a``
through a restriction to two leaves, and comparing with the same restriction
taken from the ``{b, x, y}`` trinet.  When an automorphism of the restriction
makes both arcs look right, the builder tries each and keeps the one whose
result exhibits the input trinets.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Callable, Iterable, Mapping

from .cherries import (ReduciblePair, add_cherry, add_reticulated_cherry, find_cherries,
                       find_reticulated_cherries)
from .errors import MalformedTrinet, NoIsomorphism, NoReduciblePair, NotOrchardInput
from .exhibit import exhibit_digraph, image_of, trinet_key, trinet_set
from .isomorphism import find_isomorphism, trinet_sets_equal
from .network import PhyloNetwork, TrackedDigraph, is_recoverable

P1_ARC = "p1"
P2_ARC = "p2"
NO_DELETION = "none"


class _PairIndex:
    """Cherries and reticulated cherries of each trinet, computed once."""

    def __init__(self, ts: Mapping):
        self.cherries = {k: find_cherries(t) for k, t in ts.items()}
        self.rets = {k: find_reticulated_cherries(t) for k, t in ts.items()}


def find_reducible_pair(ts: Mapping, labels: Iterable[str] | None = None) -> ReduciblePair:
    """A pair that is a cherry, or a reticulated cherry, of every trinet containing it.

    Cherries win over reticulated cherries, then lexicographic order decides.
    Raises ``NoReduciblePair`` when no pair qualifies.
    """
    labels = sorted(labels if labels is not None else {x for k in ts for x in k})
    index = _PairIndex(ts)
    containing: dict[frozenset, list] = {}
    for key in ts:
        for pair in combinations(key, 2):
            containing.setdefault(frozenset(pair), []).append(key)

    for a, b in combinations(labels, 2):
        keys = containing.get(frozenset((a, b)), [])
        if keys and all(frozenset((a, b)) in index.cherries[k] for k in keys):
            return ReduciblePair.cherry(a, b)
    for a in labels:
        for b in labels:
            if a == b:
                continue
            keys = containing.get(frozenset((a, b)), [])
            if keys and all((a, b) in index.rets[k] for k in keys):
                return ReduciblePair.reticulated(a, b)
    raise NoReduciblePair("no pair is a cherry or reticulated cherry of all trinets containing it")


def transform_trinets_cherry(ts: Mapping, a: str, b: str) -> dict:
    """Drop every trinet whose leaf set contains ``b``."""
    return {k: t for k, t in ts.items() if b not in k}


def _normalise(g: TrackedDigraph) -> PhyloNetwork:
    """Prune childless non-leaves, then restrict to the lsa of the leaves and simplify."""
    g = g.copy()
    while True:
        dead = [v for v in g.succ if not g.succ[v] and v not in g.labels]
        if not dead:
            break
        for v in dead:
            g.remove_vertex(v)
    return PhyloNetwork.from_digraph(exhibit_digraph(g, sorted(g.labels.values())))


def _cut_inside(trinet: PhyloNetwork, a: str, b: str) -> PhyloNetwork:
    if (a, b) not in find_reticulated_cherries(trinet):
        raise MalformedTrinet(f"({a},{b}) is not a reticulated cherry of trinet "
                              f"{sorted(trinet.leaf_labels)}")
    pa, pb = trinet.parent(trinet.leaf(a)), trinet.parent(trinet.leaf(b))
    g = trinet.to_digraph()
    g.remove_arc(pa, pb)
    return _normalise(g)


def _delete_parent_arc(trinet: PhyloNetwork, tail: int, pb: int) -> PhyloNetwork:
    g = trinet.to_digraph()
    g.remove_arc(tail, pb)
    return _normalise(g)


def _restrict_marked(g, keep: Iterable[str], marked: int) -> tuple[PhyloNetwork, int | None]:
    """Exhibit ``g`` on ``keep``, following ``marked`` up through suppressions."""
    sub = exhibit_digraph(g, keep)
    return PhyloNetwork.from_digraph(sub), image_of(sub, marked)


def cut_arc_candidates(n_a: PhyloNetwork, n_abx: PhyloNetwork, n_aby: PhyloNetwork,
                       a: str, b: str) -> list[tuple[str, int | None]]:
    """Possible in-arcs of ``b``'s parent to delete in the trinet ``n_a``.

    ``n_a`` is the trinet on ``{b, x, y}``; ``n_abx``/``n_aby`` are the trinets
    on ``{a, b, x}`` and ``{a, b, y}``.  Each candidate is ``(choice, tail)``
    where ``choice`` is ``"p1"``/``"p2"`` (``tail`` is then the arc's tail
    vertex in ``n_a``) or ``"none"`` when the parent of ``b`` does not survive.

    The parent of ``a`` is followed into the restriction of ``n_abz`` to
    ``{b, z}`` and matched against the restriction of ``n_a``.  Usually one
    restriction tells the two tails apart and a single candidate comes back.
    When every restriction has an automorphism swapping them, both are
    returned and the caller has to decide.
    """
    x_and_y = sorted(n_a.leaf_labels - {b})
    restricted = {}
    for z, src in zip(x_and_y, (n_abx, n_aby)):
        if src.leaf_labels != {a, b, z}:
            raise MalformedTrinet(f"expected a trinet on {{{a},{b},{z}}}")
        if (a, b) not in find_reticulated_cherries(src):
            raise MalformedTrinet(f"({a},{b}) is not a reticulated cherry of trinet on {{{a},{b},{z}}}")
        p_z = src.parent(src.leaf(a))
        p_prime = src.parent(src.leaf(b))
        g_z, marked = _restrict_marked(src, (b, z), p_z)
        restricted[z] = (g_z, marked, p_prime in g_z)

    survivors = [z for z in x_and_y if restricted[z][2]]
    if not survivors:
        return [(NO_DELETION, None)]

    pb = n_a.parent(n_a.leaf(b))
    if not n_a.is_reticulation(pb):
        raise MalformedTrinet(f"parent of {b} is not a reticulation in trinet {sorted(n_a.leaf_labels)}")
    p1, p2 = n_a.parents(pb)
    for z in survivors:
        g_z, mark_z, _ = restricted[z]
        g_prime, mark_1 = _restrict_marked(n_a, (b, z), p1)
        mark_2 = image_of(g_prime, p2)
        if find_isomorphism(g_z, g_prime) is None:
            raise NoIsomorphism(f"restrictions to {{{b},{z}}} disagree")
        via_p1 = find_isomorphism(g_z, g_prime, fixed={mark_z: mark_1}) is not None
        via_p2 = find_isomorphism(g_z, g_prime, fixed={mark_z: mark_2}) is not None
        if via_p1 and not via_p2:
            return [(P1_ARC, p1)]
        if via_p2 and not via_p1:
            return [(P2_ARC, p2)]
        if not via_p1 and not via_p2:
            raise NoIsomorphism(f"marked parent has no counterpart in restriction to {{{b},{z}}}")
    return [(P1_ARC, p1), (P2_ARC, p2)]


def resolve_cut_arc(n_a: PhyloNetwork, n_abx: PhyloNetwork, n_aby: PhyloNetwork,
                    a: str, b: str) -> tuple[str, int | None]:
    """The first of :func:`cut_arc_candidates`; a tie resolves to ``"p1"``."""
    return cut_arc_candidates(n_a, n_abx, n_aby, a, b)[0]


def transform_trinets_ret_all(ts: Mapping, a: str, b: str) -> list[dict]:
    """Every rewriting of ``ts`` consistent with cutting ``(a, b)``.

    One dict per combination of the tied arc choices; in the common case
    there are no ties and the list has a single entry.
    """
    out: dict = {}
    tied: dict = {}
    for key, trinet in ts.items():
        if b not in key:
            out[key] = trinet
        elif a in key:
            out[key] = _cut_inside(trinet, a, b)
        else:
            x, y = sorted(set(key) - {b})
            try:
                n_abx, n_aby = ts[trinet_key((a, b, x))], ts[trinet_key((a, b, y))]
            except KeyError as exc:
                raise MalformedTrinet(f"missing trinet {exc.args[0]}") from None
            options = []
            pb = trinet.parent(trinet.leaf(b))
            for choice, tail in cut_arc_candidates(trinet, n_abx, n_aby, a, b):
                options.append(trinet if choice == NO_DELETION else _delete_parent_arc(trinet, tail, pb))
            if len(options) == 1:
                out[key] = options[0]
            else:
                tied[key] = options
    results = []
    for combo in product(*tied.values()):
        rewritten = dict(out)
        rewritten.update(zip(tied, combo))
        results.append(rewritten)
    return results


def transform_trinets_ret(ts: Mapping, a: str, b: str) -> dict:
    """Rewrite ``ts`` into the trinet set of the network with ``(a, b)`` cut.

    Tied arc choices take the first option; :func:`construct_orchard` instead
    explores all of them through :func:`transform_trinets_ret_all`.
    """
    return transform_trinets_ret_all(ts, a, b)[0]


def check_trinet_set(labels: Iterable[str], ts: Mapping) -> None:
    """Fail fast unless ``ts`` has one valid recoverable trinet per 3-subset."""
    labels = sorted(labels)
    if len(labels) < 3:
        raise NotOrchardInput("need at least three leaves")
    expected = set(combinations(labels, 3))
    if set(ts) != expected:
        missing = sorted(expected - set(ts))
        extra = sorted(set(ts) - expected)
        raise MalformedTrinet(f"trinet keys mismatch; missing {missing[:3]}, unexpected {extra[:3]}")
    for key, trinet in ts.items():
        if trinet.leaf_labels != set(key):
            raise MalformedTrinet(f"trinet keyed {key} has leaves {sorted(trinet.leaf_labels)}")
        if not is_recoverable(trinet):
            raise MalformedTrinet(f"trinet {key} is not recoverable")


class _Builder:
    def __init__(self, trace: Callable[[str], None] | None):
        self.trace = trace or (lambda msg: None)
        self.steps = 0

    def run(self, labels: list[str], ts: Mapping) -> PhyloNetwork:
        if len(ts) == 1:
            (trinet,) = ts.values()
            self.trace(f"base case: trinet on {sorted(trinet.leaf_labels)}")
            return trinet
        pair = find_reducible_pair(ts, labels)
        self.steps += 1
        if pair.is_cherry:
            self.trace(f"step {self.steps}: cherry {pair}, removing {pair.b}")
            rest = [x for x in labels if x != pair.b]
            sub = self.run(rest, transform_trinets_cherry(ts, pair.a, pair.b))
            return add_cherry(sub, pair.a, pair.b)
        self.trace(f"step {self.steps}: reticulated cherry {pair}, cutting")
        options = transform_trinets_ret_all(ts, pair.a, pair.b)
        if len(options) == 1:
            return add_reticulated_cherry(self.run(labels, options[0]), pair.a, pair.b)
        # tied arc choices: keep the branch whose result exhibits exactly ``ts``
        self.trace(f"step {self.steps}: {len(options)} ways to cut {pair}, checking each")
        for option in options:
            try:
                built = add_reticulated_cherry(self.run(labels, option), pair.a, pair.b)
            except NotOrchardInput:
                continue
            if trinet_sets_equal(trinet_set(built), ts):
                return built
        raise NoIsomorphism(f"no way of cutting {pair} reproduces the trinets")


def construct_orchard(labels: Iterable[str], ts: Mapping,
                      trace: Callable[[str], None] | None = None) -> PhyloNetwork:
    """Rebuild, up to isomorphism, the orchard network whose trinet set is ``ts``.

    Raises a ``NotOrchardInput`` subclass when the collection cannot have come
    from an orchard network.
    """
    labels = sorted(labels)
    check_trinet_set(labels, ts)
    return _Builder(trace).run(labels, dict(ts))
