"""Leaf-label-preserving isomorphism and canonical keys for networks.

Two independent routes are provided.  :func:`find_isomorphism` is a
backtracking matcher seeded by the leaf labels and pruned by id-free vertex
signatures.  :func:`canonical_key` runs colour refinement with
individualisation and keeps the lexicographically smallest encoding.  Both are
exponential in the worst case; networks of a few dozen vertices are instant.
"""

from __future__ import annotations

from collections import deque
from typing import Mapping

from .network import PhyloNetwork


def _depths(net) -> dict[int, tuple[int, int]]:
    """(shortest, longest) path length from the root to every vertex."""
    order = []
    indeg = {v: len(net.parents(v)) for v in net.vertices}
    queue = deque(v for v, d in indeg.items() if d == 0)
    while queue:
        v = queue.popleft()
        order.append(v)
        for c in net.children(v):
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    lo = {net.root: 0}
    hi = {net.root: 0}
    for v in order:
        for c in net.children(v):
            lo[c] = min(lo.get(c, lo[v] + 1), lo[v] + 1)
            hi[c] = max(hi.get(c, 0), hi[v] + 1)
    return {v: (lo[v], hi[v]) for v in order}


def _leaf_clusters(net) -> dict[int, tuple[str, ...]]:
    clusters: dict[int, frozenset[str]] = {}

    def visit(v):
        if v not in clusters:
            lab = net.label(v)
            found = {lab} if lab is not None else set()
            for c in net.children(v):
                found |= visit(c)
            clusters[v] = frozenset(found)
        return clusters[v]

    for v in net.vertices:
        visit(v)
    return {v: tuple(sorted(s)) for v, s in clusters.items()}


def signatures(net) -> dict[int, tuple]:
    """Id-free vertex signature: degrees, label, depth profile, leaf cluster."""
    depth = _depths(net)
    cluster = _leaf_clusters(net)
    return {
        v: (len(net.parents(v)), len(net.children(v)), net.label(v) or "",
            depth[v], cluster[v])
        for v in net.vertices
    }


def find_isomorphism(n1, n2, fixed: Mapping[int, int] | None = None) -> dict[int, int] | None:
    """A bijection from ``n1``'s vertices to ``n2``'s fixing leaf labels, or None.

    ``fixed`` pins additional vertex pairs that the bijection must contain.
    """
    if n1.leaf_labels != n2.leaf_labels or len(n1.vertices) != len(n2.vertices):
        return None
    if len(n1.arcs()) != len(n2.arcs()):
        return None
    sig1, sig2 = signatures(n1), signatures(n2)
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None

    by_sig: dict[tuple, list[int]] = {}
    for v in sorted(n2.vertices):
        by_sig.setdefault(sig2[v], []).append(v)

    phi: dict[int, int] = {}
    used: set[int] = set()

    def consistent(u, w) -> bool:
        for p in n1.parents(u):
            if p in phi and phi[p] not in n2.parents(w):
                return False
        for c in n1.children(u):
            if c in phi and phi[c] not in n2.children(w):
                return False
        inverse_hits = sum(1 for p in n2.parents(w) if p in used) + \
            sum(1 for c in n2.children(w) if c in used)
        mapped_hits = sum(1 for p in n1.parents(u) if p in phi) + \
            sum(1 for c in n1.children(u) if c in phi)
        return inverse_hits == mapped_hits

    def assign(u, w) -> bool:
        if w in used or sig1[u] != sig2[w] or not consistent(u, w):
            return False
        phi[u] = w
        used.add(w)
        return True

    for lab in sorted(n1.leaf_labels):
        if not assign(n1.leaf(lab), n2.leaf(lab)):
            return None
    for u, w in (fixed or {}).items():
        if u in phi:
            if phi[u] != w:
                return None
        elif not assign(u, w):
            return None

    # match from the root downwards so each new vertex touches mapped parents
    order = [v for v in _depths(n1) if v not in phi]

    def search(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        for w in by_sig[sig1[u]]:
            if assign(u, w):
                if search(i + 1):
                    return True
                del phi[u]
                used.discard(w)
        return False

    return dict(phi) if search(0) else None


def are_isomorphic(n1, n2) -> bool:
    return find_isomorphism(n1, n2) is not None


def _rank(values: dict[int, tuple]) -> dict[int, int]:
    ranks = {val: i for i, val in enumerate(sorted(set(values.values())))}
    return {v: ranks[val] for v, val in values.items()}


def _refine(net, colours: dict[int, int]) -> dict[int, int]:
    while True:
        new = _rank({
            v: (colours[v],
                tuple(sorted(colours[c] for c in net.children(v))),
                tuple(sorted(colours[p] for p in net.parents(v))))
            for v in colours
        })
        if len(set(new.values())) == len(set(colours.values())):
            return new
        colours = new


def _encode(net, colours: dict[int, int]) -> tuple:
    order = sorted(colours, key=colours.__getitem__)
    pos = {v: i for i, v in enumerate(order)}
    labels = tuple(net.label(v) or "" for v in order)
    arcs = tuple(sorted((pos[u], pos[v]) for u, v in net.arcs()))
    return (len(order), labels, arcs)


def canonical_key(net: PhyloNetwork) -> bytes:
    """Byte string equal for two networks iff they are isomorphic."""
    start = _rank(signatures(net))
    best = None

    def search(colours):
        nonlocal best
        colours = _refine(net, colours)
        cells: dict[int, list[int]] = {}
        for v, c in colours.items():
            cells.setdefault(c, []).append(v)
        open_cells = [c for c, vs in cells.items() if len(vs) > 1]
        if not open_cells:
            enc = _encode(net, colours)
            if best is None or enc < best:
                best = enc
            return
        target = min(open_cells, key=lambda c: (len(cells[c]), c))
        for v in cells[target]:
            search(_rank({w: (c, 0 if w == v else 1) for w, c in colours.items()}))

    search(start)
    return repr(best).encode("utf-8")


def trinet_sets_equal(t1: Mapping, t2: Mapping) -> bool:
    """True iff both sets have the same leaf triples with isomorphic trinets."""
    if set(t1) != set(t2):
        return False
    return all(are_isomorphic(t1[k], t2[k]) for k in t1)
