"""Rooted binary phylogenetic networks.

Two graph types live here. :class:`TrackedDigraph` is a mutable directed
multigraph used as scratch space while networks are derived from one another;
it carries, for every vertex, the set of source vertices it has absorbed by
suppression.  :class:`PhyloNetwork` is the immutable, validated value that the
rest of the package passes around.

Vertex identifiers are plain integers.  Derived networks keep the identifiers
of the vertices they inherit and allocate fresh ones above ``next_id``, so a
vertex can be followed across reductions, cuts and exhibits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import InvalidNetwork, UnknownLabel, UnknownVertex

ROOT = "root"
LEAF = "leaf"
TREE = "tree"
RETICULATION = "reticulation"


class TrackedDigraph:
    """Mutable directed multigraph with leaf labels and vertex provenance.

    Parallel arcs are allowed (they appear transiently during simplification),
    so adjacency is kept as lists rather than sets.
    """

    def __init__(self):
        self.succ: dict[int, list[int]] = {}
        self.pred: dict[int, list[int]] = {}
        self.labels: dict[int, str] = {}
        self.provenance: dict[int, set[int]] = {}
        self.next_id = 0

    # construction -----------------------------------------------------------

    def add_vertex(self, vid: int | None = None, label: str | None = None) -> int:
        if vid is None:
            vid = self.next_id
        if vid in self.succ:
            raise ValueError(f"vertex {vid} already present")
        self.succ[vid] = []
        self.pred[vid] = []
        self.provenance[vid] = {vid}
        if label is not None:
            self.labels[vid] = label
        self.next_id = max(self.next_id, vid + 1)
        return vid

    def add_arc(self, u: int, v: int) -> None:
        self.succ[u].append(v)
        self.pred[v].append(u)

    def remove_arc(self, u: int, v: int) -> None:
        """Remove one copy of the arc ``(u, v)``."""
        self.succ[u].remove(v)
        self.pred[v].remove(u)

    def remove_vertex(self, v: int) -> None:
        for c in self.succ[v]:
            self.pred[c].remove(v)
        for p in self.pred[v]:
            self.succ[p].remove(v)
        del self.succ[v], self.pred[v], self.provenance[v]
        self.labels.pop(v, None)

    def suppress(self, v: int) -> int:
        """Suppress an in-degree-1/out-degree-1 vertex; return its parent.

        The suppressed vertex's provenance merges into the parent.
        """
        (p,) = self.pred[v]
        (c,) = self.succ[v]
        absorbed = self.provenance[v]
        self.remove_vertex(v)
        self.add_arc(p, c)
        self.provenance[p] |= absorbed
        return p

    def copy(self) -> TrackedDigraph:
        g = TrackedDigraph()
        g.succ = {v: list(cs) for v, cs in self.succ.items()}
        g.pred = {v: list(ps) for v, ps in self.pred.items()}
        g.labels = dict(self.labels)
        g.provenance = {v: set(s) for v, s in self.provenance.items()}
        g.next_id = self.next_id
        return g

    def induced(self, keep: Iterable[int]) -> TrackedDigraph:
        keep = set(keep)
        g = TrackedDigraph()
        for v in sorted(keep):
            g.succ[v] = [c for c in self.succ[v] if c in keep]
            g.pred[v] = [p for p in self.pred[v] if p in keep]
            g.provenance[v] = set(self.provenance[v])
            if v in self.labels:
                g.labels[v] = self.labels[v]
        g.next_id = self.next_id
        return g

    # read API shared with PhyloNetwork ----------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self.succ)

    def children(self, v: int) -> list[int]:
        return self.succ[v]

    def parents(self, v: int) -> list[int]:
        return self.pred[v]

    def arcs(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, cs in self.succ.items() for v in cs)

    def sources(self) -> list[int]:
        return sorted(v for v, ps in self.pred.items() if not ps)

    @property
    def root(self) -> int:
        srcs = self.sources()
        if len(srcs) != 1:
            raise ValueError(f"digraph has {len(srcs)} sources, expected exactly one")
        return srcs[0]

    def label(self, v: int) -> str | None:
        return self.labels.get(v)

    def leaf(self, label: str) -> int:
        for v, lab in self.labels.items():
            if lab == label:
                return v
        raise UnknownLabel(label)

    @property
    def leaf_labels(self) -> frozenset[str]:
        return frozenset(self.labels.values())

    def __len__(self) -> int:
        return len(self.succ)

    def __contains__(self, v) -> bool:
        return v in self.succ

    def __repr__(self) -> str:
        return f"TrackedDigraph({len(self.succ)} vertices, {sum(map(len, self.succ.values()))} arcs)"


@dataclass(frozen=True)
class Violation:
    axiom: str
    vertices: tuple[int, ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        where = f" at {list(self.vertices)}" if self.vertices else ""
        return f"{self.axiom}{where}" + (f": {self.detail}" if self.detail else "")


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, axiom: str, vertices: Iterable[int] = (), detail: str = "") -> None:
        self.violations.append(Violation(axiom, tuple(sorted(vertices)), detail))


def _topological_order(succ: Mapping[int, Iterable[int]]) -> list[int] | None:
    indeg = {v: 0 for v in succ}
    for cs in succ.values():
        for c in cs:
            indeg[c] += 1
    queue = deque(sorted(v for v, d in indeg.items() if d == 0))
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for c in succ[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    return order if len(order) == len(indeg) else None


def validate(g) -> ValidationReport:
    """Check every network axiom and report each violation.

    Accepts a :class:`TrackedDigraph` (arbitrary structure) or a
    :class:`PhyloNetwork` (which is valid by construction).
    """
    report = ValidationReport()
    verts = list(g.vertices)
    if not verts:
        report.add("non-empty", detail="network has no vertices")
        return report

    dangling = [v for v in verts for c in g.children(v) if c not in g]
    if dangling:
        report.add("arc endpoints", dangling, "arc to an unknown vertex")
        return report

    for v in verts:
        cs = g.children(v)
        if len(cs) != len(set(cs)):
            report.add("no parallel arcs", [v], "duplicate out-arcs")

    labels = {v: g.label(v) for v in verts if g.label(v) is not None}
    seen: dict[str, int] = {}
    for v, lab in sorted(labels.items()):
        if not lab:
            report.add("leaf labels", [v], "empty label")
        elif lab in seen:
            report.add("leaf labels", [seen[lab], v], f"label {lab!r} used twice")
        else:
            seen[lab] = v

    succ = {v: list(g.children(v)) for v in verts}
    if _topological_order(succ) is None:
        report.add("acyclic", detail="directed cycle present")

    sources = [v for v in verts if not g.parents(v)]
    if len(sources) != 1:
        report.add("unique root", sources, f"{len(sources)} vertices of in-degree zero")

    if len(verts) == 1:
        (v,) = verts
        if v not in labels:
            report.add("leaf labels", [v], "single-vertex network must be a labelled leaf")
        if g.children(v):
            report.add("degree", [v], "single vertex carries a loop")
        return report

    for v in verts:
        indeg, outdeg = len(g.parents(v)), len(g.children(v))
        if indeg == 0:
            if outdeg != 2:
                report.add("root degree", [v], f"root has out-degree {outdeg}")
            if v in labels:
                report.add("leaf labels", [v], "root carries a label")
        elif outdeg == 0:
            if indeg != 1:
                report.add("leaf degree", [v], f"leaf has in-degree {indeg}")
            if v not in labels:
                report.add("leaf labels", [v], "unlabelled vertex of out-degree zero")
        else:
            if v in labels:
                report.add("leaf labels", [v], "labelled vertex has children")
            if (indeg, outdeg) not in ((1, 2), (2, 1)):
                report.add("degree", [v], f"in-degree {indeg}, out-degree {outdeg}")

    if len(sources) == 1:
        reached = _reachable(succ, sources[0])
        missing = [v for v in verts if v not in reached]
        if missing:
            report.add("reachable from root", missing)
    return report


def _reachable(succ, start, blocked=None) -> set[int]:
    if start == blocked:
        return set()
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for c in succ[v]:
            if c not in seen and c != blocked:
                seen.add(c)
                stack.append(c)
    return seen


class PhyloNetwork:
    """Immutable rooted binary phylogenetic network with labelled leaves.

    Build one from a :class:`TrackedDigraph` with :meth:`from_digraph`, or from
    a list of arcs with :meth:`from_arcs`.  Construction validates and raises
    :class:`~orchardnet.errors.InvalidNetwork` on failure.
    """

    __slots__ = ("_children", "_parents", "_labels", "_leaf_index", "_root",
                 "_provenance", "_next_id", "_hash")

    def __init__(self, *args, **kwargs):
        raise TypeError("use PhyloNetwork.from_digraph or PhyloNetwork.from_arcs")

    @classmethod
    def from_digraph(cls, g: TrackedDigraph) -> PhyloNetwork:
        report = validate(g)
        if not report.ok:
            raise InvalidNetwork(report)
        net = object.__new__(cls)
        set_ = object.__setattr__
        set_(net, "_children", MappingProxyType({v: tuple(sorted(g.succ[v])) for v in sorted(g.succ)}))
        set_(net, "_parents", MappingProxyType({v: tuple(sorted(g.pred[v])) for v in sorted(g.pred)}))
        set_(net, "_labels", MappingProxyType(dict(sorted(g.labels.items()))))
        set_(net, "_leaf_index", MappingProxyType({lab: v for v, lab in g.labels.items()}))
        set_(net, "_root", g.sources()[0])
        set_(net, "_provenance", MappingProxyType({v: frozenset(s) for v, s in g.provenance.items()}))
        set_(net, "_next_id", max(g.next_id, max(g.succ) + 1))
        set_(net, "_hash", None)
        return net

    @classmethod
    def from_arcs(cls, arcs: Iterable[tuple[int, int]], labels: Mapping[int, str],
                  vertices: Iterable[int] = ()) -> PhyloNetwork:
        g = TrackedDigraph()
        verts = set(vertices) | set(labels)
        arcs = list(arcs)
        for u, v in arcs:
            verts.update((u, v))
        for v in sorted(verts):
            g.add_vertex(v, labels.get(v))
        for u, v in arcs:
            g.add_arc(u, v)
        return cls.from_digraph(g)

    @classmethod
    def single(cls, label: str, vid: int = 0) -> PhyloNetwork:
        return cls.from_arcs([], {vid: label})

    def __setattr__(self, name, value):
        raise AttributeError("PhyloNetwork is immutable")

    # structure -----------------------------------------------------------------

    @property
    def root(self) -> int:
        return self._root

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._children)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, cs in self._children.items() for v in cs]

    def children(self, v: int) -> tuple[int, ...]:
        try:
            return self._children[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def parents(self, v: int) -> tuple[int, ...]:
        try:
            return self._parents[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def parent(self, v: int) -> int:
        (p,) = self.parents(v)
        return p

    def kind(self, v: int) -> str:
        ps, cs = self.parents(v), self._children[v]
        if not ps:
            return LEAF if not cs else ROOT
        if not cs:
            return LEAF
        return RETICULATION if len(ps) == 2 else TREE

    def is_leaf(self, v: int) -> bool:
        return v in self._labels

    def is_reticulation(self, v: int) -> bool:
        return len(self.parents(v)) == 2

    def is_tree_vertex(self, v: int) -> bool:
        return len(self.parents(v)) == 1 and len(self._children[v]) == 2

    def label(self, v: int) -> str | None:
        return self._labels.get(v)

    @property
    def labels(self) -> Mapping[int, str]:
        return self._labels

    def leaf(self, label: str) -> int:
        try:
            return self._leaf_index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    @property
    def leaf_labels(self) -> frozenset[str]:
        return frozenset(self._leaf_index)

    @property
    def reticulations(self) -> list[int]:
        return [v for v, ps in self._parents.items() if len(ps) == 2]

    @property
    def n_leaves(self) -> int:
        return len(self._labels)

    @property
    def n_reticulations(self) -> int:
        return sum(1 for ps in self._parents.values() if len(ps) == 2)

    @property
    def next_id(self) -> int:
        return self._next_id

    @property
    def provenance(self) -> Mapping[int, frozenset[int]]:
        """Source vertices absorbed into each vertex while this network was derived."""
        return self._provenance

    def is_single_vertex(self) -> bool:
        return len(self._children) == 1

    def to_digraph(self) -> TrackedDigraph:
        g = TrackedDigraph()
        g.succ = {v: list(cs) for v, cs in self._children.items()}
        g.pred = {v: list(ps) for v, ps in self._parents.items()}
        g.labels = dict(self._labels)
        g.provenance = {v: {v} for v in self._children}
        g.next_id = self._next_id
        return g

    def renumbered(self, mapping: Mapping[int, int]) -> PhyloNetwork:
        """Copy of this network with vertex ids replaced through ``mapping``."""
        return PhyloNetwork.from_arcs(
            [(mapping[u], mapping[v]) for u, v in self.arcs()],
            {mapping[v]: lab for v, lab in self._labels.items()},
            vertices=[mapping[v] for v in self._children],
        )

    def __len__(self) -> int:
        return len(self._children)

    def __contains__(self, v) -> bool:
        return v in self._children

    def __iter__(self) -> Iterator[int]:
        return iter(self._children)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhyloNetwork):
            return NotImplemented
        return (self._children == other._children) and (self._labels == other._labels)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((tuple(self.arcs()), tuple(self._labels.items()))))
        return self._hash

    def __repr__(self) -> str:
        return (f"PhyloNetwork(leaves={sorted(self._leaf_index)}, vertices={len(self)}, "
                f"reticulations={self.n_reticulations})")


# ancestry ----------------------------------------------------------------------

def _check_vertex(g, v) -> None:
    if v not in g:
        raise UnknownVertex(v)


def is_ancestor(g, u: int, v: int) -> bool:
    """True iff there is a directed path from ``u`` to ``v`` (including ``u == v``)."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        return True
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        for c in g.children(w):
            if c == v:
                return True
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def descendants(g, u: int) -> set[int]:
    return _reachable({v: g.children(v) for v in g.vertices}, u)


def ancestors(g, targets: Iterable[int]) -> set[int]:
    seen = set(targets)
    stack = list(seen)
    while stack:
        w = stack.pop()
        for p in g.parents(w):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def _leaf_vertices(g, labels: Iterable[str]) -> list[int]:
    labels = list(labels)
    if not labels:
        raise ValueError("leaf set must be non-empty")
    return [g.leaf(lab) for lab in labels]


def stable_ancestors(g, labels: Iterable[str]) -> list[int]:
    """Vertices lying on every root-to-leaf path for every leaf in ``labels``.

    Returned from highest to lowest; any two stable ancestors are comparable.
    Each candidate is removed in turn and reachability re-tested.
    """
    targets = _leaf_vertices(g, labels)
    root = g.root
    succ = {v: g.children(v) for v in g.vertices}
    candidates = ancestors(g, targets)
    found = []
    for v in candidates:
        reached = _reachable(succ, root, blocked=v)
        if not any(t in reached for t in targets):
            found.append(v)
    order = {v: i for i, v in enumerate(_topological_order(succ))}
    return sorted(found, key=order.__getitem__)


def lowest_stable_ancestor(g, labels: Iterable[str]) -> int:
    return stable_ancestors(g, labels)[-1]


def is_recoverable(net) -> bool:
    return lowest_stable_ancestor(net, net.leaf_labels) == net.root
