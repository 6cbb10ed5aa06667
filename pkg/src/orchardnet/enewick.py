"""Extended Newick reading and writing, plus DOT export.

Dialect: leaves are bare labels; a reticulation is written once as
``(child)#H1`` and its second parent refers to it with the bare tag ``#H1``.
Tree vertices carry no labels and there are no branch lengths.  Labels may
not contain whitespace or any of ``(),;:#[]``.  Square-bracket comments are
skipped.
"""

from __future__ import annotations

import hashlib

from .errors import ENewickSemanticError, ENewickSyntaxError
from .network import PhyloNetwork, TrackedDigraph, validate

_SPECIAL = set("(),;:#[]")


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def syntax(self, msg: str, pos: int | None = None) -> ENewickSyntaxError:
        return ENewickSyntaxError(msg, *self.where(pos))

    def skip(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "[":
                end = self.text.find("]", self.pos)
                if end < 0:
                    raise self.syntax("unterminated comment")
                self.pos = end + 1
            else:
                return

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.syntax(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in _SPECIAL or ch.isspace():
                break
            self.pos += 1
        return self.text[start:self.pos]


def parse_enewick_digraph(text: str) -> TrackedDigraph:
    """Parse into an unvalidated digraph.

    Raises ``ENewickSyntaxError`` on malformed text and ``ENewickSemanticError``
    on tag misuse or internal labels; degree axioms are left to :func:`validate`.
    """
    r = _Reader(text)
    g = TrackedDigraph()
    defined: dict[str, int] = {}
    references: dict[str, list[tuple[int, tuple[int, int]]]] = {}

    def node(parent: int | None) -> None:
        start = r.pos
        children_start = r.peek() == "("
        vid = g.add_vertex()
        if parent is not None:
            g.add_arc(parent, vid)
        if children_start:
            r.expect("(")
            node(vid)
            while r.peek() == ",":
                r.pos += 1
                node(vid)
            r.expect(")")
        label = r.word()
        tag = None
        if r.peek() == "#":
            r.pos += 1
            tag = r.word()
            if not tag:
                raise r.syntax("empty hybrid tag")
        if label:
            if children_start:
                raise ENewickSemanticError(f"internal vertex label {label!r} is not supported",
                                           *r.where(start))
            g.labels[vid] = label
        if tag is None:
            if not children_start and not label:
                raise r.syntax("empty subtree", start)
            return
        if not children_start and not label:
            # bare reference: the vertex stands for the tagged reticulation
            g.remove_vertex(vid)
            references.setdefault(tag, []).append((parent, r.where(start)))
            return
        if tag in defined:
            raise ENewickSemanticError(f"hybrid tag #{tag} defined twice", *r.where(start))
        defined[tag] = vid

    node(None)
    if r.peek() != ";":
        raise r.syntax("expected ';' at end of network")
    r.pos += 1
    if r.peek():
        raise r.syntax("trailing text after ';'")

    for tag, refs in references.items():
        if tag not in defined:
            raise ENewickSemanticError(f"hybrid tag #{tag} is never defined", *refs[0][1])
        for parent, where in refs:
            if parent is None:
                raise ENewickSemanticError(f"bare hybrid tag #{tag} as the whole network", *where)
            g.add_arc(parent, defined[tag])
    for tag, vid in defined.items():
        if len(references.get(tag, [])) != 1:
            n = 1 + len(references.get(tag, []))
            raise ENewickSemanticError(f"hybrid tag #{tag} occurs {n} times, expected 2")
    return g


def parse_enewick(text: str) -> PhyloNetwork:
    g = parse_enewick_digraph(text)
    report = validate(g)
    if not report.ok:
        raise ENewickSemanticError("; ".join(str(v) for v in report.violations))
    return PhyloNetwork.from_digraph(g)


def _subtree_keys(net: PhyloNetwork) -> dict[int, tuple[str, str]]:
    """(smallest descendant leaf label, structural digest) for every vertex."""
    keys: dict[int, tuple[str, str]] = {}

    def visit(v):
        if v not in keys:
            if net.is_leaf(v):
                keys[v] = (net.label(v), hashlib.sha256(b"L" + net.label(v).encode()).hexdigest())
            else:
                child = sorted(visit(c) for c in net.children(v))
                h = hashlib.sha256(("R" if net.is_reticulation(v) else "T").encode())
                for _, d in child:
                    h.update(d.encode())
                keys[v] = (child[0][0], h.hexdigest())
        return keys[v]

    for v in net.vertices:
        visit(v)
    return keys


def _ordered_children(net: PhyloNetwork):
    keys = _subtree_keys(net)
    return lambda v: sorted(net.children(v), key=lambda c: (keys[c], c))


def write_enewick(net: PhyloNetwork) -> str:
    """Deterministic eNewick text for ``net`` (no trailing newline)."""
    ordered = _ordered_children(net)
    tags: dict[int, int] = {}

    def write(v) -> str:
        if net.is_leaf(v):
            return net.label(v)
        if net.is_reticulation(v):
            if v in tags:
                return f"#H{tags[v]}"
            tags[v] = len(tags) + 1
            n = tags[v]
            return "(" + ",".join(write(c) for c in ordered(v)) + f")#H{n}"
        return "(" + ",".join(write(c) for c in ordered(v)) + ")"

    return write(net.root) + ";"


def write_dot(net: PhyloNetwork, name: str = "network") -> str:
    """Graphviz DOT; reticulations are squares, tree vertices circles."""
    ordered = _ordered_children(net)
    order: dict[int, int] = {}

    def visit(v):
        if v in order:
            return
        order[v] = len(order)
        for c in ordered(v):
            visit(c)

    visit(net.root)
    lines = [f"digraph {name} {{"]
    for v in sorted(order, key=order.__getitem__):
        if net.is_leaf(v):
            attrs = f'shape=plaintext, label="{net.label(v)}"'
        elif net.is_reticulation(v):
            attrs = 'shape=square, label=""'
        else:
            attrs = 'shape=circle, label=""'
        lines.append(f"  v{order[v]} [{attrs}];")
    for u, v in sorted((order[u], order[v]) for u, v in net.arcs()):
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
