"""Finite span diagrams: two sorts of vertices bridged by labelled edges.

A span file declares the A-side vertices, the B-side vertices, the bridging
edges, and a basepoint on the A side:

    # a circle: one vertex on each side, two parallel edges
    A a
    B b
    S s a b
    S t a b
    base a

Lines starting with '#' are comments, tokens are whitespace separated, and
labels match [A-Za-z0-9_]+. Declaration order is significant: it is the
canonical order used for all tie-breaking downstream, so parsing followed by
serializing is the identity on valid spans.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

_LABEL = re.compile(r"[A-Za-z0-9_]+\Z")


class SpanError(ValueError):
    """A malformed span file or invalid span datum, with a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class Vertex(NamedTuple):
    """A vertex of the realized graph, tagged with its side ("A" or "B")."""

    side: str
    index: int


@dataclass(frozen=True)
class FiniteSpan:
    """Two finite vertex sorts, a finite edge set bridging them, and a basepoint.

    ``edges[s]`` is ``(label, a_index, b_index)``: edge ``s`` runs from
    ``a_vertices[a_index]`` to ``b_vertices[b_index]``. The basepoint is an
    index into ``a_vertices``.
    """

    a_vertices: tuple
    b_vertices: tuple
    edges: tuple
    basepoint: int

    def __post_init__(self):
        for sort, labels in (("A", self.a_vertices), ("B", self.b_vertices)):
            seen = set()
            for lab in labels:
                if lab in seen:
                    raise SpanError("duplicate %s label %r" % (sort, lab))
                seen.add(lab)
        seen = set()
        for label, a, b in self.edges:
            if label in seen:
                raise SpanError("duplicate edge label %r" % (label,))
            seen.add(label)
            if not 0 <= a < len(self.a_vertices):
                raise SpanError("edge %r: A endpoint index %d out of range" % (label, a))
            if not 0 <= b < len(self.b_vertices):
                raise SpanError("edge %r: B endpoint index %d out of range" % (label, b))
        if not 0 <= self.basepoint < len(self.a_vertices):
            raise SpanError("basepoint index %d out of range" % (self.basepoint,))

    def a_end(self, s):
        """A-side endpoint index of edge ``s``."""
        return self.edges[s][1]

    def b_end(self, s):
        """B-side endpoint index of edge ``s``."""
        return self.edges[s][2]

    def edge_label(self, s):
        return self.edges[s][0]

    @property
    def base_vertex(self):
        return Vertex("A", self.basepoint)

    def vertex_label(self, v):
        labels = self.a_vertices if v.side == "A" else self.b_vertices
        return labels[v.index]

    def vertices(self):
        """All vertices, A side first, in declaration order."""
        out = [Vertex("A", i) for i in range(len(self.a_vertices))]
        out += [Vertex("B", j) for j in range(len(self.b_vertices))]
        return out

    def edges_at(self, v):
        """Indices of edges incident to ``v``, in declaration order."""
        end = 1 if v.side == "A" else 2
        return tuple(s for s, e in enumerate(self.edges) if e[end] == v.index)

    def lookup_vertex(self, name):
        """Resolve a vertex label to a Vertex.

        An ``A:`` or ``B:`` prefix forces the side; otherwise the label must
        occur in exactly one sort.
        """
        side = None
        if name[:2] in ("A:", "B:"):
            side, name = name[0], name[2:]
        a_hit = name in self.a_vertices
        b_hit = name in self.b_vertices
        if side == "A" or (side is None and a_hit and not b_hit):
            if not a_hit:
                raise SpanError("unknown A vertex %r" % (name,))
            return Vertex("A", self.a_vertices.index(name))
        if side == "B" or (side is None and b_hit and not a_hit):
            if not b_hit:
                raise SpanError("unknown B vertex %r" % (name,))
            return Vertex("B", self.b_vertices.index(name))
        if a_hit and b_hit:
            raise SpanError("ambiguous vertex %r (use A:%s or B:%s)" % (name, name, name))
        raise SpanError("unknown vertex %r" % (name,))


def _check_label(tok, lineno):
    if not _LABEL.match(tok):
        raise SpanError("bad label %r" % (tok,), lineno)


def parse_span(text):
    """Parse span-file text into a FiniteSpan.

    Raises SpanError, with the offending line number, for syntax errors,
    duplicate labels, unknown edge endpoints, a duplicated or missing ``base``
    line, or a basepoint that is not an A vertex.
    """
    a_labels, b_labels = [], []
    a_lines, b_lines = {}, {}
    raw_edges = []
    edge_lines = {}
    base = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        head, rest = tokens[0], tokens[1:]
        if head in ("A", "B"):
            if not rest:
                raise SpanError("expected at least one label after %r" % (head,), lineno)
            labels, lines = (a_labels, a_lines) if head == "A" else (b_labels, b_lines)
            for tok in rest:
                _check_label(tok, lineno)
                if tok in lines:
                    raise SpanError("duplicate %s label %r" % (head, tok), lineno)
                lines[tok] = lineno
                labels.append(tok)
        elif head == "S":
            if len(rest) != 3:
                raise SpanError("expected 'S <edge> <A-vertex> <B-vertex>'", lineno)
            for tok in rest:
                _check_label(tok, lineno)
            if rest[0] in edge_lines:
                raise SpanError("duplicate edge label %r" % (rest[0],), lineno)
            edge_lines[rest[0]] = lineno
            raw_edges.append((lineno, rest[0], rest[1], rest[2]))
        elif head == "base":
            if len(rest) != 1:
                raise SpanError("expected 'base <A-vertex>'", lineno)
            _check_label(rest[0], lineno)
            if base is not None:
                raise SpanError("duplicate base line", lineno)
            base = (rest[0], lineno)
        else:
            raise SpanError("unknown directive %r" % (head,), lineno)
    a_index = {lab: i for i, lab in enumerate(a_labels)}
    b_index = {lab: j for j, lab in enumerate(b_labels)}
    edges = []
    for lineno, label, a_lab, b_lab in raw_edges:
        if a_lab not in a_index:
            raise SpanError("unknown A endpoint %r" % (a_lab,), lineno)
        if b_lab not in b_index:
            raise SpanError("unknown B endpoint %r" % (b_lab,), lineno)
        edges.append((label, a_index[a_lab], b_index[b_lab]))
    if base is None:
        raise SpanError("missing basepoint ('base <A-vertex>' line)")
    base_label, base_line = base
    if base_label not in a_index:
        raise SpanError("basepoint %r not in A" % (base_label,), base_line)
    return FiniteSpan(tuple(a_labels), tuple(b_labels), tuple(edges), a_index[base_label])


def serialize_span(span):
    """Render a FiniteSpan back into span-file text; inverse of parse_span."""
    lines = ["A " + " ".join(span.a_vertices)]
    if span.b_vertices:
        lines.append("B " + " ".join(span.b_vertices))
    for label, a, b in span.edges:
        lines.append("S %s %s %s" % (label, span.a_vertices[a], span.b_vertices[b]))
    lines.append("base " + span.a_vertices[span.basepoint])
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RealizedGraph:
    """The span's geometric realization: vertices A + B, one edge per span edge.

    Bipartite between the two sides. ``incidence[v]`` lists ``(edge, other
    endpoint)`` pairs in edge declaration order.
    """

    vertices: tuple
    edge_ends: tuple
    incidence: dict = field(compare=False, repr=False)


def realize(span):
    """Build the RealizedGraph of a span: |V| = |A| + |B|, |E| = |S|."""
    vertices = tuple(span.vertices())
    incidence = {v: [] for v in vertices}
    edge_ends = []
    for s in range(len(span.edges)):
        u = Vertex("A", span.a_end(s))
        v = Vertex("B", span.b_end(s))
        edge_ends.append((u, v))
        incidence[u].append((s, v))
        incidence[v].append((s, u))
    incidence = {v: tuple(pairs) for v, pairs in incidence.items()}
    return RealizedGraph(vertices, tuple(edge_ends), incidence)


def component_of(graph, v):
    """Connected component of ``v`` and a deterministic BFS spanning tree.

    Returns ``(vertices, tree_edges)``; the tree is discovered breadth first,
    scanning incident edges in declaration order, so it is unique for a given
    input span. A component with k vertices yields k - 1 tree edges.
    """
    if v not in graph.incidence:
        raise ValueError("unknown vertex %r" % (v,))
    seen = {v}
    tree = []
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for e, w in graph.incidence[u]:
            if w not in seen:
                seen.add(w)
                tree.append(e)
                queue.append(w)
    return seen, tuple(tree)
