"""Independent ground truth: plain graph traversal on the realized graph.

The walk enumerator and the rank computation work on the realized graph
alone and deliberately share no logic with the word or stage modules; they
are what the rest of the engine is cross-checked against. A walk is
non-backtracking when no edge is immediately retraversed, which for a
bipartite multigraph is exactly the reduced-word condition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .span import component_of, realize
from .words import FWD, enumerate_words


@dataclass(frozen=True)
class Walk:
    """A walk in the realized graph: one more vertex than edges, incidences matching."""

    vertices: tuple
    edges: tuple


def nbt_walks(graph, start, end, max_len):
    """All non-backtracking walks from start to end of length <= max_len.

    Ordered by (length, lexicographic edge index sequence). The empty walk
    is included when start equals end.
    """
    for v in (start, end):
        if v not in graph.incidence:
            raise ValueError("unknown vertex %r" % (v,))
    out = []
    frontier = [Walk((start,), ())]
    if start == end:
        out.append(frontier[0])
    for _ in range(max_len):
        nxt = []
        for walk in frontier:
            at = walk.vertices[-1]
            last = walk.edges[-1] if walk.edges else None
            for e, other in graph.incidence[at]:
                if e == last:
                    continue
                extended = Walk(walk.vertices + (other,), walk.edges + (e,))
                nxt.append(extended)
                if other == end:
                    out.append(extended)
        frontier = nxt
        if not frontier:
            break
    return out


def pi1_rank(graph, base):
    """Rank of the free fundamental group of base's component: edges - vertices + 1."""
    component, _tree = component_of(graph, base)
    edges_inside = sum(1 for u, _v in graph.edge_ends if u in component)
    return edges_inside - len(component) + 1


@dataclass
class WordWalkReport:
    count: int
    mismatch: str | None

    @property
    def ok(self):
        return self.mismatch is None


def compare_words_walks(span, endpoint, max_len):
    """Check the step-for-step match between reduced words and walks.

    The i-th enumerated word and the i-th enumerated walk must cross the
    same edges in the same order, with forward steps traversing A to B and
    backward steps B to A. Reports the first mismatch instead of raising.
    """
    words = enumerate_words(span, endpoint, max_len)
    graph = realize(span)
    walks = nbt_walks(graph, span.base_vertex, endpoint, max_len)
    if len(words) != len(walks):
        return WordWalkReport(
            len(words), "%d words but %d walks" % (len(words), len(walks))
        )
    for i, (word, walk) in enumerate(zip(words, walks)):
        if len(word) != len(walk.edges):
            return WordWalkReport(len(words), "item %d: lengths differ" % (i,))
        for j, step in enumerate(word):
            if step.edge != walk.edges[j]:
                return WordWalkReport(
                    len(words), "item %d step %d: edges differ" % (i, j)
                )
            src, dst = walk.vertices[j], walk.vertices[j + 1]
            if step.direction == FWD:
                fits = src.side == "A" and dst.side == "B"
            else:
                fits = src.side == "B" and dst.side == "A"
            if not fits or src.index != (
                span.a_end(step.edge) if src.side == "A" else span.b_end(step.edge)
            ):
                return WordWalkReport(
                    len(words), "item %d step %d: orientation differs" % (i, j)
                )
    return WordWalkReport(len(words), None)
