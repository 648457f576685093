import pytest

from spanpaths.oracle import Walk, compare_words_walks, nbt_walks, pi1_rank
from spanpaths.span import Vertex, realize


def exact_length_counts(graph, start, max_len):
    counts = [0] * (max_len + 1)
    for end in graph.vertices:
        for walk in nbt_walks(graph, start, end, max_len):
            counts[len(walk.edges)] += 1
    return counts


def test_walks_circle(circle):
    walks = nbt_walks(realize(circle), Vertex("A", 0), Vertex("A", 0), 4)
    assert len(walks) == 5
    assert walks[0] == Walk((Vertex("A", 0),), ())


def test_walks_interval(interval):
    walks = nbt_walks(realize(interval), Vertex("A", 0), Vertex("A", 0), 10)
    assert len(walks) == 1
    assert walks[0].edges == ()


def test_walks_theta(theta):
    walks = nbt_walks(realize(theta), Vertex("A", 0), Vertex("B", 0), 3)
    assert len(walks) == 15  # 3 single crossings, 3*2*2 triple crossings


def test_walks_are_ordered_and_valid(theta):
    graph = realize(theta)
    walks = nbt_walks(graph, Vertex("A", 0), Vertex("B", 0), 5)
    keys = [(len(w.edges), w.edges) for w in walks]
    assert keys == sorted(keys)
    for walk in walks:
        assert len(walk.vertices) == len(walk.edges) + 1
        for j, e in enumerate(walk.edges):
            ends = set(graph.edge_ends[e])
            assert {walk.vertices[j], walk.vertices[j + 1]} == ends
            if j:
                assert walk.edges[j] != walk.edges[j - 1]


def test_walks_unknown_vertex(circle):
    with pytest.raises(ValueError, match="unknown vertex"):
        nbt_walks(realize(circle), Vertex("A", 9), Vertex("A", 0), 2)


@pytest.mark.parametrize(
    "name, rank", [("circle", 1), ("interval", 0), ("theta", 2), ("tree4", 0), ("coproduct", 0)]
)
def test_pi1_ranks(corpus, name, rank):
    span = corpus[name]
    assert pi1_rank(realize(span), span.base_vertex) == rank


def test_regular_degree_recurrence(circle, theta):
    # on d-regular multigraphs each walk extends in exactly d - 1 ways
    for span, degree in ((circle, 2), (theta, 3)):
        counts = exact_length_counts(realize(span), span.base_vertex, 6)
        for k in range(1, 6):
            assert counts[k + 1] == counts[k] * (degree - 1)


def test_compare_words_walks_circle(circle):
    report = compare_words_walks(circle, Vertex("A", 0), 6)
    assert report.ok
    assert report.count == 7


def test_compare_words_walks_disconnected(coproduct):
    report = compare_words_walks(coproduct, Vertex("A", 1), 8)
    assert report.ok
    assert report.count == 0


def test_compare_words_walks_theta(theta):
    report = compare_words_walks(theta, Vertex("B", 0), 5)
    assert report.ok
    assert report.count == 63  # 3 + 12 + 48 crossing sequences


def test_compare_words_walks_full_corpus(corpus):
    for span in corpus.values():
        for v in span.vertices():
            assert compare_words_walks(span, v, 8).ok
