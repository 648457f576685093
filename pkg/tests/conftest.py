import pytest

from spanpaths.span import parse_span

CORPUS_TEXT = {
    "circle": "A a\nB b\nS s a b\nS t a b\nbase a\n",
    "interval": "A a\nB b\nS s a b\nbase a\n",
    "theta": "A a\nB b\nS s a b\nS t a b\nS u a b\nbase a\n",
    "tree4": "A a1 a2\nB b1 b2\nS s1 a1 b1\nS s2 a1 b2\nS s3 a2 b1\nbase a1\n",
    "coproduct": "A a0 a1\nB b0\nbase a0\n",
}


@pytest.fixture
def circle():
    return parse_span(CORPUS_TEXT["circle"])


@pytest.fixture
def interval():
    return parse_span(CORPUS_TEXT["interval"])


@pytest.fixture
def theta():
    return parse_span(CORPUS_TEXT["theta"])


@pytest.fixture
def tree4():
    return parse_span(CORPUS_TEXT["tree4"])


@pytest.fixture
def coproduct():
    return parse_span(CORPUS_TEXT["coproduct"])


@pytest.fixture
def corpus():
    return {name: parse_span(text) for name, text in CORPUS_TEXT.items()}
