import pytest

from raagvcd.graph_core import DefiningGraph
from raagvcd.corpus import spider


@pytest.fixture
def g_p5() -> DefiningGraph:
    """Path a-b-c-d-e."""
    return DefiningGraph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")])


@pytest.fixture
def g_c5l() -> DefiningGraph:
    """5-cycle v1..v5 with a leaf u at v1."""
    return DefiningGraph.from_edges(
        [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v1"), ("v1", "u")]
    )


@pytest.fixture
def g_square() -> DefiningGraph:
    return DefiningGraph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])


@pytest.fixture
def g_spider() -> DefiningGraph:
    """Center with three legs of two edges each."""
    return spider()


@pytest.fixture
def g_star() -> DefiningGraph:
    return DefiningGraph.from_edges([("a", "b"), ("a", "c"), ("a", "d")])
