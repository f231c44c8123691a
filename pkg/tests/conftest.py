import pytest
from hypothesis import strategies as st

from matvol.matroid import MatroidError, direct_sum, graphic, uniform

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def small_graphic(draw, max_vertices=5, max_edges=7):
    nv = draw(st.integers(2, max_vertices))
    pairs = [(a, b) for a in range(nv) for b in range(a + 1, nv)]
    edges = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=max_edges))
    return graphic(nv, edges)


@st.composite
def small_uniform(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, n))
    return uniform(r, n)


def _sum(pair):
    a, b = pair
    if a.n + b.n > 7:
        return a
    return direct_sum(a, b)


matroids = st.one_of(
    small_uniform(),
    small_graphic(),
    st.tuples(small_uniform(4), small_uniform(4)).map(_sum),
)

__all__ = ["matroids", "MatroidError"]
