import pytest
from hypothesis import strategies as st

from bimeyniel import complete_bipartite, directed_cycle, generate_h2, generate_h3
from bimeyniel.families import H1Spec, generate_h1
from bimeyniel.verify import digraph_at, universe_size


@pytest.fixture
def h2():
    return generate_h2()


@pytest.fixture
def h3_4():
    return generate_h3(4)


@pytest.fixture
def h1_3_minimal():
    return generate_h1(H1Spec.minimal(3))


@pytest.fixture
def k3():
    return complete_bipartite(3)


@pytest.fixture
def c6():
    return directed_cycle(3)


@st.composite
def digraphs(draw, min_a=1, max_a=4):
    a = draw(st.integers(min_a, max_a))
    k = draw(st.integers(0, universe_size(a) - 1))
    return digraph_at(a, k)


@st.composite
def dense_digraphs(draw, min_a=2, max_a=4):
    """Digraphs biased toward many arcs, where the degree conditions bite."""
    a = draw(st.integers(min_a, max_a))
    digits = draw(st.lists(st.sampled_from([1, 2, 3, 3, 3]), min_size=a * a, max_size=a * a))
    k = sum(d << (2 * p) for p, d in enumerate(digits))
    return digraph_at(a, k)


def arcs_from_names(*names):
    return [tuple(n.split("-")) for n in names]


def naive_arcs(D):
    return {(str(u), str(v)) for u, v in D.arcs()}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
