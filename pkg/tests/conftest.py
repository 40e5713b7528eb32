import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mixedborda.generators import COST_PALETTES, random_delegation_graph
from mixedborda.graph_core import prepare

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def delegation_graphs(draw, n_nodes=(2, 7)):
    """Preprocessed random delegation graphs drawn through the suite generator."""
    rng = random.Random(draw(st.integers(0, 2**32)))
    costs = draw(st.sampled_from(COST_PALETTES))
    graph = random_delegation_graph(
        rng, n_nodes, costs=costs, sink_cost_bonus=draw(st.sampled_from((0, 1)))
    )
    return prepare(graph)[0]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
