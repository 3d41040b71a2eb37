import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "kneadkit", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("kneadkit")

from kneadkit.words import FOUR_VERTEX, TREE, UNIMODAL, Word  # noqa: E402

SYSTEMS = {"unimodal": UNIMODAL, "four-vertex": FOUR_VERTEX, "tree": TREE}


@pytest.fixture
def W():
    """W(graph, "1001") shorthand; graph defaults to the unimodal system."""
    def make(s, g=UNIMODAL):
        return Word.parse(g, s)
    return make


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
