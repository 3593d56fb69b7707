import os
import sys
from pathlib import Path

import pytest

from dksrank.graph import Graph

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]
MANIFEST = Path(os.environ.get("DKSRANK_MANIFEST", ROOT / "data" / "manifest.txt"))

STAR_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4)]
K4_PENDANT_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)]


@pytest.fixture
def star():
    """S4: centre 0 with leaves 1..4."""
    return Graph.from_edges(STAR_EDGES)


@pytest.fixture
def triangle():
    return Graph.from_edges([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def k4_pendant():
    return Graph.from_edges(K4_PENDANT_EDGES)


@pytest.fixture
def path3():
    return Graph.from_edges([(0, 1), (1, 2)], labels=["a", "b", "c"])


# ---------------------------------------------------------------------------
# acceptance summary
# ---------------------------------------------------------------------------

_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; call with (status, detail)."""

    def record(status, detail=""):
        _ACCEPTANCE_LINES.append(f"{request.node.name}: {status}  {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
