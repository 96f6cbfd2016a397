import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from threshkit.setsystem import GroundSet, family_from_labels, normalize  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def two_pairs():
    """<{1,2},{1,3}>: its 2-clone has a cheapest cover that is not a clone."""
    return family_from_labels("123", [[1, 2], [1, 3]])


@pytest.fixture
def triangle():
    return family_from_labels("123", [[1, 2], [1, 3], [2, 3]])


@pytest.fixture
def dictator():
    return family_from_labels("1", [[1]])


@st.composite
def families(draw, max_n=4, max_generators=5):
    n = draw(st.integers(1, max_n))
    raw = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=max_generators))
    return normalize(raw, GroundSet.range(n))


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
