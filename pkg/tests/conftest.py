import numpy as np
import pytest

from citeweight import CitationMatrix, JournalSet, price_matrix


@pytest.fixture
def price():
    return price_matrix()


@pytest.fixture
def small():
    """3x3 all-positive matrix with unequal margins."""
    counts = np.array([[5, 2, 1], [3, 7, 2], [1, 1, 4]])
    return CitationMatrix(JournalSet(("A", "B", "C")), counts)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for status, tag in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and "::" in nodeid:
                lines.append((nodeid.split("::")[-1], tag))
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance checks:")
        for name, tag in sorted(lines):
            terminalreporter.write_line(f"  {tag}: {name}")
