import pytest

from wdwb import acceptability_scan
from wdwb.cases import weidner_datum
from wdwb.groups import GroupDescriptor


@pytest.fixture(scope="session")
def so6_scan():
    """The default-budget SO_6 scan, shared between the case tests and the acceptance suite."""
    return acceptability_scan(weidner_datum(), GroupDescriptor.parse("SO6"), budget=500, seed=0)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
