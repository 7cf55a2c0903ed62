import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_criteria: dict[str, tuple[str, str]] = {}
_notes: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _criteria[name] = (report.outcome, f"{report.duration:.2f}s")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        outcome, dur = _criteria[name]
        num = name.split("_")[2]
        label = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {int(num):>2}: {label}  {name}  ({dur})")
        for line in _notes.get(name, ()):
            terminalreporter.write_line(f"              {line}")


@pytest.fixture
def note(request):
    """Attach a line of measured detail to the acceptance summary."""
    return lambda text: _notes.setdefault(request.node.name, []).append(text)


@pytest.fixture(scope="session")
def n4():
    from impartial_rank.blocking import n4_mechanism

    return n4_mechanism()


@pytest.fixture(scope="session")
def wu5():
    from impartial_rank.tricolor import tricolor_mechanism

    return tricolor_mechanism(5)


@pytest.fixture(scope="session")
def n4_table(n4):
    from impartial_rank.axioms import full_positions_table

    return full_positions_table(n4)
