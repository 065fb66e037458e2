import pytest

ACCEPTANCE_TITLES = {
    1: "three-bump alternating combination norms",
    2: "telescoping sums",
    3: "L2 non-minimality witness",
    4: "tail mass covering bound",
    5: "Rademacher moment oracle",
    6: "Rademacher-tail growth law",
    7: "telescoping Rademacher dichotomy",
    8: "lacunary block equivalence",
    9: "partition embedding distortion",
    10: "discrete witnesses",
    11: "Fourier transform consistency",
}

_results = {}


@pytest.fixture
def record_acceptance():
    """Store ``(ok, detail)`` for a numbered criterion; the terminal
    summary prints one line per criterion."""

    def record(number, ok, detail=""):
        _results[number] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in ACCEPTANCE_TITLES.items():
        if number in _results:
            ok, detail = _results[number]
            status = "PASS" if ok else "FAIL"
        else:
            status, detail = "NOT RUN", "deselected or errored before recording"
        terminalreporter.write_line(f"#{number:<2} {status:<7} {title}: {detail}")
