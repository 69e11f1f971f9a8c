import pytest

from betlab import BetProblem, LogShifted, make_lottery


@pytest.fixture
def reward_a():
    return make_lottery([(400, 1.0)])


@pytest.fixture
def reward_b():
    return make_lottery([(1000, 0.5), (0, 0.5)])


@pytest.fixture
def example3(reward_a, reward_b):
    return BetProblem(2, [("A", reward_a), ("B", reward_b)], LogShifted())


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def record_criterion(request):
    """Record one acceptance line, then assert it."""
    log = request.config.stash[_ACCEPTANCE_KEY]

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        log.append((number, title, ok, detail))
        assert ok, f"criterion {number} ({title}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(log):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
