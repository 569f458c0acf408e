import pytest

_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}


@pytest.fixture
def criterion(request):
    """Record sub-checks for one acceptance criterion and print its verdict."""
    results = request.config.stash[_ACCEPTANCE]

    def record(number, title, checks):
        ok = all(passed for passed, _ in checks.values())
        details = "; ".join(f"{name}: {'ok' if passed else 'FAIL'} ({info})"
                            for name, (passed, info) in checks.items())
        line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title} -- {details}"
        results[number] = line
        print(line)
        failed = [name for name, (passed, _) in checks.items() if not passed]
        assert not failed, f"criterion {number} failed: {', '.join(failed)}"

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
