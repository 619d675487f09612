import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_COUNT = 11
_results: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def record():
    """record(n, title, ok, detail) stores one acceptance line for the summary."""
    def _record(n: int, title: str, ok: bool, detail: str = "") -> None:
        _results[n] = (title, bool(ok), detail)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, ACCEPTANCE_COUNT + 1):
        if n in _results:
            title, ok, detail = _results[n]
            line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}"
            terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
        else:
            terminalreporter.write_line(f"criterion {n:2d} FAIL  no result recorded")
