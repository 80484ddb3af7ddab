import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fixed",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("fixed")

ACCEPTANCE = {}


def record(number: int, ok: bool, seconds: float, detail: str = "") -> None:
    ACCEPTANCE[number] = (ok, seconds, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, detail = ACCEPTANCE[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:.2f} s)"
        terminalreporter.write_line(line + (f"  {detail}" if detail else ""))


@pytest.fixture
def acceptance():
    return record
