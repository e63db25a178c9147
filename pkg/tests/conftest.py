import pytest
from hypothesis import HealthCheck, settings

from hkcalc import QuotientRing

settings.register_profile(
    "hkcalc", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("hkcalc")


@pytest.fixture(scope="session")
def a1():
    """F_3[x,y,z]/(xy - z^2), shared so resolutions and lengths are memoized."""
    return QuotientRing(3, "x y z", ["x*y - z^2"])


@pytest.fixture(scope="session")
def reg2():
    return QuotientRing(2, "x y")


@pytest.fixture(scope="session")
def reg3():
    return QuotientRing(2, "x y z")


ACCEPTANCE_LINES: dict[str, str] = {}


def record_acceptance(label: str, ok: bool, detail: str) -> None:
    line = f"{label} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES[label] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for label in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[label])
