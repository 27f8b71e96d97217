import pytest
from hypothesis import HealthCheck, settings

from instructplan.domain import builtin_domain
from instructplan.pipeline import run_pipeline

settings.register_profile(
    "repo",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

ACCEPTANCE: dict = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    """Store one acceptance result; printed in the terminal summary."""
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("abc")), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session", params=["toaster", "breadmaker", "combined"])
def domain_name(request):
    return request.param


@pytest.fixture(scope="session")
def toaster():
    return builtin_domain("toaster")


@pytest.fixture(scope="session")
def breadmaker():
    return builtin_domain("breadmaker")


@pytest.fixture(scope="session")
def combined():
    return builtin_domain("combined")


_runs: dict = {}


def pipeline(name: str):
    if name not in _runs:
        _runs[name] = run_pipeline(builtin_domain(name), until="text")
    return _runs[name]


@pytest.fixture(scope="session")
def run_of():
    return pipeline
