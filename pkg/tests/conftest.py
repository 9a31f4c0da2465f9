from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# -- acceptance criteria: one pass/fail line each in the terminal summary ----

_ACCEPTANCE = pytest.StashKey[dict]()


class Criterion:
    """Context manager recording the outcome of one acceptance criterion."""

    def __init__(self, store: dict, number: int, title: str) -> None:
        self.store, self.number, self.title = store, number, title
        self.detail = ""

    def note(self, detail: str) -> None:
        self.detail = detail

    def __enter__(self) -> "Criterion":
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        ok = exc_type is None
        detail = self.detail if ok else f"{exc_type.__name__}: {exc}".splitlines()[0]
        line = f"criterion {self.number}: {'PASS' if ok else 'FAIL'} - {self.title}"
        if detail:
            line += f" ({detail})"
        self.store[self.number] = line
        print(line)
        return False


@pytest.fixture
def criterion(request):
    store = request.config.stash.setdefault(_ACCEPTANCE, {})
    return lambda number, title: Criterion(store, number, title)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_ACCEPTANCE, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        terminalreporter.write_line(store[number])
