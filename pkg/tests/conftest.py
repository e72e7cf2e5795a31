from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from gcwhq.crossed import build_barHG, build_HG, build_tildeHG
from gcwhq.instances import standard_pairs

settings.register_profile("repo", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@lru_cache(maxsize=None)
def built(name: str, kind: str):
    pairs = {n: (B, G, a) for n, B, G, a in standard_pairs()}
    B, G, a = pairs[name]
    return {"hg": build_HG, "tilde": build_tildeHG, "bar": build_barHG}[kind](B, G, a)


@pytest.fixture(scope="session")
def z3():
    """H^G over k[Z/3] with Z/2 acting by inversion."""
    return built("z3-inversion", "hg")


@pytest.fixture(scope="session")
def groupoid():
    """H^G over the two-object groupoid algebra with Z/2 swapping the objects."""
    return built("groupoid-swap", "hg")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
