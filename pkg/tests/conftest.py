import functools
import json
import pathlib
import sys

import pytest
from hypothesis import HealthCheck, settings

HERE = pathlib.Path(__file__).parent
sys.path.insert(0, str(HERE))

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("default")

from superelliptic.cover import build_cover  # noqa: E402
from superelliptic.family import FamilyParameters  # noqa: E402
from superelliptic.homology import build_homology  # noqa: E402


@functools.lru_cache(maxsize=None)
def model_for(n, k):
    return build_homology(build_cover(FamilyParameters(n, k)))


@functools.lru_cache(maxsize=None)
def cover_for(n, k):
    return build_cover(FamilyParameters(n, k))


@pytest.fixture(scope="session")
def oracle():
    return json.loads((HERE / "fixtures" / "oracles.json").read_text())


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
