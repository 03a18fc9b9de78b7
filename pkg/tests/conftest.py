import sys

import pytest
from hypothesis import HealthCheck, settings

from brst.manifest import load_manifest
from brst.models import translation_model, so3_model
from brst.algebra import BrstContext

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def t1_ctx():
    return BrstContext(translation_model(1), 3, 6, [0])


@pytest.fixture(scope="session")
def t2_ctx():
    return BrstContext(translation_model(2), 3, 6, [0])


@pytest.fixture(scope="session")
def so3_ctx():
    return BrstContext(so3_model(), 3, 6)


@pytest.fixture(scope="session")
def manifests():
    return {name: load_manifest(name) for name in
            ("abelian-t1", "abelian-t2", "abelian-corrected", "so3-t3", "nonunimodular-2d")}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "VERDICTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
