from __future__ import annotations

import sys

import pytest

from altlie.kernel import _backend


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run a test once per importable sparse-kernel backend."""
    previous = _backend.NAME
    _backend.use(request.param)
    yield request.param
    _backend.use(previous)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines so they appear even when output is captured."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
