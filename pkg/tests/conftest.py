from functools import lru_cache

import pytest

import dlct._kernels as kernels
from dlct import FieldSpec

# Verdict lines recorded by the acceptance tests, replayed after the run so
# they stay visible through pytest's output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@lru_cache(maxsize=None)
def field(n: int) -> FieldSpec:
    """Shared immutable field models so tests do not rebuild tables."""
    return FieldSpec(n)

_KERNEL_NAMES = ("build_exp_log", "fwht", "dlct_scan", "ddt_scan",
                 "walsh_scan", "bct_scan")


def _available_backends():
    names = ["fallback"]
    try:
        kernels.backend_module("compiled")
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names


AVAILABLE_BACKENDS = _available_backends()


@pytest.fixture(params=AVAILABLE_BACKENDS)
def backend(request, monkeypatch):
    """Route every kernel call through one specific backend for the test."""
    mod = kernels.backend_module(request.param)
    for name in _KERNEL_NAMES:
        monkeypatch.setattr(kernels, name, getattr(mod, name))
    return request.param
