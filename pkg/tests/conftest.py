from __future__ import annotations

import pytest

from glitlab.exactlin import FieldSpec
from glitlab.fixtures import example_context, example_modules, example_T
from glitlab.krull import default_registry


@pytest.fixture(scope="session")
def T():
    return example_T()


@pytest.fixture(scope="session")
def mods(T):
    return example_modules(T)


@pytest.fixture(scope="session")
def regT(T):
    return default_registry(T)


@pytest.fixture(scope="session")
def ctx(T):
    return example_context(T)


@pytest.fixture
def f5():
    return FieldSpec(5)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
