from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from quivhom.algebra import dual_numbers, field_algebra, path_algebra_a2, truncated_polynomial
from quivhom.modules import module_from_matrices, regular_module

settings.register_profile(
    "quivhom",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("quivhom")


@pytest.fixture
def dual():
    return dual_numbers()


@pytest.fixture
def a2path():
    return path_algebra_a2()


@pytest.fixture
def f2():
    return field_algebra(2)


@pytest.fixture
def x3():
    return truncated_polynomial(3)


@pytest.fixture
def S(dual):
    return module_from_matrices(dual, [[[1]], [[0]]], "S")


@pytest.fixture
def A(dual):
    return regular_module(dual)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance criterion lines, if that module ran."""
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
