import os

import pytest
from hypothesis import HealthCheck, settings

from walkgen.benchmarks import load_benchmark
from walkgen.parser import parse_program

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("fast", max_examples=30, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SAMPLE = """
var A: int32
var B: int32
var C: int32
if (A > 0 && B > 0 && C > 0) {
    target positive;
} else {
    target not_positive;
}
"""


@pytest.fixture(scope="session")
def tri_int():
    return load_benchmark("tri-int")


@pytest.fixture(scope="session")
def sample():
    return parse_program(SAMPLE, name="sample")


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
