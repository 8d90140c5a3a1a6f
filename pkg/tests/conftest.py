import pytest
from hypothesis import settings

from beauville_wreath.wreath import GroupParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def p33():
    return GroupParams.from_qr(3, 3)


@pytest.fixture
def p55():
    return GroupParams.from_qr(5, 5)


@pytest.fixture
def p39():
    return GroupParams.from_qr(3, 9)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
