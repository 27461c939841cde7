import pytest

from pdcross.instances import gen_examples

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def corpus():
    return gen_examples()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}")
