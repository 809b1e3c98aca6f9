import os

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True, scope="session")
def _private_cache(tmp_path_factory):
    # derived fragments go to a throwaway directory, never the user's cache
    old = os.environ.get("LOOPFORGE_CACHE")
    os.environ["LOOPFORGE_CACHE"] = str(tmp_path_factory.mktemp("fragments"))
    yield
    if old is None:
        os.environ.pop("LOOPFORGE_CACHE", None)
    else:
        os.environ["LOOPFORGE_CACHE"] = old


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
