import os
from pathlib import Path

import pytest

_ACCEPTANCE: dict[str, str] = {}

DATA_DIR = Path(os.environ.get("GRIDGROWTH_DATA", Path(__file__).resolve().parents[1] / "data"))


@pytest.fixture
def verdict():
    """Record one acceptance line: ``verdict(key, passed, detail)``; ``passed=None`` is a skip."""
    def record(key, passed, detail):
        status = "SKIP" if passed is None else ("PASS" if passed else "FAIL")
        line = f"{key}: {status}  {detail}"
        _ACCEPTANCE[key] = line
        print(line)
        return passed
    return record


@pytest.fixture
def data_dir():
    return DATA_DIR


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split()[1].rstrip(":"))):
        terminalreporter.write_line(_ACCEPTANCE[key])
