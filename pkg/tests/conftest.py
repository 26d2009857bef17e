import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"
FAMILIES = Path(__file__).parent.parent / "families"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def families_dir() -> Path:
    return FAMILIES


@pytest.fixture
def load_json():
    def load(path):
        return json.loads(Path(path).read_text())

    return load


@pytest.fixture
def acceptance_line():
    def record(number: int, ok: bool, text: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
