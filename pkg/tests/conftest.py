from pathlib import Path

import pytest

from imagecon.ingest import parse_native
from imagecon.normalize import to_anf

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def example1():
    return parse_native((DATA / "example1.tsv").read_text(encoding="utf-8"))


@pytest.fixture
def example2():
    return parse_native((DATA / "example2.tsv").read_text(encoding="utf-8"))


@pytest.fixture
def anf1(example1):
    return to_anf(example1)


@pytest.fixture
def anf2(example2):
    return to_anf(example2)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
