import pytest

from sextic_pib.cli import run_solve
from sextic_pib.config import load_config
from sextic_pib.sextic_field import build_embeddings

_tables = {}


def table_for(spec, precision=250):
    key = (spec.m, tuple(spec.g), precision)
    if key not in _tables:
        _tables[key] = build_embeddings(spec, precision)
    return _tables[key]


@pytest.fixture(scope="session")
def cfg1():
    return load_config("example1")


@pytest.fixture(scope="session")
def cfg2():
    return load_config("example2")


@pytest.fixture(scope="session")
def cfg3():
    return load_config("example3")


@pytest.fixture(scope="session")
def spec1(cfg1):
    return cfg1.spec


@pytest.fixture(scope="session")
def table1(spec1):
    return table_for(spec1)


@pytest.fixture(scope="session")
def reports():
    """Full pipeline reports for the three bundled fields, computed once."""
    return {n: run_solve(n) for n in ("example1", "example2", "example3")}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
