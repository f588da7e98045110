from __future__ import annotations

import os
import sys
from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

from hurwitz_ring.group_core import load_group, symmetric_group_spec
from hurwitz_ring.monoid import MonoidTable, hilbert_table

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))


def fixture_group(name: str):
    return load_group(files("hurwitz_ring") / "data" / f"{name}.json")


@pytest.fixture(scope="session")
def s3():
    return symmetric_group_spec(3)


@pytest.fixture(scope="session")
def s4():
    return symmetric_group_spec(4)


@pytest.fixture(scope="session")
def d4():
    return fixture_group("d4")


@pytest.fixture(scope="session")
def q8():
    return fixture_group("q8")


@pytest.fixture(scope="session")
def s3_table(s3):
    return MonoidTable(s3, 16)


@pytest.fixture(scope="session")
def s4_table(s4):
    return MonoidTable(s4, 20)


@pytest.fixture(scope="session")
def s4_hilbert(s4_table):
    return hilbert_table(s4_table)


@pytest.fixture(scope="session")
def s5_table():
    return MonoidTable(symmetric_group_spec(5), 8)


ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
