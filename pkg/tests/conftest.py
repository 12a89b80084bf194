import math
from pathlib import Path

import pytest

from thzlink.atmosphere import AttenuationTable, demo_table
from thzlink.channel import Scenario
from thzlink.geometry import Material, Reflector

DATA = Path(__file__).parent / "data"
C = 299792458.0


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def demo():
    return demo_table()


@pytest.fixture
def lossless():
    return AttenuationTable.constant(0.0)


@pytest.fixture
def wall_scenario(lossless):
    # tx (0,0), rx (2,0), wall along y=1
    wall = Reflector((-5, 1), (5, 1), Material(2.0, 50e-6, "wall"))
    return Scenario((0, 0), (2, 0), (wall,), attenuation=lossless)


def hand_h_spread(f, r):
    return C / (4 * math.pi * f * r)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number, title, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] AC{number} {title}: {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
