import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from k3acm.lattice import make_lattice, rank2_family  # noqa: E402


@pytest.fixture(scope="session")
def q2():
    """Quartic surface containing a line: basis (H, line)."""
    return make_lattice([[4, 1], [1, -2]], basis=("H", "G"))


@pytest.fixture(scope="session")
def fam53():
    return rank2_family(5, 3)


@pytest.fixture(scope="session")
def fam63():
    return rank2_family(6, 3)


@pytest.fixture(scope="session")
def ulrich_lat():
    return make_lattice([[4, 6], [6, 4]], basis=("H", "D"))


@pytest.fixture(scope="session")
def hyperbolic_plane():
    """Unimodular U with basis (F, G): F^2 = 0, F.G = 1, G^2 = -2."""
    return make_lattice([[0, 1], [1, -2]], basis=("F", "G"))



ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(number: int, ok: bool, text: str) -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
