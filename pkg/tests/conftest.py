import numpy as np
import pytest

from cavlink.constants import mhz
from cavlink.cqed import CavityRates


@pytest.fixture
def bench_rates():
    """g = κ = κ_L = 2π·50 MHz, γ = 2π·10 MHz."""
    return CavityRates(mhz(50), mhz(50), 0.0, 0.0, mhz(10))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record (and print) one PASS/FAIL line per acceptance criterion."""
    def record(number: int, name: str, ok: bool, detail: str) -> bool:
        line = f"CRITERION {number} [{'PASS' if ok else 'FAIL'}] {name}: {detail}"
        print(line)
        _ACCEPTANCE_LINES.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
