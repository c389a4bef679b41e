import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from affinecodes import make_code, make_field  # noqa: E402


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2, [1, 1, 1])


@pytest.fixture(scope="session")
def gf8():
    return make_field(2, 3, [1, 1, 0, 1])


@pytest.fixture(scope="session")
def gf16():
    return make_field(2, 4, [1, 1, 0, 0, 1])


@pytest.fixture(scope="session")
def hamming8():
    return make_code(2, 3, 1, [0, 1, 2, 4])


@pytest.fixture(scope="session")
def length4_codes():
    return [make_code(2, 2, 2, D) for D in ([0, 1], [0, 2])]


@pytest.fixture(scope="session")
def length9_codes():
    """Nontrivial ternary codes of length 9 over GF(3) and GF(9)."""
    return [make_code(3, 2, 1, [0, 1, 3]), make_code(3, 2, 2, [0, 1, 3, 4])]


@pytest.fixture(scope="session")
def rm16():
    return make_code(2, 4, 1, [0, 1, 2, 4, 8])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
