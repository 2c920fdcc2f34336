from pathlib import Path

import pytest

from splitmpj.families import abelian, direct_sum_with_masa, lie_sl2, malcev_m7, solvable2

DATA = Path(__file__).resolve().parents[1] / "src" / "splitmpj" / "data"


@pytest.fixture
def sl2():
    return lie_sl2()


@pytest.fixture
def m7():
    return malcev_m7()


@pytest.fixture
def sl2x2():
    return direct_sum_with_masa(lie_sl2(), lie_sl2())


@pytest.fixture
def sl2x3():
    return direct_sum_with_masa(lie_sl2(), lie_sl2(), lie_sl2())


@pytest.fixture
def sl2_ab1():
    return direct_sum_with_masa(lie_sl2(), abelian(1))


@pytest.fixture
def solv():
    return solvable2()


@pytest.fixture
def data_dir():
    return DATA


ACCEPTANCE_LINES = {}


@pytest.fixture
def record():
    """Store the one-line outcome of an acceptance criterion."""

    def _record(number, ok, detail):
        line = "criterion %d: %s  %s" % (number, "PASS" if ok else "FAIL", detail)
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
