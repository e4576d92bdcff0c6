import itertools
import os
import sys
from fractions import Fraction

import pytest

from arrsheaf import catalog
from arrsheaf.arrangement import Arrangement
from arrsheaf.localsys import LocalSystem

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def data_path(name: str) -> str:
    return os.path.abspath(os.path.join(DATA, name))


def F(x) -> Fraction:
    return Fraction(x)


def LS(raw) -> LocalSystem:
    return LocalSystem.parse(raw)


def eq(r: int, s) -> LocalSystem:
    return LocalSystem.equal(r, Fraction(s))


def all_systems(r: int, denominators=(1, 2, 3, 4)):
    """Every exponent tuple whose entries have denominator in ``denominators``."""
    values = sorted({Fraction(k, d) for d in denominators for k in range(d)})
    for combo in itertools.product(values, repeat=r):
        yield LocalSystem(combo)


def random_systems(rng, r: int, count: int, denominators=(1, 2, 3, 4, 6)):
    out = []
    for _ in range(count):
        out.append(LocalSystem(tuple(
            Fraction(rng.randrange(d), d) for d in (rng.choice(denominators) for _ in range(r))
        )))
    return out


def lines(*rows) -> Arrangement:
    return Arrangement.from_rows(2, rows)


@pytest.fixture
def boolean():
    return catalog.boolean()


@pytest.fixture
def braid():
    return catalog.braid()


@pytest.fixture
def cone5():
    return catalog.cone5()


@pytest.fixture
def cone4():
    return catalog.cone4()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES):
        terminalreporter.write_line(line)
