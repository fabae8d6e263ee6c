import functools

import numpy as np
import pytest

from hopfgauge.linalg import Field
from hopfgauge.examples import lifted_quantum_line_datum, quantum_line_datum, sweedler_datum
from hopfgauge.prebialgebra import bosonize_cocycle, extract_prebialgebra
from hopfgauge.structures import ad_invariant_integral


class Fixture:
    """A splitting datum with its extraction, bosonization and integral."""

    def __init__(self, name, datum):
        self.name = name
        self.datum = datum
        self.ext = extract_prebialgebra(datum)
        self.P = self.ext.P
        self.xi = self.ext.xi
        self.F = self.P.field
        self.H = self.P.H
        self.A, _, _ = bosonize_cocycle(self.P, self.xi, check=False)
        self.lam = ad_invariant_integral(self.H)

    def __repr__(self):
        return self.name


@functools.lru_cache(maxsize=None)
def fixture(name: str) -> Fixture:
    if name == "sweedler":
        return Fixture(name, sweedler_datum())
    if name == "lifted":
        return Fixture(name, lifted_quantum_line_datum())
    if name == "cubic":
        # quantum line g^6 = 1, x^3 = 1 - g^3 over F_7: its gauge class has two free directions
        return Fixture(name, quantum_line_datum(Field(7), 6, 3, 2, 1))
    raise KeyError(name)


@pytest.fixture(params=["sweedler", "lifted"])
def fx(request):
    return fixture(request.param)


@pytest.fixture
def sweedler():
    return fixture("sweedler")


@pytest.fixture
def lifted():
    return fixture("lifted")


@pytest.fixture
def cubic():
    return fixture("cubic")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_combination(F, basis, rng):
    """Random element of the column span of ``basis``."""
    return F.dot(basis, F.random(basis.shape[1], rng))


def normalized(F, f, C):
    """Shift ``f`` by a multiple of the counit so that ``f(1) = 1``."""
    return F.reduce(f + (F.one - F.dot(f, C.coaug)) * C.counit)


def random_invertible(F, C, rng, tries=200):
    from hopfgauge.structures import convolution_inverse

    for _ in range(tries):
        f = F.random(C.dim, rng)
        inv = convolution_inverse(f, C)
        if inv is not None:
            return f, inv
    raise AssertionError("no invertible functional found")


# acceptance verdicts, echoed in the terminal summary
VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
