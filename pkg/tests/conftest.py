import random

import pytest

from alg2 import sampling
from alg2.families import FAMILIES


@pytest.fixture
def rng():
    return random.Random(20240611)


def labels_of_every_family(rng, per_family):
    return [sampling.label(f, rng) for f in FAMILIES for _ in range(per_family)]


# dimension of the derivation algebra for every family at generic parameters
DERIVATION_DIMENSION = {
    "A4": 0, "B1": 0, "C": 0, "D1": 0, "D3": 0, "E1": 0, "E2": 0, "E3": 0, "E4": 0,
    "A1": 1, "A2": 1, "B2": 1, "D2": 1,
    "A3": 2, "B3": 2, "E5": 2,
    "TRIVIAL": 4,
}

# algebras whose one-generated subalgebras are all 1-dimensional
LINE_GENERATED = {"TRIVIAL", "B3", "E4", "E5"}


# one summary line per acceptance criterion, printed after the run
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(f"criterion {n:>2}: {CRITERIA[n]}")
