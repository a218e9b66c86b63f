import json
import random
from pathlib import Path

import pytest

from posetres import FieldSpec, GradedFreeComplex, minimalize

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "posetres" / "fixtures"

RP2_GENS = [
    (1, 1, 1, 0, 0, 0), (1, 0, 1, 0, 1, 0), (1, 0, 0, 1, 1, 0),
    (0, 1, 1, 1, 0, 0), (0, 1, 0, 1, 1, 0), (1, 1, 0, 0, 0, 1),
    (1, 0, 0, 1, 0, 1), (0, 1, 0, 0, 1, 1), (0, 0, 1, 1, 0, 1),
    (0, 0, 1, 0, 1, 1)]

M_GENS = [
    (0, 1, 1, 1, 0, 0, 0), (0, 1, 0, 0, 1, 1, 0), (0, 1, 0, 1, 0, 1, 1),
    (1, 1, 1, 0, 1, 0, 1), (1, 0, 1, 1, 1, 1, 1)]

SQUAREFREE3 = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]


def load_fixture_complex(name, characteristic):
    with open(FIXTURES / name) as fh:
        obj = json.load(fh)
    return GradedFreeComplex.from_json(obj, FieldSpec(characteristic))


@pytest.fixture(scope="session")
def rp2_ideal():
    return minimalize(RP2_GENS)


@pytest.fixture(scope="session")
def m_ideal():
    return minimalize(M_GENS)


@pytest.fixture(scope="session")
def gf2():
    return FieldSpec(2)


@pytest.fixture(scope="session")
def rat():
    return FieldSpec(0)


def random_corpus(count=100, seed=20250823):
    """Deterministic corpus of small random monomial ideals."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.randint(2, 5)
        k = rng.randint(1, 6)
        gens = set()
        while len(gens) < k:
            g = tuple(rng.randint(0, 3) for _ in range(m))
            if any(g):
                gens.add(g)
        out.append(minimalize(sorted(gens)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()
