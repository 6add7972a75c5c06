import random

import pytest

from ilocal.suite import random_geometric_complex, random_split_complex

ACCEPTANCE_SEED = 1


@pytest.fixture(scope="session")
def split_corpus():
    """200 seeded random split complexes with at most 10 cells."""
    rng = random.Random(f"{ACCEPTANCE_SEED}:corpus:split")
    return [random_split_complex(rng, max_cells=10) for _ in range(200)]


@pytest.fixture(scope="session")
def pair_corpus():
    """200 seeded pairs of valid complexes with at most 12 cells each."""
    rng = random.Random(f"{ACCEPTANCE_SEED}:corpus:pairs")
    return [
        (random_geometric_complex(rng, max_cells=12), random_geometric_complex(rng, max_cells=12))
        for _ in range(200)
    ]
