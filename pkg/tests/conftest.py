import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from drawfix import DeterministicTournament, PlayerTable, ProbabilisticTournament


@pytest.fixture
def cycle4() -> DeterministicTournament:
    """0 beats 1, 1 beats 2, 2 beats 0; everyone beats 3."""
    beats = np.zeros((4, 4), dtype=bool)
    beats[0, 1] = beats[1, 2] = beats[2, 0] = True
    beats[0, 3] = beats[1, 3] = beats[2, 3] = True
    return DeterministicTournament(players=PlayerTable.default(4), beats=beats)


def random_deterministic(n: int, rng) -> DeterministicTournament:
    upper = rng.random((n, n)) < 0.5
    beats = np.zeros((n, n), dtype=bool)
    iu = np.triu_indices(n, k=1)
    beats[iu] = upper[iu]
    beats.T[iu] = ~upper[iu]
    return DeterministicTournament(players=PlayerTable.default(n), beats=beats)


def random_probabilistic(n: int, rng) -> ProbabilisticTournament:
    p = rng.random((n, n))
    probs = np.full((n, n), 0.5)
    iu = np.triu_indices(n, k=1)
    probs[iu] = p[iu]
    probs.T[iu] = 1.0 - p[iu]
    return ProbabilisticTournament(players=PlayerTable.default(n), probs=probs)
