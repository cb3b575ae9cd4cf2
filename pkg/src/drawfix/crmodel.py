"""Rank-respecting random model of pairwise upsets.

Every match between a higher-ranked and a lower-ranked player is an
independent coin flip in which the favourite wins with probability
1 - upset_prob.  The model is a deterministic probability matrix;
sample_deterministic draws concrete outcome relations from it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DeterministicTournament,
    PlayerTable,
    ProbabilisticTournament,
    as_rng,
)

__all__ = [
    "CrParams",
    "generate_cr",
    "sample_deterministic",
    "average_upset_probability",
]


@dataclass(frozen=True)
class CrParams:
    """Model parameters: bracket size and the per-match upset probability.

    upset_prob = 0.5 is allowed and makes every match a fair coin, which
    is the uniform random tournament.
    """

    n: int
    upset_prob: float

    def __post_init__(self):
        if self.n < 1 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two, got {self.n}")
        if not 0.0 < self.upset_prob <= 0.5:
            raise ValueError(
                f"upset_prob must lie in (0.0, 0.5], got {self.upset_prob}"
            )


def generate_cr(params: CrParams) -> ProbabilisticTournament:
    """Probability matrix for the model, players listed in rank order."""
    n = params.n
    u = params.upset_prob
    p = np.full((n, n), 0.5)
    iu, ju = np.triu_indices(n, 1)
    p[iu, ju] = 1.0 - u  # id order is rank order, so i < j means i is ranked higher
    p[ju, iu] = u
    return ProbabilisticTournament(players=PlayerTable.default(n), probs=p)


def sample_deterministic(t: ProbabilisticTournament, rng) -> DeterministicTournament:
    """Flip every pair independently according to its probability.

    Pairs are drawn in fixed row-major upper-triangle order, so a seeded
    generator reproduces the same relation exactly.
    """
    gen = as_rng(rng)
    n = t.n
    iu, ju = np.triu_indices(n, 1)
    wins = gen.random(iu.size) < t.probs[iu, ju]
    beats = np.zeros((n, n), dtype=bool)
    beats[iu, ju] = wins
    beats[ju, iu] = ~wins
    return DeterministicTournament(players=t.players, beats=beats)


def average_upset_probability(t: ProbabilisticTournament) -> float:
    """Mean chance, over unordered pairs, that the lower-ranked side wins."""
    n = t.n
    if n < 2:
        raise ValueError("need at least two players")
    ranks = np.array(t.players.ranks)
    iu, ju = np.triu_indices(n, 1)
    i_is_favourite = ranks[iu] < ranks[ju]
    upsets = np.where(i_is_favourite, t.probs[ju, iu], t.probs[iu, ju])
    return float(upsets.mean())
