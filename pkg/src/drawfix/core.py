"""Players, pairwise comparisons, and balanced knockout draws.

A draw over n = 2^c players is a full binary bracket tree, kept in a
canonical leaf order: at every internal node, the half that contains the
smallest player id comes first.  Canonical leaf sequences are in
one-to-one correspondence with unordered draws, of which there are
exactly n!/2^(n-1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "PlayerTable",
    "DeterministicTournament",
    "ProbabilisticTournament",
    "Draw",
    "ResourceLimitError",
    "MAX_EXACT_PLAYERS",
    "as_rng",
    "num_draws",
    "canonicalize",
    "random_draw",
    "simulate",
    "draw_win_probabilities",
]

RngLike = "int | np.random.Generator"


class ResourceLimitError(RuntimeError):
    """An exact method was asked to exceed its documented size bound."""


# The exact subset-table methods (counting, search pruning, draw-uniform
# win probabilities) materialise values for every power-of-two-sized
# player subset.  16 players fits comfortably in memory; 32 would not.
MAX_EXACT_PLAYERS = 16


def as_rng(rng) -> np.random.Generator:
    """Accept either a Generator or an integer seed."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _require_bracket_size(n: int) -> None:
    if not _is_power_of_two(n):
        raise ValueError(f"bracket size must be a power of two, got {n}")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PlayerTable:
    """Roster of n players identified by ids 0..n-1.

    ``ranks`` is a permutation of 1..n, rank 1 being the strongest.
    Builders in this package assign ids in rank order (id 0 has rank 1),
    but any permutation is accepted.
    """

    names: tuple[str, ...]
    ranks: tuple[int, ...]

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise ValueError("player table must not be empty")
        if len(self.ranks) != n:
            raise ValueError("names and ranks must have equal length")
        if len(set(self.names)) != n:
            raise ValueError("player names must be unique")
        if sorted(self.ranks) != list(range(1, n + 1)):
            raise ValueError(f"ranks must be a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.names)

    @classmethod
    def from_ordered(cls, names: Sequence[str]) -> "PlayerTable":
        """Build a table from names listed best first (id order = rank order)."""
        names = tuple(names)
        return cls(names=names, ranks=tuple(range(1, len(names) + 1)))

    @classmethod
    def default(cls, n: int) -> "PlayerTable":
        return cls.from_ordered(tuple(f"p{i}" for i in range(n)))

    def id_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown player name: {name!r}") from None

    def by_rank(self) -> tuple[int, ...]:
        """Player ids sorted from rank 1 to rank n."""
        return tuple(sorted(range(self.n), key=lambda i: self.ranks[i]))


@dataclass(frozen=True, eq=False)
class DeterministicTournament:
    """Complete pairwise win relation: beats[i, j] is True iff i beats j."""

    players: PlayerTable
    beats: np.ndarray

    def __post_init__(self):
        n = self.players.n
        beats = np.array(self.beats, dtype=bool)
        if beats.shape != (n, n):
            raise ValueError(f"beats must be {n}x{n}")
        if beats.diagonal().any():
            raise ValueError("a player cannot beat itself")
        off = ~np.eye(n, dtype=bool)
        if not (beats ^ beats.T)[off].all():
            raise ValueError("every pair needs exactly one winner")
        object.__setattr__(self, "beats", _readonly(beats))

    @property
    def n(self) -> int:
        return self.players.n

    def to_probabilistic(self) -> "ProbabilisticTournament":
        """Degenerate 0/1 probability matrix for the same relation."""
        p = self.beats.astype(float)
        np.fill_diagonal(p, 0.5)
        return ProbabilisticTournament(players=self.players, probs=p)


@dataclass(frozen=True, eq=False)
class ProbabilisticTournament:
    """Pairwise win probabilities: probs[i, j] is the chance i beats j.

    Rows and columns are consistent (probs + probs.T == 1 off the
    diagonal, within 1e-12).  Diagonal entries are unused and stored as
    0.5 by convention.
    """

    players: PlayerTable
    probs: np.ndarray

    def __post_init__(self):
        n = self.players.n
        p = np.array(self.probs, dtype=float)
        if p.shape != (n, n):
            raise ValueError(f"probs must be {n}x{n}")
        if np.isnan(p).any() or (p < 0).any() or (p > 1).any():
            raise ValueError("probabilities must lie in [0, 1]")
        off = ~np.eye(n, dtype=bool)
        if np.abs((p + p.T) - 1.0)[off].max(initial=0.0) > 1e-12:
            raise ValueError("probs[i, j] + probs[j, i] must equal 1")
        np.fill_diagonal(p, 0.5)
        object.__setattr__(self, "probs", _readonly(p))

    @property
    def n(self) -> int:
        return self.players.n

    def to_deterministic(self) -> DeterministicTournament:
        """Threshold at 1/2: i beats j iff probs[i, j] > 0.5.

        Exact 0.5 entries are broken in favour of the higher-ranked
        (smaller rank number) player, so a deterministic reading always
        exists.
        """
        p = self.probs
        ranks = np.array(self.players.ranks)
        higher = ranks[:, None] < ranks[None, :]
        beats = (p > 0.5) | ((p == 0.5) & higher)
        np.fill_diagonal(beats, False)
        return DeterministicTournament(players=self.players, beats=beats)


def num_draws(n: int) -> int:
    """Number of distinct unordered draws over n = 2^c players, exactly."""
    _require_bracket_size(n)
    return math.factorial(n) // 2 ** (n - 1)


def _canon(seg: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    if len(seg) == 1:
        return seg, seg[0]
    h = len(seg) // 2
    left, lmin = _canon(seg[:h])
    right, rmin = _canon(seg[h:])
    if lmin < rmin:
        return left + right, lmin
    return right + left, rmin


def canonicalize(leaves: Iterable[int]) -> "Draw":
    """Canonical draw for any leaf ordering of the same bracket tree."""
    seq = tuple(leaves)
    _require_bracket_size(len(seq))
    if sorted(seq) != list(range(len(seq))):
        raise ValueError("leaves must be a permutation of 0..n-1")
    return Draw(_canon(seq)[0])


@dataclass(frozen=True)
class Draw:
    """A canonical draw: leaf order of the bracket tree.

    Adjacent pairs meet in round one, adjacent pairs of pairs in round
    two, and so on.  The constructor enforces the canonical form; use
    :func:`canonicalize` to normalise an arbitrary leaf order.
    """

    leaves: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(self.leaves)
        object.__setattr__(self, "leaves", seq)
        _require_bracket_size(len(seq))
        if sorted(seq) != list(range(len(seq))):
            raise ValueError("leaves must be a permutation of 0..n-1")
        if _canon(seq)[0] != seq:
            raise ValueError(
                "leaf order is not canonical; build with canonicalize()"
            )

    @property
    def n(self) -> int:
        return len(self.leaves)

    def bracket_text(self, names: Sequence[str] | None = None) -> str:
        """Nested-parentheses rendering, e.g. ``((p0,p3),(p1,p2))``."""
        def render(seg):
            if len(seg) == 1:
                i = seg[0]
                return str(i) if names is None else names[i]
            h = len(seg) // 2
            return f"({render(seg[:h])},{render(seg[h:])})"

        return render(self.leaves)


def random_draw(n: int, rng: RngLike) -> Draw:
    """Uniform draw over all num_draws(n) possibilities.

    A uniform leaf permutation followed by canonicalisation is uniform
    over draws, because every draw has the same number (2^(n-1)) of
    permutation preimages.
    """
    _require_bracket_size(n)
    gen = as_rng(rng)
    return canonicalize(int(x) for x in gen.permutation(n))


def simulate(draw: Draw, t: DeterministicTournament) -> int:
    """Play out the bracket and return the champion's id."""
    if draw.n != t.n:
        raise ValueError(f"draw has {draw.n} leaves but tournament has {t.n} players")
    beats = t.beats
    alive = list(draw.leaves)
    while len(alive) > 1:
        alive = [i if beats[i, j] else j for i, j in zip(alive[0::2], alive[1::2])]
    return alive[0]


def draw_win_probabilities(draw: Draw, t: ProbabilisticTournament) -> np.ndarray:
    """Probability that each player wins this specific draw.

    Round by round: a player's survival probability is its previous
    survival times the chance of beating whichever opponent emerges from
    the sibling block.  The returned vector is indexed by player id and
    sums to 1 (within accumulation error).
    """
    if draw.n != t.n:
        raise ValueError(f"draw has {draw.n} leaves but tournament has {t.n} players")
    n = t.n
    probs = t.probs
    order = np.array(draw.leaves, dtype=np.intp)
    surv = np.ones(n)
    block = 1
    while block < n:
        ids = order.reshape(-1, 2, block)
        s = surv.reshape(-1, 2, block)
        left, right = ids[:, 0, :], ids[:, 1, :]
        p_lr = probs[left[:, :, None], right[:, None, :]]
        p_rl = probs[right[:, :, None], left[:, None, :]]
        new_left = s[:, 0, :] * (p_lr * s[:, 1, :][:, None, :]).sum(axis=2)
        new_right = s[:, 1, :] * (p_rl * s[:, 0, :][:, None, :]).sum(axis=2)
        nxt = np.empty_like(s)
        nxt[:, 0, :] = new_left
        nxt[:, 1, :] = new_right
        surv = nxt.reshape(-1)
        block *= 2
    out = np.empty(n)
    out[order] = surv
    return out
