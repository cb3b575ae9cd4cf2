"""Win probabilities when the draw itself is uniformly random.

The exact route runs the same halving recurrence as the draw counter,
with match probabilities in place of 0/1 outcomes, and divides by the
number of draws.  The sampling route averages over randomly drawn
brackets, either scoring each sampled bracket exactly (low variance) or
simulating single match outcomes (the crude estimator, kept as a
cross-check).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _subsetdp
from .core import (
    MAX_EXACT_PLAYERS,
    ProbabilisticTournament,
    ResourceLimitError,
    as_rng,
    num_draws,
)

__all__ = ["WinProbVector", "exact_uniform_win_probs", "sample_uniform_win_probs"]

# Fixed batch size: the per-batch generator streams (and therefore the
# bit-exact result for a given seed and worker count) depend on it.
_BATCH = 4096

_MODES = ("per-draw-exact", "full-simulation")


@dataclass(frozen=True)
class WinProbVector:
    """Per-player championship probabilities under a uniform draw."""

    entries: tuple[float, ...]
    method: str
    samples: int | None = None

    def __post_init__(self):
        if self.method not in ("exact", "sampled"):
            raise ValueError(f"unknown method tag: {self.method}")
        if (self.method == "sampled") != (self.samples is not None):
            raise ValueError("sample count goes with the sampled method only")
        if any(e < 0 or e > 1 for e in self.entries):
            raise ValueError("entries must be probabilities")
        tol = 1e-9 if self.method == "exact" else 1e-6
        if abs(sum(self.entries) - 1.0) > tol:
            raise ValueError("entries must sum to 1")

    @property
    def n(self) -> int:
        return len(self.entries)


def exact_uniform_win_probs(t: ProbabilisticTournament) -> WinProbVector:
    """Exact probability of winning a uniformly drawn bracket, per player."""
    n = t.n
    if n & (n - 1):
        raise ValueError(f"bracket size must be a power of two, got {n} players")
    if n > MAX_EXACT_PLAYERS:
        raise ResourceLimitError(
            f"exact win probabilities are limited to {MAX_EXACT_PLAYERS} players, got {n}"
        )
    values = _subsetdp.sweep(n, t.probs)
    entries = tuple(float(v) for v in values / num_draws(n))
    return WinProbVector(entries=entries, method="exact")


def _batch_permutations(n: int, b: int, gen: np.random.Generator) -> np.ndarray:
    base = np.tile(np.arange(n), (b, 1))
    return gen.permuted(base, axis=1)


def _per_draw_exact_batch(probs, n, b, gen) -> np.ndarray:
    # Survival probabilities for all sampled brackets at once, round by
    # round over sibling blocks.  Canonicalising the sampled leaf orders
    # would not change any bracket's win vector, so it is skipped.
    perms = _batch_permutations(n, b, gen)
    surv = np.ones((b, n))
    block = 1
    while block < n:
        ids = perms.reshape(b, -1, 2, block)
        s = surv.reshape(b, -1, 2, block)
        left, right = ids[:, :, 0, :], ids[:, :, 1, :]
        p_lr = probs[left[..., :, None], right[..., None, :]]
        p_rl = probs[right[..., :, None], left[..., None, :]]
        new_left = s[:, :, 0, :] * (p_lr * s[:, :, 1, :][..., None, :]).sum(axis=-1)
        new_right = s[:, :, 1, :] * (p_rl * s[:, :, 0, :][..., None, :]).sum(axis=-1)
        nxt = np.empty_like(s)
        nxt[:, :, 0, :] = new_left
        nxt[:, :, 1, :] = new_right
        surv = nxt.reshape(b, n)
        block *= 2
    acc = np.zeros(n)
    np.add.at(acc, perms, surv)
    return acc


def _full_simulation_batch(probs, n, b, gen) -> np.ndarray:
    perms = _batch_permutations(n, b, gen)
    alive = perms
    while alive.shape[1] > 1:
        a, c = alive[:, 0::2], alive[:, 1::2]
        u = gen.random(a.shape)
        alive = np.where(u < probs[a, c], a, c)
    return np.bincount(alive[:, 0], minlength=n).astype(float)


def sample_uniform_win_probs(
    t: ProbabilisticTournament,
    samples: int = 200_000,
    rng=0,
    mode: str = "per-draw-exact",
    workers: int = 1,
) -> WinProbVector:
    """Monte Carlo estimate over uniformly sampled draws.

    ``per-draw-exact`` averages each sampled bracket's exact win vector;
    ``full-simulation`` plays every match as a Bernoulli trial.  Both
    are unbiased; the first has lower variance.  A fixed seed and worker
    count reproduce the estimate bit for bit (worker streams are spawned
    deterministically and reduced in a fixed order); changing the worker
    count changes how the sample budget is split and may move the last
    few ulps.
    """
    n = t.n
    if n & (n - 1):
        raise ValueError(f"bracket size must be a power of two, got {n} players")
    if samples < 1:
        raise ValueError("samples must be positive")
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    if workers < 1:
        raise ValueError("workers must be positive")
    batch = _per_draw_exact_batch if mode == "per-draw-exact" else _full_simulation_batch

    probs = t.probs
    master = as_rng(rng)
    worker_gens = master.spawn(workers)
    share, extra = divmod(samples, workers)
    quotas = [share + (1 if w < extra else 0) for w in range(workers)]

    def run_worker(w: int) -> list[np.ndarray]:
        quota = quotas[w]
        if quota == 0:
            return []
        n_batches = -(-quota // _BATCH)
        gens = worker_gens[w].spawn(n_batches)
        out = []
        done = 0
        for g in gens:
            b = min(_BATCH, quota - done)
            out.append(batch(probs, n, b, g))
            done += b
        return out

    if workers == 1:
        parts = [run_worker(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(run_worker, range(workers)))

    batch_sums = [acc for part in parts for acc in part]
    entries = tuple(
        math.fsum(acc[i] for acc in batch_sums) / samples for i in range(n)
    )
    return WinProbVector(entries=entries, method="sampled", samples=samples)
