"""Bitmask machinery for exact recurrences over sub-brackets.

A sub-bracket over a player subset S splits into two halves; to count
each unordered split once, the half containing min(S) is always listed
first.  The plan below enumerates, level by level (|S| = 2, 4, ..., n),
every subset together with its halvings, as row indices into the
previous level's table.  Sweeps over the plan then reduce to a few large
matrix products per level.

All sweep arithmetic runs in float64.  For n <= 16 the counting values
stay below 2^53 (the full-draw total at n = 16 is 638,512,875 and every
partial product is smaller still), so float64 arithmetic is exact there.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

__all__ = ["plan", "sweep", "halvings", "bit_indices", "combine_count"]


@dataclass(frozen=True)
class Level:
    size: int
    masks: tuple[int, ...]
    index: dict
    k: int
    a_rows: np.ndarray
    b_rows: np.ndarray


@dataclass(frozen=True)
class Plan:
    n: int
    levels: tuple[Level, ...]


def halvings(mask: int):
    """Yield (A, B) bitmask halvings of mask with min(mask) forced into A."""
    members = bit_indices(mask)
    first = members[0]
    for sub in itertools.combinations(members[1:], len(members) // 2 - 1):
        a = (1 << first) + sum(1 << c for c in sub)
        yield a, mask ^ a


def bit_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@lru_cache(maxsize=None)
def plan(n: int) -> Plan:
    if n < 1 or n & (n - 1):
        raise ValueError(f"plan needs a power-of-two size, got {n}")
    levels = []
    prev_index = {1 << i: i for i in range(n)}
    size = 2
    while size <= n:
        masks = []
        index = {}
        a_rows = []
        b_rows = []
        half = size // 2
        for combo in itertools.combinations(range(n), size):
            mask = sum(1 << c for c in combo)
            index[mask] = len(masks)
            masks.append(mask)
            first = combo[0]
            for sub in itertools.combinations(combo[1:], half - 1):
                amask = (1 << first) + sum(1 << c for c in sub)
                a_rows.append(prev_index[amask])
                b_rows.append(prev_index[mask ^ amask])
        levels.append(
            Level(
                size=size,
                masks=tuple(masks),
                index=index,
                k=comb(size - 1, half - 1),
                a_rows=np.array(a_rows, dtype=np.intp),
                b_rows=np.array(b_rows, dtype=np.intp),
            )
        )
        prev_index = index
        size *= 2
    return Plan(n=n, levels=tuple(levels))


def sweep(n: int, matrix: np.ndarray) -> np.ndarray:
    """Run the halving recurrence up to the full player set.

    ``matrix[i, j]`` weights the event "i meets and beats j" in a final:
    1/0 entries count draws, probabilities accumulate expected draws.
    Returns the length-n value vector for the full set.
    """
    p = plan(n)
    mt = np.ascontiguousarray(np.asarray(matrix, dtype=float).T)
    table = np.eye(n)
    for level in p.levels:
        ca = table[level.a_rows]
        cb = table[level.b_rows]
        contrib = ca * (cb @ mt) + cb * (ca @ mt)
        table = contrib.reshape(-1, level.k, n).sum(axis=1)
    return table[0]


def combine_count(n: int) -> int:
    """Total halving alternatives examined by one full sweep."""
    return sum(len(level.masks) * level.k for level in plan(n).levels)
