"""Turning league results into pairwise tournaments.

File formats (UTF-8 CSV, header row required, names quoted on output):

  matches.csv   season,home,away,home_goals,away_goals
  h2h.csv       player_a,player_b,a_wins,b_wins
  ranks.csv     rank,name            (rank 1 is the best)

Probability matrices travel as JSON ({"format": "drawfix-probmatrix/1",
"names": [...], "ranks": [...], "probs": [[...]]}) or as a square CSV
with a leading name column.  Parsers reject unknown headers; integer
fields must be base-10 digits.

Soccer pairs are decided on aggregate goals over the two legs, away
goals break ties, and any residual tie goes to the better-ranked team;
the win probability is each side's share of the goals (0.5 when no
goals were scored at all).  Tennis pairs are decided by lifetime
head-to-head win fraction, with ties and never-met pairs going to the
better-ranked player (probability 0.5 when never met).
"""
from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import DeterministicTournament, PlayerTable, ProbabilisticTournament

__all__ = [
    "MATCHES_HEADER",
    "H2H_HEADER",
    "RANKS_HEADER",
    "MatchRecord",
    "HeadToHeadRecord",
    "RankingTable",
    "IncompleteDataError",
    "read_matches",
    "write_matches",
    "read_h2h",
    "write_h2h",
    "read_ranks",
    "write_ranks",
    "read_prob_matrix",
    "write_prob_matrix",
    "soccer_to_tournaments",
    "tennis_to_tournaments",
    "drop_player",
]

MATCHES_HEADER = ["season", "home", "away", "home_goals", "away_goals"]
H2H_HEADER = ["player_a", "player_b", "a_wins", "b_wins"]
RANKS_HEADER = ["rank", "name"]

PROB_MATRIX_FORMAT = "drawfix-probmatrix/1"


class IncompleteDataError(ValueError):
    """A ranked pair has no usable results."""

    def __init__(self, pairs: Sequence[tuple[str, str]]):
        self.pairs = tuple(pairs)
        shown = ", ".join(f"{a} vs {b}" for a, b in self.pairs[:8])
        if len(self.pairs) > 8:
            shown += ", ..."
        super().__init__(f"missing results for {len(self.pairs)} pair(s): {shown}")


@dataclass(frozen=True)
class MatchRecord:
    season: str
    home: str
    away: str
    home_goals: int
    away_goals: int


@dataclass(frozen=True)
class HeadToHeadRecord:
    player_a: str
    player_b: str
    a_wins: int
    b_wins: int


@dataclass(frozen=True)
class RankingTable:
    """Names listed from rank 1 downwards."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("ranking must not be empty")
        if len(set(self.names)) != len(self.names):
            raise ValueError("ranked names must be unique")

    @property
    def n(self) -> int:
        return len(self.names)

    def to_players(self) -> PlayerTable:
        return PlayerTable.from_ordered(self.names)


def _int_field(value: str, line: int, column: str) -> int:
    if not re.fullmatch(r"\d+", value):
        raise ValueError(
            f"line {line}: column {column!r} must be a base-10 integer, got {value!r}"
        )
    return int(value)


def _read_rows(path, header: list[str]) -> list[tuple[int, list[str]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    if rows[0] != header:
        raise ValueError(
            f"{path}: unknown header {rows[0]!r}, expected {header!r}"
        )
    out = []
    for line, row in enumerate(rows[1:], start=2):
        if row:
            if len(row) != len(header):
                raise ValueError(f"{path}: line {line}: expected {len(header)} fields")
            out.append((line, row))
    return out


def read_matches(path) -> list[MatchRecord]:
    out = []
    for line, (season, home, away, hg, ag) in _read_rows(path, MATCHES_HEADER):
        out.append(
            MatchRecord(
                season=season,
                home=home,
                away=away,
                home_goals=_int_field(hg, line, "home_goals"),
                away_goals=_int_field(ag, line, "away_goals"),
            )
        )
    return out


def read_h2h(path) -> list[HeadToHeadRecord]:
    out = []
    for line, (pa, pb, aw, bw) in _read_rows(path, H2H_HEADER):
        out.append(
            HeadToHeadRecord(
                player_a=pa,
                player_b=pb,
                a_wins=_int_field(aw, line, "a_wins"),
                b_wins=_int_field(bw, line, "b_wins"),
            )
        )
    return out


def read_ranks(path) -> RankingTable:
    seen = {}
    for line, (rank, name) in _read_rows(path, RANKS_HEADER):
        r = _int_field(rank, line, "rank")
        if r in seen:
            raise ValueError(f"{path}: duplicate rank {r}")
        seen[r] = name
    if sorted(seen) != list(range(1, len(seen) + 1)):
        raise ValueError(f"{path}: ranks must be exactly 1..{len(seen)}")
    return RankingTable(names=tuple(seen[r] for r in sorted(seen)))


def _write_rows(path, header: list[str], rows: Iterable[tuple]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        writer = csv.writer(fh, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerows(rows)


def write_matches(path, records: Iterable[MatchRecord]) -> None:
    _write_rows(
        path,
        MATCHES_HEADER,
        ((r.season, r.home, r.away, r.home_goals, r.away_goals) for r in records),
    )


def write_h2h(path, records: Iterable[HeadToHeadRecord]) -> None:
    _write_rows(
        path,
        H2H_HEADER,
        ((r.player_a, r.player_b, r.a_wins, r.b_wins) for r in records),
    )


def write_ranks(path, ranking: RankingTable) -> None:
    _write_rows(
        path, RANKS_HEADER, ((i + 1, name) for i, name in enumerate(ranking.names))
    )


def soccer_to_tournaments(
    matches: Sequence[MatchRecord],
    ranks: RankingTable,
    season: str | None = None,
) -> tuple[DeterministicTournament, ProbabilisticTournament]:
    """Build both tournament readings from a double round-robin season.

    Every ranked pair must have exactly one home match each way in the
    selected season; matches naming unranked teams are rejected.  Pass
    ``season`` when the match list spans more than one.
    """
    players = ranks.to_players()
    seasons = sorted({m.season for m in matches})
    if season is None:
        if len(seasons) > 1:
            raise ValueError(f"matches span seasons {seasons}; pass season=")
        selected = list(matches)
    else:
        selected = [m for m in matches if m.season == season]
        if not selected:
            raise ValueError(f"no matches found for season {season!r}")

    legs: dict[tuple[int, int], tuple[int, int]] = {}
    for m in selected:
        hi = players.id_of(m.home)
        ai = players.id_of(m.away)
        if hi == ai:
            raise ValueError(f"{m.home} cannot play itself")
        if (hi, ai) in legs:
            raise ValueError(f"duplicate fixture: {m.home} at home to {m.away}")
        legs[(hi, ai)] = (m.home_goals, m.away_goals)

    n = players.n
    beats = np.zeros((n, n), dtype=bool)
    probs = np.full((n, n), 0.5)
    missing = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in legs or (j, i) not in legs:
                missing.append((players.names[i], players.names[j]))
                continue
            hg1, ag1 = legs[(i, j)]  # i at home
            hg2, ag2 = legs[(j, i)]  # j at home
            goals_i = hg1 + ag2
            goals_j = ag1 + hg2
            away_i, away_j = ag2, ag1
            if goals_i != goals_j:
                i_wins = goals_i > goals_j
            elif away_i != away_j:
                i_wins = away_i > away_j
            else:
                i_wins = True  # ids are in rank order: i is ranked better
            beats[i, j] = i_wins
            beats[j, i] = not i_wins
            total = goals_i + goals_j
            p = goals_i / total if total else 0.5
            probs[i, j] = p
            probs[j, i] = 1.0 - p
    if missing:
        raise IncompleteDataError(missing)
    return (
        DeterministicTournament(players=players, beats=beats),
        ProbabilisticTournament(players=players, probs=probs),
    )


def tennis_to_tournaments(
    h2h: Sequence[HeadToHeadRecord],
    ranks: RankingTable,
) -> tuple[DeterministicTournament, ProbabilisticTournament]:
    """Build both tournament readings from lifetime head-to-head records.

    A pair with no record (or zero meetings) counts as never met: the
    better-ranked player is assumed to win and the probability is 0.5.
    Records naming unranked players are rejected.
    """
    players = ranks.to_players()
    record: dict[tuple[int, int], tuple[int, int]] = {}
    for rec in h2h:
        ai = players.id_of(rec.player_a)
        bi = players.id_of(rec.player_b)
        if ai == bi:
            raise ValueError(f"{rec.player_a} cannot play itself")
        key = (min(ai, bi), max(ai, bi))
        if key in record:
            raise ValueError(
                f"duplicate head-to-head pair: {rec.player_a} vs {rec.player_b}"
            )
        record[key] = (rec.a_wins, rec.b_wins) if ai < bi else (rec.b_wins, rec.a_wins)

    n = players.n
    beats = np.zeros((n, n), dtype=bool)
    probs = np.full((n, n), 0.5)
    for i in range(n):
        for j in range(i + 1, n):
            wins_i, wins_j = record.get((i, j), (0, 0))
            total = wins_i + wins_j
            if total:
                p = wins_i / total
            else:
                p = 0.5  # never met
            if p != 0.5:
                i_wins = p > 0.5
            else:
                i_wins = True  # tie or never met: i is ranked better
            beats[i, j] = i_wins
            beats[j, i] = not i_wins
            probs[i, j] = p
            probs[j, i] = 1.0 - p
    return (
        DeterministicTournament(players=players, beats=beats),
        ProbabilisticTournament(players=players, probs=probs),
    )


def drop_player(t, player: int):
    """Remove one player by id, compacting ids and ranks in place order.

    Works on either tournament kind and returns the same kind.
    """
    if not isinstance(t, (DeterministicTournament, ProbabilisticTournament)):
        raise TypeError(f"not a tournament: {type(t).__name__}")
    players = t.players
    if not 0 <= player < players.n:
        raise ValueError(f"no player with id {player}")
    keep = [i for i in range(players.n) if i != player]
    kept_ranks = [players.ranks[i] for i in keep]
    new_ranks = tuple(sum(1 for s in kept_ranks if s < r) + 1 for r in kept_ranks)
    table = PlayerTable(
        names=tuple(players.names[i] for i in keep), ranks=new_ranks
    )
    idx = np.array(keep)
    if isinstance(t, DeterministicTournament):
        return DeterministicTournament(players=table, beats=t.beats[np.ix_(idx, idx)])
    return ProbabilisticTournament(players=table, probs=t.probs[np.ix_(idx, idx)])


def write_prob_matrix(path, t: ProbabilisticTournament, fmt: str = "json") -> None:
    """Serialise a probability matrix; see the module docstring for formats."""
    if fmt == "json":
        doc = {
            "format": PROB_MATRIX_FORMAT,
            "names": list(t.players.names),
            "ranks": list(t.players.ranks),
            "probs": [[float(x) for x in row] for row in t.probs],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
            fh.write("\n")
        return
    if fmt != "csv":
        raise ValueError(f"unknown matrix format: {fmt!r}")
    if t.players.ranks != tuple(range(1, t.n + 1)):
        raise ValueError("csv matrices require players listed in rank order")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerow(["name", *t.players.names])
        for name, row in zip(t.players.names, t.probs):
            writer.writerow([name, *[float(x) for x in row]])


def read_prob_matrix(path) -> ProbabilisticTournament:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    head = text.lstrip()[:1]
    if head == "{":
        doc = json.loads(text)
        if doc.get("format") != PROB_MATRIX_FORMAT:
            raise ValueError(f"{path}: not a {PROB_MATRIX_FORMAT} file")
        players = PlayerTable(
            names=tuple(doc["names"]), ranks=tuple(int(r) for r in doc["ranks"])
        )
        return ProbabilisticTournament(players=players, probs=np.array(doc["probs"]))
    rows = list(csv.reader(text.splitlines()))
    if not rows or not rows[0] or rows[0][0] != "name":
        raise ValueError(f"{path}: unknown header for a probability matrix")
    names = tuple(rows[0][1:])
    if len(rows) != len(names) + 1:
        raise ValueError(f"{path}: expected {len(names)} matrix rows")
    probs = np.empty((len(names), len(names)))
    for i, row in enumerate(rows[1:]):
        if len(row) != len(names) + 1 or row[0] != names[i]:
            raise ValueError(f"{path}: matrix row {i + 1} does not match the header")
        probs[i] = [float(x) for x in row[1:]]
    players = PlayerTable.from_ordered(names)
    return ProbabilisticTournament(players=players, probs=probs)
