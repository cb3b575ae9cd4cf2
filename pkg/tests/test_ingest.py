import numpy as np
import pytest

from drawfix import (
    CrParams,
    DeterministicTournament,
    HeadToHeadRecord,
    IncompleteDataError,
    MatchRecord,
    PlayerTable,
    ProbabilisticTournament,
    RankingTable,
    drop_player,
    generate_cr,
    read_h2h,
    read_matches,
    read_prob_matrix,
    read_ranks,
    soccer_to_tournaments,
    tennis_to_tournaments,
    write_h2h,
    write_matches,
    write_prob_matrix,
    write_ranks,
)

RANKS = RankingTable(names=("A", "B", "C", "D"))


def season_matches():
    """A hand-checked double round-robin over four ranked teams.

    A vs B goes to A on aggregate 3:2; C shuts out A 3:0; A vs D ties
    3:3 but A scored more away; B vs C is goalless twice (rank rule);
    B whitewashes D; C vs D ties with equal away goals (rank rule).
    """
    rows = [
        ("A", "B", 2, 1), ("B", "A", 1, 1),
        ("A", "C", 0, 2), ("C", "A", 1, 0),
        ("A", "D", 1, 1), ("D", "A", 2, 2),
        ("B", "C", 0, 0), ("C", "B", 0, 0),
        ("B", "D", 3, 0), ("D", "B", 0, 1),
        ("C", "D", 2, 1), ("D", "C", 2, 1),
    ]
    return [MatchRecord("2024", h, a, hg, ag) for h, a, hg, ag in rows]


class TestCsvRoundTrips:
    def test_matches(self, tmp_path):
        path = tmp_path / "m.csv"
        write_matches(path, season_matches())
        assert read_matches(path) == season_matches()

    def test_h2h(self, tmp_path):
        records = [HeadToHeadRecord("A", "B", 7, 3),
                   HeadToHeadRecord("C", "A", 2, 6)]
        path = tmp_path / "h.csv"
        write_h2h(path, records)
        assert read_h2h(path) == records

    def test_ranks(self, tmp_path):
        path = tmp_path / "r.csv"
        write_ranks(path, RANKS)
        assert read_ranks(path) == RANKS

    def test_wrong_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="header"):
            read_matches(path)

    def test_short_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("season,home,away,home_goals,away_goals\n2024,A,B,1\n")
        with pytest.raises(ValueError, match="line 2"):
            read_matches(path)

    def test_non_integer_goals(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            "season,home,away,home_goals,away_goals\n2024,A,B,one,2\n")
        with pytest.raises(ValueError, match="integer"):
            read_matches(path)

    def test_rank_gap_rejected(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("rank,name\n1,A\n3,B\n")
        with pytest.raises(ValueError):
            read_ranks(path)


class TestSoccer:
    def test_beats_matrix(self):
        det, _ = soccer_to_tournaments(season_matches(), RANKS)
        want = np.array([
            # A      B      C      D
            [False, True, False, True],   # A: loses only to C
            [False, False, True, True],   # B: goalless pair goes to rank
            [True, False, False, True],   # C
            [False, False, False, False],  # D
        ])
        assert np.array_equal(det.beats, want)

    def test_probabilities_are_goal_shares(self):
        _, prob = soccer_to_tournaments(season_matches(), RANKS)
        assert prob.probs[0, 1] == pytest.approx(3 / 5)   # A 3:2 B
        assert prob.probs[0, 2] == pytest.approx(0.0)     # A 0:3 C
        assert prob.probs[0, 3] == pytest.approx(0.5)     # A 3:3 D
        assert prob.probs[1, 2] == pytest.approx(0.5)     # goalless
        assert prob.probs[1, 3] == pytest.approx(1.0)     # B 4:0 D
        assert prob.probs[3, 1] == pytest.approx(0.0)

    def test_season_filter(self):
        extra = season_matches() + [MatchRecord("2023", "A", "B", 0, 9)]
        with pytest.raises(ValueError, match="season"):
            soccer_to_tournaments(extra, RANKS)
        det, _ = soccer_to_tournaments(extra, RANKS, season="2024")
        assert det.beats[0, 1]

    def test_unknown_season(self):
        with pytest.raises(ValueError, match="no matches"):
            soccer_to_tournaments(season_matches(), RANKS, season="1999")

    def test_duplicate_fixture(self):
        doubled = season_matches() + [MatchRecord("2024", "A", "B", 1, 0)]
        with pytest.raises(ValueError, match="duplicate"):
            soccer_to_tournaments(doubled, RANKS)

    def test_missing_legs_reported_as_pairs(self):
        partial = [m for m in season_matches()
                   if {m.home, m.away} != {"A", "C"} and {m.home, m.away} != {"B", "D"}]
        with pytest.raises(IncompleteDataError) as err:
            soccer_to_tournaments(partial, RANKS)
        assert err.value.pairs == (("A", "C"), ("B", "D"))

    def test_unranked_team_rejected(self):
        rows = season_matches() + [MatchRecord("2024", "A", "Z", 1, 0)]
        with pytest.raises(ValueError, match="unknown player"):
            soccer_to_tournaments(rows, RANKS)


class TestTennis:
    def records(self):
        return [
            HeadToHeadRecord("A", "B", 7, 3),
            HeadToHeadRecord("C", "A", 2, 6),   # reversed orientation
            HeadToHeadRecord("B", "C", 4, 4),   # tie
            HeadToHeadRecord("A", "D", 0, 0),   # zero meetings
            # B-D, C-D never listed
        ]

    def test_matrix(self):
        det, prob = tennis_to_tournaments(self.records(), RANKS)
        assert prob.probs[0, 1] == pytest.approx(0.7)
        assert prob.probs[0, 2] == pytest.approx(0.75)
        assert prob.probs[1, 2] == pytest.approx(0.5)
        assert prob.probs[0, 3] == pytest.approx(0.5)
        assert prob.probs[2, 3] == pytest.approx(0.5)
        # ties and missing pairs go to the better rank
        assert det.beats[0, 1] and det.beats[1, 2] and det.beats[1, 3]
        assert det.beats[0, 3] and det.beats[2, 3]
        # a real record overrides rank order
        assert det.beats[0, 2]

    def test_rank_upset_kept(self):
        det, prob = tennis_to_tournaments(
            [HeadToHeadRecord("D", "A", 9, 1)], RANKS)
        assert det.beats[3, 0]
        assert prob.probs[3, 0] == pytest.approx(0.9)

    def test_duplicate_pair(self):
        records = self.records() + [HeadToHeadRecord("B", "A", 1, 1)]
        with pytest.raises(ValueError, match="duplicate"):
            tennis_to_tournaments(records, RANKS)

    def test_unranked_player_rejected(self):
        with pytest.raises(ValueError, match="unknown player"):
            tennis_to_tournaments([HeadToHeadRecord("A", "Z", 1, 0)], RANKS)


class TestDropPlayer:
    def test_ranks_compact(self):
        det, _ = soccer_to_tournaments(season_matches(), RANKS)
        smaller = drop_player(det, 1)
        assert smaller.players.names == ("A", "C", "D")
        assert smaller.players.ranks == (1, 2, 3)
        assert smaller.beats[1, 0]  # C still beats A
        assert not smaller.beats[2, 0]

    def test_probabilistic(self):
        _, prob = soccer_to_tournaments(season_matches(), RANKS)
        smaller = drop_player(prob, 2)
        assert smaller.players.names == ("A", "B", "D")
        assert smaller.probs[0, 1] == pytest.approx(3 / 5)
        assert isinstance(smaller, ProbabilisticTournament)

    def test_scrambled_ranks_compact_in_order(self):
        players = PlayerTable(names=("w", "x", "y", "z"), ranks=(4, 2, 1, 3))
        probs = np.full((4, 4), 0.5)
        t = ProbabilisticTournament(players=players, probs=probs)
        smaller = drop_player(t, 3)  # z held rank 3
        assert smaller.players.names == ("w", "x", "y")
        assert smaller.players.ranks == (3, 2, 1)

    def test_bad_id(self, cycle4):
        with pytest.raises(ValueError):
            drop_player(cycle4, 9)

    def test_wrong_type(self):
        with pytest.raises(TypeError):
            drop_player("nope", 0)


class TestProbMatrixFiles:
    def test_json_round_trip(self, tmp_path):
        t = generate_cr(CrParams(n=8, upset_prob=0.35))
        path = tmp_path / "m.json"
        write_prob_matrix(path, t)
        back = read_prob_matrix(path)
        assert back.players == t.players
        assert np.allclose(back.probs, t.probs)

    def test_csv_round_trip(self, tmp_path):
        _, prob = soccer_to_tournaments(season_matches(), RANKS)
        path = tmp_path / "m.csv"
        write_prob_matrix(path, prob, fmt="csv")
        back = read_prob_matrix(path)
        assert back.players == prob.players
        assert np.allclose(back.probs, prob.probs)

    def test_csv_requires_rank_order(self, tmp_path):
        players = PlayerTable(names=("x", "y"), ranks=(2, 1))
        t = ProbabilisticTournament(players=players, probs=np.full((2, 2), 0.5))
        with pytest.raises(ValueError, match="rank order"):
            write_prob_matrix(tmp_path / "m.csv", t, fmt="csv")
        write_prob_matrix(tmp_path / "m.json", t)  # json keeps any order
        assert read_prob_matrix(tmp_path / "m.json").players.ranks == (2, 1)

    def test_unknown_format(self, tmp_path):
        t = generate_cr(CrParams(n=4, upset_prob=0.4))
        with pytest.raises(ValueError):
            write_prob_matrix(tmp_path / "m.xml", t, fmt="xml")

    def test_format_field_checked(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text('{"format": "something-else/9"}\n')
        with pytest.raises(ValueError, match="not a"):
            read_prob_matrix(path)

    def test_csv_header_checked(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("team,A,B\nA,0.5,0.6\nB,0.4,0.5\n")
        with pytest.raises(ValueError, match="header"):
            read_prob_matrix(path)

    def test_csv_row_name_mismatch(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text('"name","A","B"\n"A",0.5,0.6\n"X",0.4,0.5\n')
        with pytest.raises(ValueError, match="row"):
            read_prob_matrix(path)
