"""Seeded Monte Carlo simulation of seasons from per-game win probabilities.

Randomness is drawn from Philox streams keyed on (seed, replication index),
with the draw position within a stream fixed by the game index. Results are
therefore bit-identical for a given seed no matter how replications are
partitioned across workers.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dataset import Dataset, DivisionMap, GameRecord, UnknownTeamError
from .prob_model import WinModel, win_probability

GAMES_PER_TEAM = 16


class MissingSeasonError(ValueError):
    def __init__(self, season: int):
        super().__init__(f"no regular-season games for season {season}")
        self.season = season


class IncompleteScheduleWarning(UserWarning):
    """A team played a number of regular-season games other than 16."""


@dataclass(frozen=True)
class ScheduleEntry:
    game_index: int
    home: str
    away: str
    home_win_prob: float


@dataclass(frozen=True)
class SeasonSchedule:
    """One season's games with model win probabilities and actual win tallies.

    ``actual_wins`` credits 0.5 to each side of a straight-up tie; reports
    floor the value. The underlying records are kept for head-to-head
    tie-breaking.
    """

    season: int
    entries: tuple[ScheduleEntry, ...]
    actual_wins: Mapping[str, float]
    games: tuple[GameRecord, ...] = ()

    @property
    def teams(self) -> tuple[str, ...]:
        seen = {e.home for e in self.entries} | {e.away for e in self.entries}
        return tuple(sorted(seen))


def build_schedule(dataset: Dataset, season: int, model: WinModel) -> SeasonSchedule:
    """Assemble the season's regular-season schedule under the given model.

    The home win probability comes from the signed closing line in the
    home frame (a pick-em gives 0.5). Teams with a game count other than
    16 trigger an IncompleteScheduleWarning, not a failure.
    """
    season_ds = dataset.filter(seasons=season, regular_season_only=True)
    if len(season_ds) == 0:
        raise MissingSeasonError(season)
    entries = []
    wins: dict[str, float] = defaultdict(float)
    counts: dict[str, int] = defaultdict(int)
    for i, g in enumerate(season_ds):
        entries.append(ScheduleEntry(i, g.home, g.away, win_probability(model, g.line_close)))
        counts[g.home] += 1
        counts[g.away] += 1
        if g.home_margin > 0:
            wins[g.home] += 1.0
        elif g.home_margin < 0:
            wins[g.away] += 1.0
        else:
            wins[g.home] += 0.5
            wins[g.away] += 0.5
    short = sorted(t for t, c in counts.items() if c != GAMES_PER_TEAM)
    if short:
        warnings.warn(
            f"season {season}: teams with a schedule other than {GAMES_PER_TEAM} games: {short}",
            IncompleteScheduleWarning,
            stacklevel=2,
        )
    actual = {t: wins.get(t, 0.0) for t in sorted(counts)}
    return SeasonSchedule(season, tuple(entries), actual, tuple(season_ds.games))


@dataclass(frozen=True)
class SimulationResult:
    replications: int
    seed: int
    teams: tuple[str, ...]
    mean_wins: Mapping[str, float]
    predicted_wins: Mapping[str, int]
    win_samples: np.ndarray | None = None  # (replications, teams) when retained


def simulate(
    schedule: SeasonSchedule,
    replications: int,
    seed: int,
    workers: int = 1,
    keep_samples: bool = False,
) -> SimulationResult:
    """Simulate the season ``replications`` times and average the win counts.

    Each game resolves independently as a home win with its scheduled
    probability, one uniform draw per (replication, game). Predicted wins
    are the per-team means rounded half-up.
    """
    if replications < 1:
        raise ValueError(f"replications must be at least 1, got {replications}")
    teams = schedule.teams
    index = {t: i for i, t in enumerate(teams)}
    probs = np.array([e.home_win_prob for e in schedule.entries])
    home_idx = np.array([index[e.home] for e in schedule.entries], dtype=np.intp)
    away_idx = np.array([index[e.away] for e in schedule.entries], dtype=np.intp)
    n_teams = len(teams)
    n_games = len(schedule.entries)
    seed64 = int(seed) & (2**64 - 1)

    def run_block(start: int, stop: int) -> np.ndarray:
        block = np.zeros((stop - start, n_teams), dtype=np.int64)
        for r in range(start, stop):
            stream = np.random.Generator(np.random.Philox(key=[seed64, r]))
            home_win = stream.random(n_games) < probs
            block[r - start] = np.bincount(home_idx[home_win], minlength=n_teams) + np.bincount(
                away_idx[~home_win], minlength=n_teams
            )
        return block

    if workers <= 1:
        blocks = [run_block(0, replications)]
    else:
        bounds = np.linspace(0, replications, workers + 1).astype(int)
        spans = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda span: run_block(*span), spans))

    totals = np.zeros(n_teams, dtype=np.int64)
    for b in blocks:
        totals += b.sum(axis=0)
    mean = totals / replications
    mean_wins = {t: float(mean[i]) for t, i in index.items()}
    predicted = {t: int(math.floor(mean[i] + 0.5)) for t, i in index.items()}
    samples = np.vstack(blocks) if keep_samples else None
    return SimulationResult(replications, seed64, teams, mean_wins, predicted, samples)


@dataclass(frozen=True)
class DivisionPrediction:
    conference: str
    division: str
    predicted_winner: str
    actual_winner: str
    tied_set: frozenset[str]
    correct: bool
    actual_tie: bool


def predict_division_winners(
    result: SimulationResult,
    schedule: SeasonSchedule,
    divisions: DivisionMap,
) -> list[DivisionPrediction]:
    """Pick each division's predicted winner and compare to the actual one.

    A tie in predicted wins counts as correct whenever the actual winner
    is in the tied set; the predicted winner is then reported as the
    actual winner (lexicographically first otherwise). Actual ties break
    by head-to-head record, then lexicographically, with a flag set.
    """
    for team in result.teams:
        if team not in divisions:
            raise UnknownTeamError(team)
    predictions = []
    for conf, div, cell_teams in divisions.cells():
        present = [t for t in cell_teams if t in result.predicted_wins]
        if not present:
            continue
        best = max(result.predicted_wins[t] for t in present)
        tied = frozenset(t for t in present if result.predicted_wins[t] == best)
        actual_winner, actual_tie = _actual_division_winner(present, schedule)
        if len(tied) == 1:
            predicted_winner = next(iter(tied))
            correct = predicted_winner == actual_winner
        else:
            correct = actual_winner in tied
            predicted_winner = actual_winner if correct else min(tied)
        predictions.append(
            DivisionPrediction(conf, div, predicted_winner, actual_winner, tied, correct, actual_tie)
        )
    return predictions


def _actual_division_winner(teams: Sequence[str], schedule: SeasonSchedule) -> tuple[str, bool]:
    best = max(schedule.actual_wins.get(t, 0.0) for t in teams)
    leaders = sorted(t for t in teams if schedule.actual_wins.get(t, 0.0) == best)
    if len(leaders) == 1:
        return leaders[0], False
    # head-to-head among the leaders, half a win each for a tie game
    h2h = {t: 0.0 for t in leaders}
    group = set(leaders)
    for g in schedule.games:
        if g.home in group and g.away in group:
            if g.home_margin > 0:
                h2h[g.home] += 1.0
            elif g.home_margin < 0:
                h2h[g.away] += 1.0
            else:
                h2h[g.home] += 0.5
                h2h[g.away] += 0.5
    top = max(h2h.values())
    winner = min(t for t in leaders if h2h[t] == top)
    return winner, True


def score_predictions(predictions: Sequence[DivisionPrediction]) -> tuple[int, int]:
    """(correct, total) over a list of division predictions."""
    return sum(1 for p in predictions if p.correct), len(predictions)


def simulation_to_csv(
    result: SimulationResult,
    schedule: SeasonSchedule,
    divisions: DivisionMap,
) -> str:
    """Serialize a simulation as one row per team, grouped by division.

    Columns: team, conference, division, predicted_wins, mean_wins,
    actual_wins (floored for reporting), outcome. The outcome column
    marks the actual division winner.
    """
    predictions = predict_division_winners(result, schedule, divisions)
    winners = {(p.conference, p.division): p.actual_winner for p in predictions}
    rows = []
    for team in result.teams:
        conf = divisions.conference_of(team)
        div = divisions.division_of(team)
        rows.append(
            (
                conf,
                div,
                -result.predicted_wins[team],
                -schedule.actual_wins.get(team, 0.0),
                team,
            )
        )
    rows.sort()
    lines = ["team,conference,division,predicted_wins,mean_wins,actual_wins,outcome"]
    for conf, div, neg_pred, neg_actual, team in rows:
        outcome = "Division Winner" if winners.get((conf, div)) == team else ""
        lines.append(
            f"{team},{conf},{div},{-neg_pred},{result.mean_wins[team]:.3f},"
            f"{int(math.floor(-neg_actual))},{outcome}"
        )
    return "\n".join(lines) + "\n"
