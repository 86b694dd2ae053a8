"""Build the bundled synthetic fixture seasons.

The repository ships two fully synthetic seasons (2002 and 2003) under
data/fixtures/. Each season has 16 weeks of 16 games (every team plays
once a week, 256 games total) plus a handful of postseason rows in weeks
18-19. Scores are drawn so that the favorite's margin minus the spread is
Gaussian around zero, i.e. the data behaves the way the closing-line
market is supposed to: the line is an unbiased but noisy forecast.

Running this script regenerates data/fixtures/games.csv byte-for-byte.
"""

from datetime import date, timedelta
from pathlib import Path

import numpy as np

from nfl_lines.dataset import Dataset, GameRecord, games_to_csv, load_divisions

REPO = Path(__file__).resolve().parents[1]
OUT = REPO / "data" / "fixtures" / "games.csv"

LINE_ERROR_STD = 13.588
HOME_EDGE = 2.5
SEASONS = (2002, 2003)
WEEKS = 16

# odds of each open-to-close move, biased hard toward small moves
MOVE_VALUES = np.array([-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0])
MOVE_WEIGHTS = np.array([0.01, 0.02, 0.08, 0.21, 0.36, 0.21, 0.08, 0.02, 0.01])


def round_robin(teams: list[str], rounds: int):
    """Circle-method pairings: every team plays once per round, no repeats."""
    fixed, rest = teams[0], list(teams[1:])
    n = len(rest)
    for r in range(rounds):
        rot = rest[r:] + rest[:r]
        pairs = [(fixed, rot[0])]
        pairs += [(rot[i], rot[n - i]) for i in range(1, len(teams) // 2)]
        yield pairs


def half_point(x: float) -> float:
    return float(np.round(x * 2.0) / 2.0)


def build_season(season: int, teams: list[str], rng: np.random.Generator) -> list[GameRecord]:
    strength = dict(zip(teams, rng.normal(0.0, 4.0, len(teams))))
    opener = date(season, 9, 8)
    games = []
    for week, pairs in enumerate(round_robin(teams, WEEKS), start=1):
        when = opener + timedelta(weeks=week - 1)
        for a, b in pairs:
            home, away = (a, b) if rng.random() < 0.5 else (b, a)
            true_diff = strength[home] - strength[away] + HOME_EDGE
            line_close = half_point(np.clip(true_diff + rng.normal(0.0, 1.0), -16.0, 16.0))
            line_open = half_point(np.clip(line_close - rng.choice(MOVE_VALUES, p=MOVE_WEIGHTS), -16.0, 16.0))
            margin = int(np.round(rng.normal(line_close, LINE_ERROR_STD)))
            if margin == 0:
                margin = int(np.round(rng.normal(line_close, LINE_ERROR_STD)))  # ties should be rare
            loser = int(rng.integers(6, 28))
            home_score, away_score = (loser + margin, loser) if margin >= 0 else (loser, loser - margin)
            games.append(
                GameRecord(season, week, when, home, away, home_score, away_score, line_open, line_close)
            )
    # a few postseason rows (weeks above 17) so filtering has something to drop
    ranked = sorted(teams, key=lambda t: -strength[t])
    jan = date(season + 1, 1, 4)
    for i in range(4):
        home, away = ranked[i], ranked[7 - i]
        line = half_point(strength[home] - strength[away] + HOME_EDGE)
        margin = int(np.round(rng.normal(line, LINE_ERROR_STD)))
        if margin == 0:
            margin = 3
        loser = int(rng.integers(6, 28))
        hs, as_ = (loser + margin, loser) if margin >= 0 else (loser, loser - margin)
        games.append(GameRecord(season, 18, jan, home, away, hs, as_, line, line))
    for i in range(2):
        home, away = ranked[i], ranked[3 - i]
        line = half_point(strength[home] - strength[away] + HOME_EDGE)
        margin = int(np.round(rng.normal(line, LINE_ERROR_STD)))
        if margin == 0:
            margin = -3
        loser = int(rng.integers(6, 28))
        hs, as_ = (loser + margin, loser) if margin >= 0 else (loser, loser - margin)
        games.append(GameRecord(season, 19, jan + timedelta(weeks=1), home, away, hs, as_, line, line))
    return games


def force_tie(games: list[GameRecord], index: int) -> None:
    """Pin one straight-up tie so the half-win bookkeeping gets exercised."""
    g = games[index]
    low = min(g.home_score, g.away_score)
    games[index] = GameRecord(
        g.season, g.week, g.date, g.home, g.away, low, low, g.line_open, g.line_close
    )


def main() -> None:
    divisions = load_divisions(REPO / "data" / "divisions.csv")
    teams = list(divisions.teams)
    rng = np.random.default_rng(20020908)
    games: list[GameRecord] = []
    for season in SEASONS:
        games.extend(build_season(season, teams, rng))
    force_tie(games, 37)

    dataset = Dataset(tuple(games), divisions, provenance="synthetic fixture")
    regular = dataset.filter(regular_season_only=True)
    print(f"built {len(dataset)} games ({len(regular)} regular season) over {dataset.seasons()}")
    pick_ems = sum(1 for g in regular if g.line_close == 0)
    ties = sum(1 for g in regular if g.home_score == g.away_score)
    print(f"pick-ems: {pick_ems}, straight-up ties: {ties}")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(games_to_csv(dataset.games), encoding="utf-8", newline="")
    print(f"wrote {OUT.relative_to(REPO)}")

    # keep a divisions copy beside the games so NFL_LINES_DATA can point here
    copy = OUT.parent / "divisions.csv"
    copy.write_text((REPO / "data" / "divisions.csv").read_text(encoding="utf-8"), encoding="utf-8", newline="")
    print(f"wrote {copy.relative_to(REPO)}")


if __name__ == "__main__":
    main()
