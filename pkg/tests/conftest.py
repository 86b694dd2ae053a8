import os
from datetime import date
from pathlib import Path

import pytest
from hypothesis import strategies as st

from nfl_lines.dataset import Dataset, GameRecord, load_dataset, load_divisions

REPO = Path(__file__).resolve().parents[1]
DATA = REPO / "data"
FIXTURE_GAMES = DATA / "fixtures" / "games.csv"
DIVISIONS = DATA / "divisions.csv"

# Golden tests against the real 2002-2011 history run only when the caller
# points at a local copy of it; the bundled fixture seasons are synthetic.
REAL_GAMES = os.environ.get("NFL_LINES_REAL_GAMES", "")


@pytest.fixture(scope="session")
def divisions():
    return load_divisions(DIVISIONS)


@pytest.fixture(scope="session")
def fixture_dataset():
    """Both synthetic seasons, postseason rows included."""
    return load_dataset(FIXTURE_GAMES, DIVISIONS)


@pytest.fixture(scope="session")
def regular_dataset(fixture_dataset):
    return fixture_dataset.filter(regular_season_only=True)


def make_game(
    season=2002,
    week=1,
    home="NYJ",
    away="NE",
    home_score=14,
    away_score=38,
    line_open=-6.0,
    line_close=-7.0,
    day=None,
):
    return GameRecord(
        season,
        week,
        day or date(season, 9, 8),
        home,
        away,
        home_score,
        away_score,
        line_open,
        line_close,
    )


def make_dataset(games, divisions):
    return Dataset(tuple(games), divisions, provenance="test")


# -- hypothesis strategies ---------------------------------------------------

TEAM_CODES = (
    "ARI ATL BAL BUF CAR CHI CIN CLE DAL DEN DET GB HOU IND JAX KC MIA MIN NE "
    "NO NYG NYJ OAK PHI PIT SD SEA SF STL TB TEN WAS"
).split()

half_points = st.integers(-40, 40).map(lambda k: k / 2.0)
scores = st.integers(0, 70)


@st.composite
def game_records(draw):
    home, away = draw(
        st.tuples(st.sampled_from(TEAM_CODES), st.sampled_from(TEAM_CODES)).filter(
            lambda pair: pair[0] != pair[1]
        )
    )
    return make_game(
        season=draw(st.integers(2002, 2011)),
        week=draw(st.integers(1, 21)),
        home=home,
        away=away,
        home_score=draw(scores),
        away_score=draw(scores),
        line_open=draw(half_points),
        line_close=draw(half_points),
    )
