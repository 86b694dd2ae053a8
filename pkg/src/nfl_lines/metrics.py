"""Per-game and aggregate line-accuracy metrics.

Margin of victory, line difference (the line's signed error), against-the-
spread settlement, line movement, histograms, and the per-season home-record
breakdown.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, NamedTuple, Sequence

from .dataset import Dataset, GameRecord, GameSide, favorite_of

#: Default bin widths: half-point market granularity for spreads, whole
#: points for line-difference values.
SPREAD_BIN_WIDTH = 0.5
LD_BIN_WIDTH = 1.0


class UnresolvableSideError(ValueError):
    """Favorite/Underdog side requested on a pick-em game."""


class AtsOutcome(Enum):
    COVER = "cover"
    NO_COVER = "no_cover"
    PUSH = "push"


_MIRROR = {
    AtsOutcome.COVER: AtsOutcome.NO_COVER,
    AtsOutcome.NO_COVER: AtsOutcome.COVER,
    AtsOutcome.PUSH: AtsOutcome.PUSH,
}


def mov(game: GameRecord) -> int:
    """Margin of victory: winner score minus loser score (0 for a tie)."""
    return abs(game.home_score - game.away_score)


def line_difference(game: GameRecord) -> float:
    """Signed line error: favorite margin minus spread magnitude.

    Positive means the favorite was undervalued (or the underdog
    overvalued). On a pick-em the home team is taken as the favorite
    operand with spread 0, so the value is the home margin.
    """
    d = (game.home_score - game.away_score) - game.line_close
    return d if game.line_close >= 0 else -d


def line_movement(game: GameRecord) -> float:
    """Closing line minus opening line, in the signed home-positive frame."""
    return game.line_close - game.line_open


def movement_magnitude(game: GameRecord) -> float:
    """Absolute size of the open-to-close move.

    When the favorite flips, this equals the full swing through zero
    (e.g. home +6 open to home -7 close is a 13-point move).
    """
    return abs(game.line_close - game.line_open)


def ats_outcome(game: GameRecord, side: GameSide) -> AtsOutcome:
    """Settle a bet on ``side`` against the closing spread.

    Home/Away resolve on any game (a pick-em home bet wins iff the home
    team wins straight up). Favorite/Underdog require a non-zero line.
    """
    if side in (GameSide.FAVORITE, GameSide.UNDERDOG):
        if game.line_close == 0:
            raise UnresolvableSideError(f"no favorite on pick-em game {game.key}")
        ld = line_difference(game)
        fav = AtsOutcome.COVER if ld > 0 else AtsOutcome.PUSH if ld == 0 else AtsOutcome.NO_COVER
        return fav if side is GameSide.FAVORITE else _MIRROR[fav]
    # home covers iff it beats the spread from its own frame
    d = (game.home_score - game.away_score) - game.line_close
    home = AtsOutcome.COVER if d > 0 else AtsOutcome.PUSH if d == 0 else AtsOutcome.NO_COVER
    return home if side is GameSide.HOME else _MIRROR[home]


class FavoriteAtsSummary(NamedTuple):
    """Partition of non-pick-em games by the favorite's straight-up/ATS result."""

    covers: int
    wins_no_cover: int
    losses: int
    pushes: int


def favorite_ats_summary(dataset: Dataset) -> FavoriteAtsSummary:
    """Count favorite covers, straight-up wins without a cover, losses, pushes.

    Pick-ems are excluded; the four counts plus the pick-em count always
    sum to the dataset size. A straight-up tie counts with the losses
    (the favorite failed to win).
    """
    covers = wins_no_cover = losses = pushes = 0
    for g in dataset:
        fav = favorite_of(g)
        if fav is None:
            continue
        ld = line_difference(g)
        if ld > 0:
            covers += 1
        elif ld == 0:
            pushes += 1
        elif _favorite_won(g, fav.favorite):
            wins_no_cover += 1
        else:
            losses += 1
    return FavoriteAtsSummary(covers, wins_no_cover, losses, pushes)


def _favorite_won(game: GameRecord, favorite: str) -> bool:
    margin = game.home_margin if favorite == game.home else -game.home_margin
    return margin > 0


def pick_em_count(dataset: Dataset) -> int:
    return sum(1 for g in dataset if g.line_close == 0)


@dataclass(frozen=True)
class RecordCell:
    wins: int = 0
    losses: int = 0

    @property
    def win_ratio(self) -> float:
        """wins / decided; 0 when no decided games."""
        decided = self.wins + self.losses
        return self.wins / decided if decided else 0.0

    def __add__(self, other: "RecordCell") -> "RecordCell":
        return RecordCell(self.wins + other.wins, self.losses + other.losses)


@dataclass(frozen=True)
class HomeRecordRow:
    favorites: RecordCell
    underdogs: RecordCell
    pick_ems: RecordCell
    all_home: RecordCell


@dataclass(frozen=True)
class HomeRecordTable:
    """Per-season and total home ATS records, split by the home team's role."""

    by_season: Mapping[int, HomeRecordRow]
    total: HomeRecordRow

    def to_csv(self) -> str:
        header = ["season"]
        for col in ("favorites", "underdogs", "pick_ems", "all_home"):
            header += [f"{col}_wins", f"{col}_losses", f"{col}_ratio"]
        lines = [",".join(header)]
        rows = [(str(season), row) for season, row in self.by_season.items()]
        rows.append(("total", self.total))
        for label, row in rows:
            fields = [label]
            for cell in (row.favorites, row.underdogs, row.pick_ems, row.all_home):
                fields += [str(cell.wins), str(cell.losses), f"{cell.win_ratio:.3f}"]
            lines.append(",".join(fields))
        return "\n".join(lines) + "\n"


def home_record_table(dataset: Dataset) -> HomeRecordTable:
    """Home-side ATS wins/losses per season, split favorite/underdog/pick-em.

    Pushes are excluded from every cell; the pick-em column is the home
    team's straight-up record (ATS at spread 0 is the same thing).
    """
    acc: dict[int, dict[str, RecordCell]] = defaultdict(
        lambda: {"favorites": RecordCell(), "underdogs": RecordCell(), "pick_ems": RecordCell()}
    )
    for g in dataset:
        if g.line_close > 0:
            col = "favorites"
        elif g.line_close < 0:
            col = "underdogs"
        else:
            col = "pick_ems"
        outcome = ats_outcome(g, GameSide.HOME)
        if outcome is AtsOutcome.PUSH:
            continue
        won = outcome is AtsOutcome.COVER
        cell = acc[g.season][col]
        acc[g.season][col] = cell + RecordCell(int(won), int(not won))

    def make_row(cells: dict[str, RecordCell]) -> HomeRecordRow:
        all_home = cells["favorites"] + cells["underdogs"] + cells["pick_ems"]
        return HomeRecordRow(cells["favorites"], cells["underdogs"], cells["pick_ems"], all_home)

    by_season = {season: make_row(acc[season]) for season in sorted(acc)}
    total_cells = {
        col: sum((acc[s][col] for s in acc), RecordCell())
        for col in ("favorites", "underdogs", "pick_ems")
    }
    return HomeRecordTable(by_season, make_row(total_cells))


@dataclass(frozen=True)
class Histogram:
    """Fixed-width binning; the bin of value v is floor((v - origin)/bin_width)."""

    bin_width: float
    origin: float
    bins: Mapping[int, int]
    total: int

    def bin_center(self, index: int) -> float:
        return self.origin + (index + 0.5) * self.bin_width

    def sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self.bins.items())

    def to_csv(self) -> str:
        lines = ["bin_center,count"]
        for idx, count in self.sorted_items():
            lines.append(f"{self.bin_center(idx):g},{count}")
        return "\n".join(lines) + "\n"


def histogram(values: Sequence[float], bin_width: float, origin: float = 0.0) -> Histogram:
    """Bin values at the given width; empty input gives an empty histogram."""
    if bin_width <= 0:
        raise ValueError(f"bin_width must be positive, got {bin_width}")
    counts: dict[int, int] = defaultdict(int)
    for v in values:
        # tolerance of one part in 1e9 so grid-aligned values land in the
        # bin they are the left edge of despite float division error
        q = (v - origin) / bin_width
        counts[math.floor(q + 1e-9)] += 1
    return Histogram(bin_width, origin, dict(counts), len(values))


@dataclass(frozen=True)
class WeeklyMovement:
    """Share of games per week whose line moved at least ``threshold`` points."""

    threshold: float
    by_week: Mapping[int, float]
    week_mean: float
    week_std: float
    overall: float

    def to_csv(self) -> str:
        lines = ["week,fraction"]
        lines += [f"{week},{fraction:.6f}" for week, fraction in sorted(self.by_week.items())]
        return "\n".join(lines) + "\n"


def movement_fraction_by_week(dataset: Dataset, threshold: float) -> WeeklyMovement:
    """Fraction of each week's games with |open-to-close move| >= threshold.

    Also reports the mean and (sample) standard deviation of the weekly
    fractions and the overall game-weighted fraction.
    """
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    moved: dict[int, int] = defaultdict(int)
    totals: dict[int, int] = defaultdict(int)
    for g in dataset:
        totals[g.week] += 1
        if movement_magnitude(g) >= threshold:
            moved[g.week] += 1
    by_week = {w: moved[w] / totals[w] for w in sorted(totals)}
    fractions = list(by_week.values())
    mean = sum(fractions) / len(fractions) if fractions else 0.0
    if len(fractions) >= 2:
        var = sum((f - mean) ** 2 for f in fractions) / (len(fractions) - 1)
        std = math.sqrt(var)
    else:
        std = 0.0
    n_games = sum(totals.values())
    overall = sum(moved.values()) / n_games if n_games else 0.0
    return WeeklyMovement(threshold, by_week, mean, std, overall)


def movement_cumulative_counts(
    dataset: Dataset, thresholds: Iterable[float] | None = None
) -> dict[float, int]:
    """Games with |open-to-close move| <= t, for each requested threshold.

    Defaults to the half-point grid from 0 up to the largest move seen.
    """
    magnitudes = [movement_magnitude(g) for g in dataset]
    if thresholds is None:
        top = max(magnitudes, default=0.0)
        steps = int(math.ceil(top / 0.5)) + 1
        thresholds = [0.5 * k for k in range(steps)]
    return {t: sum(1 for m in magnitudes if m <= t) for t in thresholds}
