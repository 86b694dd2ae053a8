"""Betting-strategy backtests with exact risk/payout accounting.

Flat staking: every bet risks ``stake`` units to win ``win_payout`` units
(the customary book prices a $110 risk against a $100 payout). Pushes
refund the stake and are excluded from win-ratio denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Mapping, Sequence

from .dataset import Dataset, GameRecord, GameSide
from .metrics import AtsOutcome, ats_outcome

DEFAULT_STAKE = 110.0
DEFAULT_WIN_PAYOUT = 100.0


class NonPositiveStakeError(ValueError):
    pass


class NoDecidedBetsError(ValueError):
    pass


@dataclass(frozen=True)
class Strategy:
    """A named rule mapping a game to a bet side, or None to pass."""

    name: str
    selector: Callable[[GameRecord], GameSide | None]

    def __call__(self, game: GameRecord) -> GameSide | None:
        return self.selector(game)


def when(name: str, predicate: Callable[[GameRecord], bool], side: GameSide) -> Strategy:
    """Composable form: bet ``side`` on every game the predicate accepts."""
    return Strategy(name, lambda g: side if predicate(g) else None)


HOME_UNDERDOG = when("home-underdog", lambda g: g.line_close < 0, GameSide.HOME)
HOME_FAVORITE = when("home-favorite", lambda g: g.line_close > 0, GameSide.HOME)
ALL_HOME = Strategy("all-home", lambda g: GameSide.HOME)
ALL_FAVORITES = when("all-favorites", lambda g: g.line_close != 0, GameSide.FAVORITE)
ALL_UNDERDOGS = when("all-underdogs", lambda g: g.line_close != 0, GameSide.UNDERDOG)

BUILTIN_STRATEGIES: dict[str, Strategy] = {
    s.name: s for s in (HOME_UNDERDOG, HOME_FAVORITE, ALL_HOME, ALL_FAVORITES, ALL_UNDERDOGS)
}


def break_even_ratio(win_payout: float, stake: float) -> float:
    """Win proportion at which flat betting returns exactly zero.

    Solves win_payout * WR = stake * (1 - WR); at the customary 110/100
    pricing this is 110/210 = 52.38%.
    """
    if win_payout <= 0 or stake <= 0:
        raise NonPositiveStakeError(f"stake and payout must be positive, got {stake}, {win_payout}")
    return stake / (stake + win_payout)


@dataclass(frozen=True)
class Bet:
    game: GameRecord
    side: GameSide
    outcome: AtsOutcome
    cashflow: float


@dataclass(frozen=True)
class LedgerSummary:
    wins: int
    losses: int
    pushes: int
    win_ratio: float
    profit: float


@dataclass(frozen=True)
class StrategyLedger:
    """Bet-by-bet results plus totals and a per-season breakdown."""

    bets: tuple[Bet, ...]
    wins: int
    losses: int
    pushes: int
    win_ratio: float
    profit: float
    per_season: Mapping[int, LedgerSummary]

    def to_csv(self) -> str:
        lines = ["season,week,date,home,away,side,line_close,outcome,cashflow"]
        for b in self.bets:
            g = b.game
            lines.append(
                f"{g.season},{g.week},{g.date.isoformat()},{g.home},{g.away},"
                f"{b.side.value},{g.line_close:g},{b.outcome.value},{b.cashflow:g}"
            )
        return "\n".join(lines) + "\n"


def _summarize(bets: Sequence[Bet]) -> LedgerSummary:
    wins = sum(1 for b in bets if b.outcome is AtsOutcome.COVER)
    losses = sum(1 for b in bets if b.outcome is AtsOutcome.NO_COVER)
    pushes = len(bets) - wins - losses
    decided = wins + losses
    ratio = wins / decided if decided else 0.0
    profit = sum(b.cashflow for b in bets)
    return LedgerSummary(wins, losses, pushes, ratio, profit)


def run_strategy(
    dataset: Dataset,
    strategy: Strategy,
    stake: float = DEFAULT_STAKE,
    win_payout: float = DEFAULT_WIN_PAYOUT,
    line: str = "close",
) -> StrategyLedger:
    """Place one bet per accepted game and settle against the spread.

    ``line`` chooses which spread both selection and settlement use:
    "close" (default) or "open".
    """
    if stake <= 0 or win_payout <= 0:
        raise NonPositiveStakeError(f"stake and payout must be positive, got {stake}, {win_payout}")
    if line not in ("close", "open"):
        raise ValueError(f"line must be 'close' or 'open', got {line!r}")
    bets: list[Bet] = []
    for g in dataset:
        game = replace(g, line_close=g.line_open) if line == "open" else g
        side = strategy(game)
        if side is None:
            continue
        outcome = ats_outcome(game, side)
        if outcome is AtsOutcome.COVER:
            cash = win_payout
        elif outcome is AtsOutcome.NO_COVER:
            cash = -stake
        else:
            cash = 0.0
        bets.append(Bet(g, side, outcome, cash))
    total = _summarize(bets)
    seasons = sorted({b.game.season for b in bets})
    per_season = {s: _summarize([b for b in bets if b.game.season == s]) for s in seasons}
    return StrategyLedger(
        tuple(bets), total.wins, total.losses, total.pushes, total.win_ratio, total.profit, per_season
    )


def yearly_cover_series(dataset: Dataset, strategy: Strategy, line: str = "close") -> dict[int, float]:
    """Per-season win ratio (pushes excluded); seasons with no decided bet are absent."""
    ledger = run_strategy(dataset, strategy, line=line)
    return {
        season: summary.win_ratio
        for season, summary in ledger.per_season.items()
        if summary.wins + summary.losses > 0
    }


@dataclass(frozen=True)
class BreakevenComparison:
    margin: float
    profitable: bool


def compare_to_breakeven(
    ledger: StrategyLedger,
    stake: float = DEFAULT_STAKE,
    win_payout: float = DEFAULT_WIN_PAYOUT,
) -> BreakevenComparison:
    """How far the ledger's win ratio sits above or below break-even."""
    if ledger.wins + ledger.losses == 0:
        raise NoDecidedBetsError("ledger has no decided bets")
    margin = ledger.win_ratio - break_even_ratio(win_payout, stake)
    return BreakevenComparison(margin, margin > 0)
