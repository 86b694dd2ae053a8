"""Backtest flat-stake spread strategies against the fixture history.

A bettor risks 110 units to win 100, so the book's cut means breaking even
takes a 52.38% win rate, not 50%. Each built-in strategy is settled
bet-by-bet at the closing line (or the opening line, for comparison).
"""

from pathlib import Path

from nfl_lines.backtest import (
    BUILTIN_STRATEGIES,
    break_even_ratio,
    compare_to_breakeven,
    run_strategy,
    yearly_cover_series,
)
from nfl_lines.dataset import load_dataset

DATA = Path(__file__).resolve().parents[1] / "data"

ds = load_dataset(DATA / "fixtures" / "games.csv", DATA / "divisions.csv")
ds = ds.filter(regular_season_only=True)

ber = break_even_ratio(100.0, 110.0)
print(f"break-even win ratio at 110-to-100 pricing: {ber:.4f}\n")

print(f"{'strategy':<16}{'bets':>6}{'W':>6}{'L':>6}{'P':>5}{'ratio':>8}{'profit':>10}")
for name, strategy in sorted(BUILTIN_STRATEGIES.items()):
    ledger = run_strategy(ds, strategy)
    print(
        f"{name:<16}{len(ledger.bets):>6}{ledger.wins:>6}{ledger.losses:>6}"
        f"{ledger.pushes:>5}{ledger.win_ratio:>8.3f}{ledger.profit:>10.0f}"
    )

# year by year for the classic home-underdog angle
strategy = BUILTIN_STRATEGIES["home-underdog"]
ledger = run_strategy(ds, strategy)
comparison = compare_to_breakeven(ledger)
print(f"\nhome-underdog margin vs break-even: {comparison.margin:+.4f}")
print("yearly cover rates:")
for season, ratio in yearly_cover_series(ds, strategy).items():
    print(f"  {season}: {ratio:.3f}")

# the opening line tells almost the same story
open_ledger = run_strategy(ds, strategy, line="open")
print(
    f"\nsettled at the opening line instead: {open_ledger.wins}-{open_ledger.losses}"
    f" ({open_ledger.win_ratio:.3f}) vs {ledger.wins}-{ledger.losses} ({ledger.win_ratio:.3f})"
)
