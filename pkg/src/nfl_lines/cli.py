"""Command-line front end: reproducible reports, CSV exports, and SVG charts.

Exit codes: 0 success, 1 runtime/data error (bad rows, missing seasons),
2 usage error (unknown flags, bad ranges). Data goes to stdout or --out;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .backtest import (
    BUILTIN_STRATEGIES,
    break_even_ratio,
    compare_to_breakeven,
    run_strategy,
    yearly_cover_series,
)
from .dataset import Dataset, load_dataset
from .metrics import (
    favorite_ats_summary,
    histogram,
    line_difference,
    line_movement,
    movement_cumulative_counts,
    movement_fraction_by_week,
    pick_em_count,
)
from .prob_model import DEFAULT_SIGMA, WinModel
from .render import histogram_svg
from .simulator import (
    build_schedule,
    predict_division_winners,
    score_predictions,
    simulate,
    simulation_to_csv,
)
from .stats import chi_square_gof, moments, proportion_z

ENV_DATA_DIR = "NFL_LINES_DATA"

#: Published 2002-2011 values printed next to computed numbers where a
#: golden comparison exists.
REFERENCE_2002_2011 = {
    "games": 2560,
    "ld_mean": -0.009,
    "ld_std": 13.588,
    "home_su_rate": 0.57,
    "favorite_partition": (1194, 412, 853, 101),
    "home_underdog_ratio": 0.535,
    "break_even": 0.5238,
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    games_path: Path
    divisions_path: Path
    seasons: tuple[int, int] | None
    seed: int
    replications: int
    output_dir: Path | None
    format: str = "text"
    include_postseason: bool = False


def _parse_season_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad season range {text!r}; expected YYYY or YYYY..YYYY") from None
    if lo > hi:
        raise UsageError(f"empty season range {text!r}")
    return lo, hi


def _config(args: argparse.Namespace) -> RunConfig:
    data_dir = os.environ.get(ENV_DATA_DIR)
    games = args.games or (Path(data_dir) / "games.csv" if data_dir else None)
    divisions = args.divisions or (Path(data_dir) / "divisions.csv" if data_dir else None)
    if games is None or divisions is None:
        raise UsageError(
            f"--games/--divisions are required (or set ${ENV_DATA_DIR} to a directory "
            "holding games.csv and divisions.csv)"
        )
    seasons = _parse_season_range(args.seasons) if getattr(args, "seasons", None) else None
    out_dir = Path(args.output_dir) if getattr(args, "output_dir", None) else None
    return RunConfig(
        games_path=Path(games),
        divisions_path=Path(divisions),
        seasons=seasons,
        seed=getattr(args, "seed", 0),
        replications=getattr(args, "replications", 1000),
        output_dir=out_dir,
        format=getattr(args, "format", "text"),
        include_postseason=getattr(args, "include_postseason", False),
    )


def _load(config: RunConfig) -> Dataset:
    ds = load_dataset(config.games_path, config.divisions_path)
    return ds.filter(seasons=config.seasons, regular_season_only=not config.include_postseason)


def _emit(data: str, args: argparse.Namespace, default_name: str) -> None:
    """Write the data stream to --out, into --output-dir, or to stdout."""
    out = getattr(args, "out", None)
    out_dir = getattr(args, "output_dir", None)
    if out:
        path = Path(out)
        if out_dir and not path.is_absolute():
            path = Path(out_dir) / path
    elif out_dir:
        path = Path(out_dir) / default_name
    else:
        sys.stdout.write(data)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(data, encoding="utf-8", newline="")
    print(f"wrote {path}", file=sys.stderr)


def cmd_ingest_check(args: argparse.Namespace) -> int:
    config = _config(args)
    ds = _load(config)
    lines = [f"games: {len(ds)}", f"teams: {len(ds.divisions.teams)}", "divisions: 8x4 ok"]
    for season in ds.seasons():
        lines.append(f"  season {season}: {len(ds.filter(seasons=season))} games")
    _emit("\n".join(lines) + "\n", args, "ingest_check.txt")
    return 0


def cmd_summary(args: argparse.Namespace) -> int:
    config = _config(args)
    ds = _load(config)
    ref = REFERENCE_2002_2011
    lines = [f"games: {len(ds)} (reference 2002-2011: {ref['games']})"]
    for season in ds.seasons():
        lines.append(f"  season {season}: {len(ds.filter(seasons=season))}")
    if len(ds):
        su_home = sum(1 for g in ds if g.home_margin > 0)
        su_decided = sum(1 for g in ds if g.home_margin != 0)
        rate = su_home / su_decided if su_decided else 0.0
        lines.append(
            f"home straight-up win rate: {rate:.3f} (reference 2002-2011: {ref['home_su_rate']:.2f})"
        )
        part = favorite_ats_summary(ds)
        lines.append(
            "favorite ATS partition (cover/win-no-cover/loss/push): "
            f"{part.covers}/{part.wins_no_cover}/{part.losses}/{part.pushes} "
            f"+ {pick_em_count(ds)} pick-ems "
            f"(reference 2002-2011: {'/'.join(str(v) for v in ref['favorite_partition'])})"
        )
    ld = [line_difference(g) for g in ds]
    if len(ld) >= 2:
        m = moments(ld)
        lines.append(
            f"line difference: mean {m.mean:.3f}, std {m.std_dev:.3f}, n {m.n} "
            f"(reference 2002-2011: mean {ref['ld_mean']}, std {ref['ld_std']})"
        )
    else:
        lines.append("line difference: n/a (fewer than 2 games)")
    _emit("\n".join(lines) + "\n", args, "summary.txt")
    return 0


_HIST_DEFAULT_WIDTH = {"closing-line": 0.5, "ld": 1.0, "movement": 0.5}


def cmd_hist(args: argparse.Namespace) -> int:
    config = _config(args)
    ds = _load(config)
    metric = args.metric
    if metric == "closing-line":
        values = [g.line_close for g in ds]
    elif metric == "ld":
        values = [line_difference(g) for g in ds]
    else:
        values = [line_movement(g) for g in ds]
    width = args.bin_width if args.bin_width is not None else _HIST_DEFAULT_WIDTH[metric]
    # origin at -width/2 puts bin centers on multiples of the width
    hist = histogram(values, width, origin=-width / 2)
    if args.format == "svg":
        _emit(histogram_svg(hist, title=metric), args, f"hist_{metric}.svg")
    else:
        _emit(hist.to_csv(), args, f"hist_{metric}.csv")
    return 0


def cmd_gof(args: argparse.Namespace) -> int:
    config = _config(args)
    ds = _load(config)
    values = [line_difference(g) for g in ds]
    result = chi_square_gof(values, sigma=args.sigma, bin_width=args.bin_width, min_expected=args.min_expected)
    verdict = "rejected" if result.reject_at_05 else "not rejected"
    lines = [
        f"chi-squared GOF of line difference vs Normal(0, {args.sigma:g})",
        f"n: {len(values)}",
        f"statistic: {result.statistic:.3f}",
        f"degrees of freedom: {result.degrees_of_freedom} ({result.bins_used} bins)",
        f"critical value (alpha=0.05): {result.critical_value:.3f}",
        f"normality {verdict} at alpha=0.05",
    ]
    _emit("\n".join(lines) + "\n", args, "gof.txt")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _config(args)
    ds = _load(config)
    model = WinModel(sigma=args.sigma)
    schedule = build_schedule(ds, args.season, model)
    result = simulate(schedule, config.replications, config.seed, workers=args.workers)
    predictions = predict_division_winners(result, schedule, ds.divisions)
    correct, total = score_predictions(predictions)
    _emit(simulation_to_csv(result, schedule, ds.divisions), args, f"simulate_{args.season}.csv")
    print(f"division winners predicted: {correct}/{total}", file=sys.stderr)
    return 0


def cmd_predict_divisions(args: argparse.Namespace) -> int:
    config = _config(args)
    ds = _load(config)
    model = WinModel(sigma=args.sigma)
    lines = ["season,correct,total"]
    grand_correct = grand_total = 0
    for season in ds.seasons():
        schedule = build_schedule(ds, season, model)
        result = simulate(schedule, config.replications, config.seed, workers=args.workers)
        correct, total = score_predictions(predict_division_winners(result, schedule, ds.divisions))
        grand_correct += correct
        grand_total += total
        lines.append(f"{season},{correct},{total}")
    lines.append(f"all,{grand_correct},{grand_total}")
    _emit("\n".join(lines) + "\n", args, "predict_divisions.csv")
    return 0


def cmd_backtest(args: argparse.Namespace) -> int:
    config = _config(args)
    ds = _load(config)
    strategy = BUILTIN_STRATEGIES[args.strategy]
    ledger = run_strategy(ds, strategy, stake=args.stake, win_payout=args.payout, line=args.line)
    ref = REFERENCE_2002_2011
    lines = [
        f"strategy: {strategy.name} ({args.line} line)",
        f"bets: {len(ledger.bets)} (W {ledger.wins} / L {ledger.losses} / P {ledger.pushes})",
        f"win ratio: {ledger.win_ratio:.4f}",
        f"profit: {ledger.profit:g} (stake {args.stake:g} to win {args.payout:g})",
        f"break-even ratio: {break_even_ratio(args.payout, args.stake):.4f} "
        f"(reference: {ref['break_even']:.4f} at 110/100)",
    ]
    if ledger.wins + ledger.losses > 0:
        comparison = compare_to_breakeven(ledger, stake=args.stake, win_payout=args.payout)
        status = "profitable" if comparison.profitable else "not profitable"
        lines.append(f"margin vs break-even: {comparison.margin:+.4f} ({status})")
        z_even = proportion_z(ledger.wins, ledger.losses, 0.5)
        z_vig = proportion_z(ledger.wins, ledger.losses, break_even_ratio(args.payout, args.stake))
        lines.append(f"z vs 0.5: {z_even.z:+.3f}; z vs break-even: {z_vig.z:+.3f}")
    if strategy.name == "home-underdog":
        lines.append(f"reference 2002-2011 home-underdog ratio: {ref['home_underdog_ratio']:.3f}")
    series = yearly_cover_series(ds, strategy, line=args.line)
    for season, ratio in series.items():
        summary = ledger.per_season[season]
        lines.append(f"  {season}: {summary.wins}-{summary.losses} ({ratio:.3f})")
    if ledger.wins + ledger.losses > 0:
        mirror = _mirror_check(ds, args)
        if mirror is not None:
            lines.append(f"favorite/underdog mirror check: {'ok' if mirror else 'FAILED'}")
    _emit("\n".join(lines) + "\n", args, f"backtest_{strategy.name}.txt")
    return 0


def _mirror_check(ds: Dataset, args: argparse.Namespace) -> bool | None:
    """Favorite wins must equal underdog losses on the same games, and vice versa."""
    fav = run_strategy(ds, BUILTIN_STRATEGIES["all-favorites"], stake=args.stake, win_payout=args.payout, line=args.line)
    dog = run_strategy(ds, BUILTIN_STRATEGIES["all-underdogs"], stake=args.stake, win_payout=args.payout, line=args.line)
    if not fav.bets and not dog.bets:
        return None
    return fav.wins == dog.losses and fav.losses == dog.wins and fav.pushes == dog.pushes


def cmd_movement(args: argparse.Namespace) -> int:
    config = _config(args)
    ds = _load(config)
    lines = []
    for threshold in (1.0, 2.0):
        weekly = movement_fraction_by_week(ds, threshold)
        lines.append(
            f"movement >= {threshold:g}: overall {weekly.overall:.3f}, "
            f"weekly mean {weekly.week_mean:.3f}, weekly std {weekly.week_std:.3f}"
        )
        for week, fraction in weekly.by_week.items():
            lines.append(f"  week {week}: {fraction:.3f}")
    counts = movement_cumulative_counts(ds, thresholds=(0.5, 1.0, 1.5, 2.0))
    for t, c in counts.items():
        lines.append(f"movement <= {t:g}: {c} games")
    _emit("\n".join(lines) + "\n", args, "movement.txt")
    return 0


def _add_data_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--games", help=f"games CSV (default ${ENV_DATA_DIR}/games.csv)")
    sub.add_argument("--divisions", help=f"divisions CSV (default ${ENV_DATA_DIR}/divisions.csv)")
    sub.add_argument("--seasons", help="season or range, e.g. 2007 or 2002..2011")
    sub.add_argument("--include-postseason", action="store_true", help="keep weeks above 17")
    sub.add_argument("--out", help="write output to this file instead of stdout")
    sub.add_argument("--output-dir", help="directory for derived artifacts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfl-lines",
        description="Point-spread analytics: line metrics, win-probability model, "
        "season simulation, and betting backtests.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("ingest-check", help="parse and validate the input files")
    _add_data_args(p)
    p.set_defaults(func=cmd_ingest_check)

    p = subs.add_parser("summary", help="dataset counts, win rates, line-error moments")
    _add_data_args(p)
    p.set_defaults(func=cmd_summary)

    p = subs.add_parser("hist", help="histogram of a per-game metric (CSV or SVG)")
    _add_data_args(p)
    p.add_argument("--metric", choices=("closing-line", "ld", "movement"), required=True)
    p.add_argument("--bin-width", type=float, default=None)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.set_defaults(func=cmd_hist)

    p = subs.add_parser("gof", help="chi-squared fit of line error vs a zero-mean Gaussian")
    _add_data_args(p)
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    p.add_argument("--bin-width", type=float, default=2.0)
    p.add_argument("--min-expected", type=float, default=5.0)
    p.set_defaults(func=cmd_gof)

    p = subs.add_parser("simulate", help="Monte Carlo season simulation (CSV per team)")
    _add_data_args(p)
    p.add_argument("--season", type=int, required=True)
    p.add_argument("--replications", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("predict-divisions", help="division-winner accuracy per season")
    _add_data_args(p)
    p.add_argument("--replications", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    p.set_defaults(func=cmd_predict_divisions)

    p = subs.add_parser("backtest", help="evaluate a betting strategy against history")
    _add_data_args(p)
    p.add_argument("--strategy", choices=sorted(BUILTIN_STRATEGIES), required=True)
    p.add_argument("--stake", type=float, default=110.0)
    p.add_argument("--payout", type=float, default=100.0)
    p.add_argument("--line", choices=("close", "open"), default="close")
    p.set_defaults(func=cmd_backtest)

    p = subs.add_parser("movement", help="line-movement fractions by week and cumulative counts")
    _add_data_args(p)
    p.set_defaults(func=cmd_movement)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors with code 2
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
