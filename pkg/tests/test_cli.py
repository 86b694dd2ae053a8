import pytest

from nfl_lines.cli import main

from conftest import DIVISIONS, FIXTURE_GAMES

DATA_ARGS = ["--games", str(FIXTURE_GAMES), "--divisions", str(DIVISIONS)]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ingest_check(capsys):
    code, out, err = run(capsys, "ingest-check", *DATA_ARGS)
    assert code == 0
    assert "games: 512" in out


def test_summary(capsys):
    code, out, err = run(capsys, "summary", *DATA_ARGS)
    assert code == 0
    assert "games: 512" in out
    assert "line difference" in out
    assert "reference 2002-2011" in out


def test_summary_single_season(capsys):
    code, out, _ = run(capsys, "summary", *DATA_ARGS, "--seasons", "2003")
    assert code == 0
    assert "games: 256" in out


def test_summary_empty_file(tmp_path, capsys):
    empty = tmp_path / "games.csv"
    empty.write_text("season,week,date,home,away,home_score,away_score,line_open,line_close\n")
    code, out, _ = run(capsys, "summary", "--games", str(empty), "--divisions", str(DIVISIONS))
    assert code == 0
    assert "games: 0" in out


def test_unknown_flag_exits_2(capsys):
    code, _, err = run(capsys, "summary", "--no-such-flag")
    assert code == 2


def test_unknown_subcommand_exits_2(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_unknown_strategy_exits_2(capsys):
    code, _, _ = run(capsys, "backtest", *DATA_ARGS, "--strategy", "martingale")
    assert code == 2


def test_unknown_metric_exits_2(capsys):
    code, _, _ = run(capsys, "hist", *DATA_ARGS, "--metric", "temperature")
    assert code == 2


def test_malformed_row_exits_1_with_row_number(tmp_path, capsys):
    bad = tmp_path / "games.csv"
    bad.write_text(
        "season,week,date,home,away,home_score,away_score,line_open,line_close\n"
        "2002,1,2002-09-08,NE,NYJ,21,14,3,3\n"
        "2002,two,2002-09-08,MIA,BUF,10,20,1,1\n"
    )
    code, out, err = run(capsys, "summary", "--games", str(bad), "--divisions", str(DIVISIONS))
    assert code == 1
    assert "row 3" in err
    assert out == ""


def test_quarter_point_spread_exits_1(tmp_path, capsys):
    bad = tmp_path / "games.csv"
    bad.write_text(
        "season,week,date,home,away,home_score,away_score,line_open,line_close\n"
        "2002,1,2002-09-08,NE,NYJ,21,14,3,3.25\n"
    )
    code, _, err = run(capsys, "summary", "--games", str(bad), "--divisions", str(DIVISIONS))
    assert code == 1
    assert "row 2" in err


def test_missing_files_usage_error(capsys, monkeypatch):
    monkeypatch.delenv("NFL_LINES_DATA", raising=False)
    code, _, err = run(capsys, "summary")
    assert code == 2
    assert "--games" in err


def test_env_var_data_dir(capsys, tmp_path, monkeypatch):
    data_dir = tmp_path / "data"
    data_dir.mkdir()
    (data_dir / "games.csv").write_text(FIXTURE_GAMES.read_text())
    (data_dir / "divisions.csv").write_text(DIVISIONS.read_text())
    monkeypatch.setenv("NFL_LINES_DATA", str(data_dir))
    code, out, _ = run(capsys, "ingest-check")
    assert code == 0
    assert "games: 512" in out


def test_hist_csv_deterministic(capsys):
    code, first, _ = run(capsys, "hist", *DATA_ARGS, "--metric", "closing-line")
    code2, second, _ = run(capsys, "hist", *DATA_ARGS, "--metric", "closing-line")
    assert code == code2 == 0
    assert first == second
    assert first.startswith("bin_center,count\n")


def test_hist_svg(capsys):
    code, out, _ = run(capsys, "hist", *DATA_ARGS, "--metric", "ld", "--format", "svg")
    assert code == 0
    assert out.startswith("<svg")
    assert out.rstrip().endswith("</svg>")


def test_hist_out_file(tmp_path, capsys):
    target = tmp_path / "hist.csv"
    code, out, err = run(capsys, "hist", *DATA_ARGS, "--metric", "movement", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("bin_center,count\n")


def test_output_dir_default_names(tmp_path, capsys):
    code, out, _ = run(
        capsys, "simulate", *DATA_ARGS, "--season", "2003", "--replications", "40",
        "--output-dir", str(tmp_path),
    )
    assert code == 0
    assert out == ""
    assert (tmp_path / "simulate_2003.csv").read_text().startswith("team,conference,")


def test_gof_report(capsys):
    code, out, _ = run(capsys, "gof", *DATA_ARGS)
    assert code == 0
    assert "statistic" in out
    assert "alpha=0.05" in out


def test_simulate_deterministic_and_worker_invariant(capsys):
    base = ["simulate", *DATA_ARGS, "--season", "2002", "--replications", "150", "--seed", "99"]
    code, first, err = run(capsys, *base)
    assert code == 0
    assert "division winners predicted" in err
    _, second, _ = run(capsys, *base)
    _, threaded, _ = run(capsys, *base, "--workers", "4")
    assert first == second == threaded
    assert first.startswith("team,conference,division,")


def test_simulate_missing_season_exits_1(capsys):
    code, _, err = run(capsys, "simulate", *DATA_ARGS, "--season", "1999")
    assert code == 1
    assert "1999" in err


def test_predict_divisions(capsys):
    code, out, _ = run(
        capsys, "predict-divisions", *DATA_ARGS, "--replications", "60", "--seed", "5"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "season,correct,total"
    assert lines[-1].startswith("all,")


def test_backtest_report(capsys):
    code, out, _ = run(capsys, "backtest", *DATA_ARGS, "--strategy", "home-underdog")
    assert code == 0
    assert "win ratio" in out
    assert "break-even ratio: 0.5238" in out
    assert "mirror check: ok" in out


def test_movement_report(capsys):
    code, out, _ = run(capsys, "movement", *DATA_ARGS)
    assert code == 0
    assert "movement >= 1" in out
    assert "movement <= 0.5" in out


def test_full_pipeline(tmp_path, capsys):
    for argv in (
        ["summary", *DATA_ARGS],
        ["hist", *DATA_ARGS, "--metric", "ld"],
        ["simulate", *DATA_ARGS, "--season", "2002", "--replications", "50"],
        ["backtest", *DATA_ARGS, "--strategy", "all-favorites"],
    ):
        assert main(argv) == 0
        capsys.readouterr()
