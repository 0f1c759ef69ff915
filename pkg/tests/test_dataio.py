"""Tests for CSV ingestion, writing, and config files."""

import datetime

import numpy as np
import pytest

from specloss.dataio import (
    RunConfig,
    load_market_csv,
    load_series_csv,
    parse_config_file,
    write_market_csv,
    write_series_csv,
)
from specloss.errors import (
    CsvParseError,
    CsvSchemaError,
    CsvValidationError,
    InvalidArgumentError,
    UnsupportedConfigError,
)
from specloss.market import MarketDay
from specloss.series import TimeSeries, trading_dates
from specloss.synth import SynthConfig, gen_market_days, gen_random_walk


HEADER = "date,i_mrub,r_pct,u_big_vol,u_big_dep"


def write_text(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_market_round_trip_is_exact(tmp_path):
    days = gen_market_days(SynthConfig(seed=17, n_days=60))
    path = str(tmp_path / "market.csv")
    write_market_csv(days, path)
    assert load_market_csv(path) == days


def test_market_round_trip_without_price(tmp_path):
    days = [
        MarketDay(date=d, invest_i=float(i + 1), rate_r=5.5,
                  u_big_vol=1e5, u_big_dep=1e6)
        for i, d in enumerate(trading_dates(5))
    ]
    path = str(tmp_path / "noprice.csv")
    write_market_csv(days, path)
    first_line = open(path, encoding="utf-8").readline().strip()
    assert first_line == HEADER
    assert load_market_csv(path) == days


def test_market_round_trip_with_gaps_in_price(tmp_path):
    dates = trading_dates(4)
    days = [
        MarketDay(date=dates[i], invest_i=1.0, rate_r=1.0, u_big_vol=1.0,
                  u_big_dep=2.0, mean_price=100.0 if i % 2 else None)
        for i in range(4)
    ]
    path = str(tmp_path / "gaps.csv")
    write_market_csv(days, path)
    loaded = load_market_csv(path)
    assert [day.mean_price for day in loaded] == [None, 100.0, None, 100.0]


def test_market_rows_sorted_on_load(tmp_path):
    days = gen_market_days(SynthConfig(seed=18, n_days=40))
    path = str(tmp_path / "shuffled.csv")
    write_market_csv(days, path)
    lines = open(path, encoding="utf-8").read().splitlines()
    rng = np.random.default_rng(0)
    body = lines[1:]
    rng.shuffle(body)
    write_text(tmp_path / "shuffled.csv", "\n".join([lines[0]] + body) + "\n")
    assert load_market_csv(path) == days


def test_market_schema_errors(tmp_path):
    missing = write_text(tmp_path / "m.csv",
                         "date,i_mrub,r_pct,u_big_vol\n2012-01-03,1,1,1\n")
    with pytest.raises(CsvSchemaError, match="'u_big_dep' at position 5"):
        load_market_csv(missing)
    swapped = write_text(tmp_path / "s.csv",
                         "date,r_pct,i_mrub,u_big_vol,u_big_dep\n")
    with pytest.raises(CsvSchemaError, match="'i_mrub'"):
        load_market_csv(swapped)
    # A 7-column header never matches: the optional price column is only
    # recognized when the header has exactly 6 columns.
    extra = write_text(
        tmp_path / "e.csv",
        HEADER + ",mean_price_rub,bonus\n",
    )
    with pytest.raises(CsvSchemaError, match="extra column 'mean_price_rub'"):
        load_market_csv(extra)
    wrong_sixth = write_text(tmp_path / "w.csv", HEADER + ",bonus\n")
    with pytest.raises(CsvSchemaError,
                       match="'mean_price_rub' at position 6, got 'bonus'"):
        load_market_csv(wrong_sixth)
    empty = write_text(tmp_path / "empty.csv", "")
    with pytest.raises(CsvSchemaError, match="empty"):
        load_market_csv(empty)


def test_market_parse_errors_carry_line_numbers(tmp_path):
    bad_number = write_text(
        tmp_path / "n.csv",
        HEADER + "\n2012-01-03,1,1,1,2\n2012-01-04,1,oops,1,2\n",
    )
    with pytest.raises(CsvParseError) as exc_info:
        load_market_csv(bad_number)
    assert exc_info.value.line == 3
    bad_date = write_text(tmp_path / "d.csv", HEADER + "\nJan 3,1,1,1,2\n")
    with pytest.raises(CsvParseError) as exc_info:
        load_market_csv(bad_date)
    assert exc_info.value.line == 2
    short_row = write_text(tmp_path / "r.csv", HEADER + "\n2012-01-03,1,1,1\n")
    with pytest.raises(CsvParseError, match="fields"):
        load_market_csv(short_row)


def test_market_validation_errors_carry_dates(tmp_path):
    dup = write_text(
        tmp_path / "dup.csv",
        HEADER + "\n2012-01-03,1,1,1,2\n2012-01-03,2,2,2,3\n",
    )
    with pytest.raises(CsvValidationError) as exc_info:
        load_market_csv(dup)
    assert exc_info.value.date == datetime.date(2012, 1, 3)
    bad_day = write_text(
        tmp_path / "bad.csv",
        HEADER + "\n2012-01-03,1,1,9,2\n",
    )
    with pytest.raises(CsvValidationError, match="subset") as exc_info:
        load_market_csv(bad_day)
    assert exc_info.value.date == datetime.date(2012, 1, 3)


def test_market_blank_lines_ignored(tmp_path):
    path = write_text(
        tmp_path / "blank.csv",
        HEADER + "\n\n2012-01-03,1,1,1,2\n\n",
    )
    assert len(load_market_csv(path)) == 1


def test_series_round_trip_is_exact(tmp_path):
    a = gen_random_walk(1, 30, label="SER_A").with_name("A")
    b = gen_random_walk(2, 30, label="SER_B").with_name("B")
    path = str(tmp_path / "series.csv")
    write_series_csv([a, b], path)
    loaded = load_series_csv(path)
    assert [s.name for s in loaded] == ["A", "B"]
    assert loaded[0].dates == a.dates
    assert np.array_equal(loaded[0].values, a.values)
    assert np.array_equal(loaded[1].values, b.values)


def test_series_write_rejects_bad_input(tmp_path):
    a = gen_random_walk(1, 10, label="W_A").with_name("A")
    b = gen_random_walk(1, 12, label="W_B").with_name("B")
    path = str(tmp_path / "x.csv")
    with pytest.raises(InvalidArgumentError, match="aligned"):
        write_series_csv([a, b], path)
    with pytest.raises(InvalidArgumentError, match="unique"):
        write_series_csv([a, a], path)
    with pytest.raises(InvalidArgumentError):
        write_series_csv([], path)


def test_series_load_errors(tmp_path):
    not_date = write_text(tmp_path / "a.csv", "day,x\n2012-01-03,1\n")
    with pytest.raises(CsvSchemaError, match="'date'"):
        load_series_csv(not_date)
    no_cols = write_text(tmp_path / "b.csv", "date\n2012-01-03\n")
    with pytest.raises(CsvSchemaError, match="no series columns"):
        load_series_csv(no_cols)
    dup_col = write_text(tmp_path / "c.csv", "date,x,x\n")
    with pytest.raises(CsvSchemaError, match="duplicate"):
        load_series_csv(dup_col)
    dup_date = write_text(
        tmp_path / "d.csv", "date,x\n2012-01-03,1\n2012-01-03,2\n"
    )
    with pytest.raises(CsvValidationError):
        load_series_csv(dup_date)


def test_series_load_sorts_rows(tmp_path):
    path = write_text(
        tmp_path / "sorted.csv",
        "date,x\n2012-01-05,3\n2012-01-03,1\n2012-01-04,2\n",
    )
    series = load_series_csv(path)[0]
    assert list(series.values) == [1.0, 2.0, 3.0]
    assert series.dates == tuple(
        datetime.date(2012, 1, d) for d in (3, 4, 5)
    )


def test_parse_config_file(tmp_path):
    path = write_text(
        tmp_path / "run.cfg",
        "# comment line\n"
        "synth-seed = 42\n"
        "\n"
        "format=csv   # trailing comment\n"
        "note = a=b\n",
    )
    config = parse_config_file(path)
    assert config == {"synth-seed": "42", "format": "csv", "note": "a=b"}


def test_parse_config_file_errors(tmp_path):
    no_eq = write_text(tmp_path / "a.cfg", "just a line\n")
    with pytest.raises(CsvParseError) as exc_info:
        parse_config_file(no_eq)
    assert exc_info.value.line == 1
    dup = write_text(tmp_path / "b.cfg", "k = 1\nk = 2\n")
    with pytest.raises(CsvParseError, match="duplicate"):
        parse_config_file(dup)
    empty_key = write_text(tmp_path / "c.cfg", " = 3\n")
    with pytest.raises(CsvParseError, match="empty key"):
        parse_config_file(empty_key)


def test_run_config_validation():
    RunConfig(input_path=None, synth_seed=1)
    with pytest.raises(UnsupportedConfigError):
        RunConfig(input_path=None, synth_seed=1, lag_criterion="akaike")
    with pytest.raises(InvalidArgumentError):
        RunConfig(input_path=None, synth_seed=1, output_format="xml")
    with pytest.raises(InvalidArgumentError):
        RunConfig(input_path=None, synth_seed=1, max_lag=-2)
