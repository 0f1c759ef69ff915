"""Command-line entry points.

Subcommands expose the pipeline stages: ``analyze`` runs the full
six-variable stationarity/cointegration report, ``adf``/``ols``/``coint``
run one stage on CSV columns, and ``synth`` writes a generated dataset.
Every flag can also come from a ``--config`` key=value file; flags win.

Exit codes: 0 success, 1 data or validation error, 2 numerical failure
(singular design matrix), 3 usage error.
"""

from __future__ import annotations

import argparse
import datetime
import sys
from dataclasses import replace
from typing import Callable, Sequence, TypeVar

import numpy as np

from .cointegration import engle_granger
from .dataio import (
    RunConfig,
    load_market_csv,
    load_series_csv,
    parse_config_file,
    write_market_csv,
)
from .errors import InvalidArgumentError, SingularMatrixError, SpeclossError
from .market import (
    MarketDay,
    UVariant,
    break_analysis,
    constancy_check,
    coverage_ratios,
    u_series,
)
from .ols import RegressionSpec, fit
from .report import (
    AnalysisReport,
    render_adf_block,
    render_analysis_csv,
    render_analysis_text,
    render_regression,
)
from .series import TimeSeries
from .synth import SynthConfig, gen_market_days
from .unit_root import AdfSpec, adf_test, stationarity_ladder

__all__ = ["main", "build_analysis"]

EXIT_OK = 0
EXIT_DATA = 1
EXIT_NUMERIC = 2
EXIT_USAGE = 3

_T = TypeVar("_T")


class _UsageError(Exception):
    """Bad flag combination discovered after config merging."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems exit with code 3
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_date(text: str) -> datetime.date:
    try:
        return datetime.date.fromisoformat(text)
    except ValueError:
        raise ValueError(f"not an ISO date: {text!r}") from None


def _resolve(
    args: argparse.Namespace,
    key: str,
    convert: Callable[[str], _T],
    default: _T,
) -> _T:
    """Flag value if given, else config-file value, else the default."""
    value = getattr(args, key.replace("-", "_"))
    if value is not None:
        return value
    config_map = args.config_map
    if key in config_map:
        try:
            return convert(config_map[key])
        except ValueError as exc:
            raise InvalidArgumentError(f"config key {key!r}: {exc}") from None
    return default


def series_from_days(days: Sequence[MarketDay]) -> dict[str, TimeSeries]:
    """The four raw regression variables as named series."""
    dates = tuple(day.date for day in days)
    return {
        "I": TimeSeries(dates, np.array([d.invest_i for d in days]),
                        unit_label="m. rubles", name="I"),
        "R": TimeSeries(dates, np.array([d.rate_r for d in days]),
                        unit_label="% p.a.", name="R"),
        "U_BIG_VOL": TimeSeries(dates, np.array([d.u_big_vol for d in days]),
                                unit_label="pieces", name="U_BIG_VOL"),
        "U_BIG_DEP": TimeSeries(dates, np.array([d.u_big_dep for d in days]),
                                unit_label="pieces", name="U_BIG_DEP"),
    }


def build_analysis(config: RunConfig) -> AnalysisReport:
    """Run the full pipeline for a RunConfig and assemble the report."""
    if (config.input_path is None) == (config.synth_seed is None):
        raise InvalidArgumentError(
            "exactly one of input_path and synth_seed must be set"
        )
    if config.input_path is not None:
        days = load_market_csv(config.input_path)
    else:
        days = gen_market_days(SynthConfig(seed=config.synth_seed))
    if config.i_scale != 1.0 or config.r_scale != 1.0:
        days = [
            replace(
                day,
                invest_i=day.invest_i * config.i_scale,
                rate_r=day.rate_r * config.r_scale,
            )
            for day in days
        ]
    u_vol = u_series(days, UVariant.BY_VOLUME)
    u_dep = u_series(days, UVariant.BY_DEPOSIT)
    raw = series_from_days(days)
    variables = {
        "U_SMALL_VOL": u_vol,
        "U_SMALL_DEP": u_dep,
        "I": raw["I"],
        "R": raw["R"],
        "U_BIG_VOL": raw["U_BIG_VOL"],
        "U_BIG_DEP": raw["U_BIG_DEP"],
    }
    adf_spec = AdfSpec(max_lag=config.max_lag)
    ladders = {
        name: stationarity_ladder(series, adf_spec)
        for name, series in variables.items()
    }
    coint_vol = engle_granger(
        RegressionSpec(dependent=u_vol, regressors=(raw["U_BIG_VOL"], raw["R"], raw["I"])),
        adf_spec=adf_spec,
        resid_name="RESID1",
    )
    coint_dep = engle_granger(
        RegressionSpec(dependent=u_dep, regressors=(raw["U_BIG_DEP"], raw["R"], raw["I"])),
        adf_spec=adf_spec,
        resid_name="RESID2",
    )
    have_prices = all(day.mean_price is not None for day in days)
    mean_price = (
        float(np.mean([day.mean_price for day in days])) if have_prices else None
    )
    constancy_vol = constancy_check(u_vol, mean_price) if have_prices else None
    constancy_dep = constancy_check(u_dep, mean_price) if have_prices else None
    coverage = coverage_ratios(list(days)) if have_prices else None
    return AnalysisReport(
        n_days=len(days),
        max_lag=config.max_lag,
        break_date=config.break_date,
        ladders=ladders,
        coint_by_volume=coint_vol,
        coint_by_deposit=coint_dep,
        constancy_vol=constancy_vol,
        constancy_dep=constancy_dep,
        break_vol=break_analysis(u_vol, config.break_date),
        break_dep=break_analysis(u_dep, config.break_date),
        coverage=coverage,
        mean_price=mean_price,
    )


def _load_config_map(args: argparse.Namespace) -> None:
    args.config_map = parse_config_file(args.config) if args.config else {}


def _require_series(series: Sequence[TimeSeries], name: str) -> TimeSeries:
    for s in series:
        if s.name == name:
            return s
    available = ", ".join(s.name for s in series)
    raise InvalidArgumentError(f"no column {name!r} in input (have: {available})")


def cmd_analyze(args: argparse.Namespace) -> int:
    _load_config_map(args)
    input_path = _resolve(args, "input", str, None)
    synth_seed = _resolve(args, "synth-seed", int, None)
    if (input_path is None) == (synth_seed is None):
        raise _UsageError("exactly one of --input and --synth-seed is required")
    config = RunConfig(
        input_path=input_path,
        synth_seed=synth_seed,
        i_scale=_resolve(args, "i-scale", float, 1.0),
        r_scale=_resolve(args, "r-scale", float, 1.0),
        break_date=_resolve(args, "break-date", _parse_date,
                            datetime.date(2012, 5, 10)),
        max_lag=_resolve(args, "maxlag", int, 5),
        lag_criterion=_resolve(args, "lag-criterion", str, "schwarz"),
        output_format=_resolve(args, "format", str, "text"),
    )
    report = build_analysis(config)
    if config.output_format == "csv":
        sys.stdout.write(render_analysis_csv(report))
    else:
        sys.stdout.write(render_analysis_text(report))
    return EXIT_OK


def cmd_adf(args: argparse.Namespace) -> int:
    _load_config_map(args)
    input_path = _resolve(args, "input", str, None)
    if input_path is None:
        raise _UsageError("--input is required")
    column = _resolve(args, "column", str, None)
    if column is None:
        raise _UsageError("--column is required")
    series = _require_series(load_series_csv(input_path), column)
    result = adf_test(series, AdfSpec(max_lag=_resolve(args, "maxlag", int, 5)))
    lines = render_adf_block(result)
    lines += ["", f"Verdict: {result.verdict.value}"]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _regression_spec_from_args(args: argparse.Namespace) -> RegressionSpec:
    input_path = _resolve(args, "input", str, None)
    if input_path is None:
        raise _UsageError("--input is required")
    dep_name = _resolve(args, "dep", str, None)
    regs_text = _resolve(args, "regressors", str, None)
    if dep_name is None or regs_text is None:
        raise _UsageError("--dep and --regressors are required")
    names = [name.strip() for name in regs_text.split(",") if name.strip()]
    if not names:
        raise _UsageError("--regressors must list at least one column")
    series = load_series_csv(input_path)
    return RegressionSpec(
        dependent=_require_series(series, dep_name),
        regressors=tuple(_require_series(series, name) for name in names),
    )


def cmd_ols(args: argparse.Namespace) -> int:
    _load_config_map(args)
    result = fit(_regression_spec_from_args(args))
    sys.stdout.write("\n".join(render_regression(result)) + "\n")
    return EXIT_OK


def cmd_coint(args: argparse.Namespace) -> int:
    _load_config_map(args)
    spec = _regression_spec_from_args(args)
    adf_spec = AdfSpec(max_lag=_resolve(args, "maxlag", int, 5))
    result = engle_granger(spec, adf_spec=adf_spec)
    lines = render_regression(result.stage1)
    lines += ["", "ADF test results for residuals:", ""]
    lines += render_adf_block(result.residual_test,
                              dm_critical=result.critical_values_dm)
    lines += ["", f"Verdict: {result.verdict.value}"]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    _load_config_map(args)
    out_path = _resolve(args, "out", str, None)
    if out_path is None:
        raise _UsageError("--out is required")
    config = SynthConfig(
        seed=_resolve(args, "seed", int, 0),
        n_days=_resolve(args, "days", int, 255),
        noise_scale=_resolve(args, "noise-scale", float, 1.0),
        break_factor=_resolve(args, "break-factor", float, 1.0),
        break_index=_resolve(args, "break-index", int, None),
    )
    days = gen_market_days(config)
    write_market_csv(days, out_path)
    sys.stdout.write(f"wrote {len(days)} days to {out_path}\n")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="specloss",
        description="Speculative-loss time-series analysis "
                    "(mean daily loss per stock, unit roots, cointegration).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: _Parser) -> None:
        p.add_argument("--config", help="key=value config file; flags win")

    p = sub.add_parser("analyze", help="full six-variable pipeline report")
    common(p)
    p.add_argument("--input", help="market CSV (date,i_mrub,r_pct,u_big_vol,u_big_dep[,mean_price_rub])")
    p.add_argument("--synth-seed", type=int, help="generate data with this seed instead of reading a file")
    p.add_argument("--break-date", type=_parse_date, help="first-approach break date (default 2012-05-10)")
    p.add_argument("--maxlag", type=int, help="ADF maximum lag (default 5)")
    p.add_argument("--format", choices=("text", "csv"), help="output format (default text)")
    p.add_argument("--i-scale", type=float, help="unit multiplier applied to I on load")
    p.add_argument("--r-scale", type=float, help="unit multiplier applied to R on load")
    p.add_argument("--lag-criterion", help="lag-selection criterion (only 'schwarz')")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("adf", help="ADF unit-root test on one CSV column")
    common(p)
    p.add_argument("--input", help="series CSV (date plus named columns)")
    p.add_argument("--column", help="column to test")
    p.add_argument("--maxlag", type=int, help="ADF maximum lag (default 5)")
    p.set_defaults(func=cmd_adf)

    p = sub.add_parser("ols", help="least-squares regression on CSV columns")
    common(p)
    p.add_argument("--input", help="series CSV (date plus named columns)")
    p.add_argument("--dep", help="dependent column")
    p.add_argument("--regressors", help="comma-separated regressor columns")
    p.set_defaults(func=cmd_ols)

    p = sub.add_parser("coint", help="Engle-Granger cointegration test")
    common(p)
    p.add_argument("--input", help="series CSV (date plus named columns)")
    p.add_argument("--dep", help="dependent column")
    p.add_argument("--regressors", help="comma-separated regressor columns")
    p.add_argument("--maxlag", type=int, help="residual ADF maximum lag (default 5)")
    p.set_defaults(func=cmd_coint)

    p = sub.add_parser("synth", help="write a generated market CSV")
    common(p)
    p.add_argument("--seed", type=int, help="generator seed (default 0)")
    p.add_argument("--days", type=int, help="number of trading days (default 255)")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--noise-scale", type=float, help="stationary-noise multiplier (default 1.0)")
    p.add_argument("--break-factor", type=float, help="multiply I from break-index on (default 1.0)")
    p.add_argument("--break-index", type=int, help="index of the I step change (default mid-sample)")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularMatrixError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SpeclossError, OSError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
