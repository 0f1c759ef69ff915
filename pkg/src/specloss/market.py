"""The economic core: daily speculative-loss figures and their analyses.

A day's loss limit is L = I·R/365 (rate as a fraction), and the mean loss
per deal involving one stock is u = L/U, where U is either the stocks
involved in deals (by_volume) or the stocks deposited in the clearing
system (by_deposit).  Unit conventions are fixed here and nowhere else:
I arrives in million rubles, R in percent per annum (the central bank's
published form), and u is reported in kopecks per stock.  The formula
layer itself (:func:`daily_loss_limit`, :func:`mean_loss_per_stock`) is
unit-agnostic; the conversions live in :func:`u_series` and
:func:`loss_figures` only.
"""

from __future__ import annotations

import datetime
import enum
from dataclasses import dataclass

import numpy as np

from .errors import DivisionDomainError, InvalidArgumentError
from .series import TimeSeries, mean, stddev

__all__ = [
    "MarketDay",
    "UVariant",
    "LossFigures",
    "ConstancyResult",
    "BreakResult",
    "CoverageResult",
    "daily_loss_limit",
    "mean_loss_per_stock",
    "loss_figures",
    "u_series",
    "constancy_check",
    "break_analysis",
    "coverage_ratios",
]

# Unit regime: I in million rubles, R in percent per annum, u in kopecks.
MRUB_TO_RUB = 1e6
RUB_TO_KOPECKS = 100.0
MRUB_TO_KOPECKS = MRUB_TO_RUB * RUB_TO_KOPECKS
PCT_TO_FRACTION = 1.0 / 100.0
DAYS_PER_YEAR = 365.0


class UVariant(enum.Enum):
    """Which stock count serves as U in u = I·R/(365·U)."""

    BY_VOLUME = "by_volume"
    BY_DEPOSIT = "by_deposit"


@dataclass(frozen=True)
class MarketDay:
    """One trading day of exchange data.

    ``invest_i`` is the money deposited within the exchange system in
    million rubles; ``rate_r`` the one-day interbank rate in percent per
    annum; ``u_big_vol`` and ``u_big_dep`` count stocks (pieces) involved
    in deals and deposited in the clearing system; ``mean_price`` is the
    optional mean stock price in rubles used by the coverage ratios.
    """

    date: datetime.date
    invest_i: float
    rate_r: float
    u_big_vol: float
    u_big_dep: float
    mean_price: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.date, datetime.date) or isinstance(
            self.date, datetime.datetime
        ):
            raise InvalidArgumentError(f"date must be datetime.date, got {self.date!r}")
        for label, value in (
            ("invest_i", self.invest_i),
            ("rate_r", self.rate_r),
            ("u_big_vol", self.u_big_vol),
            ("u_big_dep", self.u_big_dep),
        ):
            if not np.isfinite(value) or value < 0:
                raise InvalidArgumentError(
                    f"{label} must be finite and >= 0 on {self.date}, got {value}"
                )
        if self.u_big_vol > self.u_big_dep:
            raise InvalidArgumentError(
                f"u_big_vol ({self.u_big_vol}) exceeds u_big_dep "
                f"({self.u_big_dep}) on {self.date}; traded stocks must be "
                f"a subset of deposited stocks"
            )
        if self.mean_price is not None and not (
            np.isfinite(self.mean_price) and self.mean_price > 0
        ):
            raise InvalidArgumentError(
                f"mean_price must be positive when given on {self.date}, "
                f"got {self.mean_price}"
            )

    def u_big(self, variant: UVariant) -> float:
        return self.u_big_vol if variant is UVariant.BY_VOLUME else self.u_big_dep


@dataclass(frozen=True)
class LossFigures:
    """L and u for one day: rubles for L, kopecks per stock for u."""

    l_daily: float
    u_small: float
    variant: UVariant


@dataclass(frozen=True)
class ConstancyResult:
    mean: float
    stddev: float
    threshold: float
    passes: bool


@dataclass(frozen=True)
class BreakResult:
    mean_before: float
    mean_after: float
    ratio: float


@dataclass(frozen=True)
class CoverageResult:
    stock_utilization: float
    money_coverage: float


def daily_loss_limit(invest_i: float, rate_r_fraction: float) -> float:
    """L = I·R/365 with the rate as a fraction; L shares I's money unit."""
    if invest_i < 0 or rate_r_fraction < 0:
        raise InvalidArgumentError(
            f"inputs must be >= 0, got I={invest_i}, R={rate_r_fraction}"
        )
    return invest_i * rate_r_fraction / DAYS_PER_YEAR


def mean_loss_per_stock(
    invest_i: float, rate_r_fraction: float, u_big: float
) -> float:
    """u = I·R/(365·U), exactly daily_loss_limit(I, R)/U."""
    if u_big < 0:
        raise InvalidArgumentError(f"u_big must be >= 0, got {u_big}")
    if u_big == 0:
        raise DivisionDomainError("u_big is zero; mean loss per stock is undefined")
    return daily_loss_limit(invest_i, rate_r_fraction) / u_big


def loss_figures(day: MarketDay, variant: UVariant) -> LossFigures:
    """A single day's L (rubles) and u (kopecks per stock)."""
    rate_fraction = day.rate_r * PCT_TO_FRACTION
    invest_rub = day.invest_i * MRUB_TO_RUB
    l_daily = daily_loss_limit(invest_rub, rate_fraction)
    u_big = day.u_big(variant)
    if u_big == 0:
        raise DivisionDomainError(f"zero U ({variant.value}) on {day.date}")
    u_small = l_daily * RUB_TO_KOPECKS / u_big
    return LossFigures(l_daily=l_daily, u_small=u_small, variant=variant)


def u_series(days: list[MarketDay], variant: UVariant) -> TimeSeries:
    """Daily u in kopecks per stock for the chosen U variant.

    The unit chain: I in million rubles times the million-rubles-to-
    kopecks factor 1e8, R percent to fraction, all over 365·U.
    """
    if not days:
        raise InvalidArgumentError("u_series needs at least one day")
    values = []
    for day in days:
        u_big = day.u_big(variant)
        if u_big == 0:
            raise DivisionDomainError(f"zero U ({variant.value}) on {day.date}")
        values.append(
            mean_loss_per_stock(
                day.invest_i * MRUB_TO_KOPECKS, day.rate_r * PCT_TO_FRACTION, u_big
            )
        )
    name = "U_SMALL_VOL" if variant is UVariant.BY_VOLUME else "U_SMALL_DEP"
    return TimeSeries(
        dates=tuple(day.date for day in days),
        values=np.array(values),
        unit_label="kopecks",
        name=name,
    )


def constancy_check(u: TimeSeries, mean_price: float) -> ConstancyResult:
    """Is the u series constant in the loose sense of the first approach?

    Passes when the sample standard deviation stays strictly below one
    hundredth of the mean stock price, both in kopecks (``mean_price``
    arrives in rubles).
    """
    if mean_price <= 0:
        raise InvalidArgumentError(f"mean_price must be positive, got {mean_price}")
    sd = stddev(u)
    threshold = mean_price * RUB_TO_KOPECKS / 100.0
    return ConstancyResult(
        mean=mean(u), stddev=sd, threshold=threshold, passes=sd < threshold
    )


def break_analysis(u: TimeSeries, break_date: datetime.date) -> BreakResult:
    """Compare mean u before and from ``break_date`` on.

    The break date itself belongs to the "after" segment; both segments
    need at least two observations.
    """
    n_before = sum(1 for d in u.dates if d < break_date)
    n_after = len(u) - n_before
    if n_before < 2 or n_after < 2:
        raise InvalidArgumentError(
            f"break date {break_date} leaves {n_before} observations before "
            f"and {n_after} after; need at least 2 on each side"
        )
    mean_before = float(np.mean(u.values[:n_before]))
    mean_after = float(np.mean(u.values[n_before:]))
    return BreakResult(
        mean_before=mean_before,
        mean_after=mean_after,
        ratio=mean_after / mean_before,
    )


def coverage_ratios(days: list[MarketDay]) -> CoverageResult:
    """Average stock utilization and money coverage across days.

    stock_utilization averages u_big_vol/u_big_dep; money_coverage
    averages deposited money over the market value of deposited stocks
    (rubles per ruble).  Every day must carry a mean price.
    """
    if not days:
        raise InvalidArgumentError("coverage_ratios needs at least one day")
    util = []
    cover = []
    for day in days:
        if day.u_big_dep == 0:
            raise DivisionDomainError(f"zero u_big_dep on {day.date}")
        if day.mean_price is None:
            raise InvalidArgumentError(f"mean_price missing on {day.date}")
        util.append(day.u_big_vol / day.u_big_dep)
        cover.append(
            day.invest_i * MRUB_TO_RUB / (day.u_big_dep * day.mean_price)
        )
    return CoverageResult(
        stock_utilization=float(np.mean(util)),
        money_coverage=float(np.mean(cover)),
    )
