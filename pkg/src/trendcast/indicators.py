"""Trend labels and windowed technical indicators over a bar series.

All windows default to 14 trading days. Warm-up rows (where a window is
not yet filled) and the final row (whose next-day label does not exist)
are dropped by the frame builder, so a series of length L yields
L - window - 1 rows at the default settings.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import date as Date

from .errors import LabelUnavailableError, WarmupError
from .market_data import Bar, BarSeries

DEFAULT_WINDOW = 14


class Trend(enum.Enum):
    UP = "Up"
    DOWN = "Down"


def encode_trend(t: Trend) -> int:
    return 1 if t is Trend.UP else 0


def decode_trend(code: int) -> Trend:
    if code == 1:
        return Trend.UP
    if code == 0:
        return Trend.DOWN
    raise ValueError(f"trend code must be 0 or 1, got {code!r}")


@dataclass(frozen=True)
class IndicatorRow:
    date: Date
    high: float
    close: float
    volume: int
    sma: float
    rsi: float
    pct_k: float
    today_trend: Trend
    tomorrow_trend: Trend


def today_trend(b: Bar) -> Trend:
    """Up iff close - open >= 0."""
    return Trend.UP if b.close - b.open >= 0 else Trend.DOWN


def tomorrow_trend(s: BarSeries, i: int) -> Trend:
    """Up iff the next close is at or above today's close."""
    if i + 1 >= len(s.bars):
        raise LabelUnavailableError(f"bar {i} is the last bar, next-day label undefined")
    return Trend.UP if s.bars[i + 1].close - s.bars[i].close >= 0 else Trend.DOWN


def sma(s: BarSeries, i: int, n: int = DEFAULT_WINDOW) -> float:
    """Mean of the last n closes ending at index i."""
    if i < n - 1:
        raise WarmupError(f"sma({n}) needs index >= {n - 1}, got {i}")
    window = [s.bars[j].close for j in range(i - n + 1, i + 1)]
    return sum(window) / n


def rsi(s: BarSeries, i: int, n: int = DEFAULT_WINDOW) -> float:
    """Relative strength from mean gain vs mean loss over the last n
    close-to-close changes: 100 - 100 / (1 + AvgUp/AvgDown).

    All-flat window -> 50; no losses -> 100; no gains -> 0.
    """
    if i < n:
        raise WarmupError(f"rsi({n}) needs index >= {n}, got {i}")
    gains = 0.0
    losses = 0.0
    for t in range(i - n + 1, i + 1):
        change = s.bars[t].close - s.bars[t - 1].close
        if change > 0:
            gains += change
        else:
            losses -= change
    avg_up = gains / n
    avg_down = losses / n
    if avg_up == 0.0 and avg_down == 0.0:
        return 50.0
    if avg_down == 0.0:
        return 100.0
    if avg_up == 0.0:
        return 0.0
    return 100.0 - 100.0 / (1.0 + avg_up / avg_down)


def pct_k(s: BarSeries, i: int, n: int = DEFAULT_WINDOW) -> float:
    """Stochastic %K: position of the close within the window's
    high-low range, scaled to [0, 100]. Flat range -> 50.
    """
    if i < n - 1:
        raise WarmupError(f"pct_k({n}) needs index >= {n - 1}, got {i}")
    lows = [s.bars[j].low for j in range(i - n + 1, i + 1)]
    highs = [s.bars[j].high for j in range(i - n + 1, i + 1)]
    ll = min(lows)
    hh = max(highs)
    if hh == ll:
        return 50.0
    return 100.0 * (s.bars[i].close - ll) / (hh - ll)


def build_indicator_frame(s: BarSeries, n: int = DEFAULT_WINDOW) -> list[IndicatorRow]:
    """Compute every indicator for each index where all are defined and
    a next-day label exists, ordered by date.

    Requires len(s) >= n + 2; emits len(s) - n - 1 rows.
    """
    if len(s.bars) < n + 2:
        raise WarmupError(f"need at least {n + 2} bars for window {n}, got {len(s.bars)}")
    rows = []
    for i in range(n, len(s.bars) - 1):
        bar = s.bars[i]
        rows.append(
            IndicatorRow(
                date=bar.date,
                high=bar.high,
                close=bar.close,
                volume=bar.volume,
                sma=sma(s, i, n),
                rsi=rsi(s, i, n),
                pct_k=pct_k(s, i, n),
                today_trend=today_trend(bar),
                tomorrow_trend=tomorrow_trend(s, i),
            )
        )
    return rows
