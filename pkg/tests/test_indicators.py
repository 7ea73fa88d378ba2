from datetime import date, timedelta

import pytest

from synthetic import make_bar_series
from trendcast.errors import LabelUnavailableError, WarmupError
from trendcast.indicators import (
    Trend,
    build_indicator_frame,
    decode_trend,
    encode_trend,
    pct_k,
    rsi,
    sma,
    today_trend,
    tomorrow_trend,
)
from trendcast.market_data import Bar, BarSeries


def series_from_closes(closes, spread=0.0):
    """Bars with the given closes; open=close, high/low padded by spread."""
    bars = []
    d = date(2020, 1, 1)
    for c in closes:
        d += timedelta(days=1)
        bars.append(
            Bar(date=d, open=c, high=c + spread, low=c - spread, close=c, adj_close=c, volume=10)
        )
    return BarSeries("X", bars)


def test_today_trend_boundary():
    up = Bar(date(2020, 1, 2), 10.0, 11, 9, 10.0, 10, 1)  # close == open
    down = Bar(date(2020, 1, 2), 10.0, 11, 9, 9.99, 10, 1)
    assert today_trend(up) is Trend.UP
    assert today_trend(down) is Trend.DOWN


def test_tomorrow_trend_boundary():
    s = series_from_closes([10.0, 10.0, 9.5])
    assert tomorrow_trend(s, 0) is Trend.UP  # flat counts as up
    assert tomorrow_trend(s, 1) is Trend.DOWN
    with pytest.raises(LabelUnavailableError):
        tomorrow_trend(s, 2)


def test_trend_codes():
    assert encode_trend(Trend.UP) == 1
    assert encode_trend(Trend.DOWN) == 0
    assert decode_trend(1) is Trend.UP
    assert decode_trend(0) is Trend.DOWN
    with pytest.raises(ValueError):
        decode_trend(2)


def test_sma_small_window():
    s = series_from_closes([1.0, 2.0, 3.0, 4.0])
    assert sma(s, 2, n=3) == pytest.approx(2.0)
    assert sma(s, 3, n=3) == pytest.approx(3.0)


def test_sma_warmup():
    s = series_from_closes([1.0, 2.0, 3.0])
    with pytest.raises(WarmupError):
        sma(s, 1, n=3)


def test_rsi_known_value():
    # changes over the window at i=3, n=3: +2, -1, +4 -> AvgUp=2, AvgDown=1/3
    s = series_from_closes([5.0, 7.0, 6.0, 10.0])
    expected = 100.0 - 100.0 / (1.0 + 2.0 / (1.0 / 3.0))
    assert rsi(s, 3, n=3) == pytest.approx(expected)


def test_rsi_degenerate_windows():
    flat = series_from_closes([5.0] * 6)
    assert rsi(flat, 4, n=3) == 50.0
    rising = series_from_closes([1.0, 2.0, 3.0, 4.0, 5.0])
    assert rsi(rising, 4, n=3) == 100.0
    falling = series_from_closes([5.0, 4.0, 3.0, 2.0, 1.0])
    assert rsi(falling, 4, n=3) == 0.0


def test_rsi_needs_previous_close():
    s = series_from_closes([1.0, 2.0, 3.0, 4.0])
    with pytest.raises(WarmupError):
        rsi(s, 2, n=3)  # window would reach before bar 0
    assert 0.0 <= rsi(s, 3, n=3) <= 100.0


def test_pct_k_position_in_range():
    s = series_from_closes([2.0, 10.0, 6.0], spread=0.0)
    # window highs/lows span [2, 10]; close 6 sits at 50%
    assert pct_k(s, 2, n=3) == pytest.approx(50.0)


def test_pct_k_flat_window():
    s = series_from_closes([5.0, 5.0, 5.0])
    assert pct_k(s, 2, n=3) == 50.0


def test_frame_row_count(rng):
    s = make_bar_series(rng, 100)
    frame = build_indicator_frame(s, n=14)
    assert len(frame) == 100 - 14 - 1
    assert frame[0].date == s.bars[14].date
    assert frame[-1].date == s.bars[98].date


def test_frame_minimum_length(rng):
    s16 = make_bar_series(rng, 16)
    assert len(build_indicator_frame(s16, n=14)) == 1
    s15 = make_bar_series(rng, 15)
    with pytest.raises(WarmupError, match="16"):
        build_indicator_frame(s15, n=14)


def test_frame_ranges_and_window_override(rng):
    s = make_bar_series(rng, 60)
    for row in build_indicator_frame(s, n=5):
        assert 0.0 <= row.rsi <= 100.0
        assert 0.0 <= row.pct_k <= 100.0
        assert row.sma > 0
    assert len(build_indicator_frame(s, n=5)) == 60 - 5 - 1
