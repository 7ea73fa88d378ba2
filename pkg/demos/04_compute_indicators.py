"""Compute SMA, RSI, and stochastic %K over the sample prices and show
why warm-up rows and the final unlabeled row are dropped.

Run from the repository root:

    python3 demos/04_compute_indicators.py
"""

from pathlib import Path

from trendcast.indicators import build_indicator_frame, pct_k, rsi, sma
from trendcast.market_data import parse_ohlcv_csv

DATA = Path(__file__).parent / "data"
WINDOW = 14


def main():
    series = parse_ohlcv_csv((DATA / "prices.csv").read_text(), ticker="DEMO")
    n_bars = len(series.bars)

    # single-point evaluation at the most recent fully-windowed index
    i = n_bars - 2
    print(f"indicators at {series.bars[i].date} (window={WINDOW}):")
    print(f"  SMA = {sma(series, i, WINDOW):9.4f}")
    print(f"  RSI = {rsi(series, i, WINDOW):9.4f}   (0..100)")
    print(f"  %K  = {pct_k(series, i, WINDOW):9.4f}   (0..100)")

    # the frame drops the first WINDOW bars (not enough history for RSI)
    # and the last bar (no next day to label against)
    frame = build_indicator_frame(series, n=WINDOW)
    print(f"\nframe: {n_bars} bars -> {len(frame)} rows "
          f"({WINDOW} warm-up + 1 unlabeled dropped)")

    print(f"\n{'date':<12} {'close':>9} {'sma':>9} {'rsi':>7} {'%K':>7} {'today':>6} {'next':>5}")
    for row in frame[:5]:
        print(
            f"{row.date.isoformat():<12} {row.close:9.4f} {row.sma:9.4f} "
            f"{row.rsi:7.3f} {row.pct_k:7.3f} {row.today_trend.value:>6} "
            f"{row.tomorrow_trend.value:>5}"
        )
    print("...")


if __name__ == "__main__":
    main()
