"""Walk through loading and validating a daily OHLCV price file.

Run from the repository root:

    python3 demos/01_load_prices.py
"""

from pathlib import Path

from trendcast.market_data import parse_ohlcv_csv, validate_series

DATA = Path(__file__).parent / "data"


def main():
    text = (DATA / "prices.csv").read_text()
    series = parse_ohlcv_csv(text, ticker="DEMO")
    print(f"loaded {len(series.bars)} bars for {series.ticker}")
    print(f"date range: {series.bars[0].date} .. {series.bars[-1].date}")

    # every bar must satisfy low <= open/close <= high and volume >= 0;
    # a clean report means the series is safe to hand to the indicators
    report = validate_series(series)
    print(f"validation: {'ok' if report.ok else 'FAILED'}")
    for v in report.violations:
        print(f"  {v.date}: {'; '.join(v.problems)}")

    first = series.bars[0]
    print("\nfirst bar:")
    for name in ("open", "high", "low", "close", "adj_close"):
        print(f"  {name:>9}: {getattr(first, name):10.4f}")
    print(f"  {'volume':>9}: {first.volume:10d}")


if __name__ == "__main__":
    main()
