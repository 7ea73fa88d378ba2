"""Ingest and validate daily OHLCV price series from CSV files.

The input format is the common daily-history export: a header row with
Date, Open, High, Low, Close, Adj Close, Volume (any order, any case)
followed by one bar per row, dates in YYYY-MM-DD.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import date as Date

from .errors import FormatError, ValidationError

CSV_COLUMNS = ("Date", "Open", "High", "Low", "Close", "Adj Close", "Volume")


@dataclass(frozen=True)
class Bar:
    """One day of OHLCV data for a ticker."""

    date: Date
    open: float
    high: float
    low: float
    close: float
    adj_close: float
    volume: int


@dataclass
class BarSeries:
    """Ordered daily bars for one ticker, dates strictly increasing."""

    ticker: str
    bars: list[Bar] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.bars)

    def closes(self) -> list[float]:
        return [b.close for b in self.bars]


@dataclass
class Violation:
    """One invalid bar and the rules it breaks."""

    date: Date
    problems: list[str]


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def parse_ohlcv_csv(text: str, ticker: str) -> BarSeries:
    """Parse a CSV document into a BarSeries sorted by date.

    Raises FormatError for a missing column or an unparseable cell
    (the message names the column or the file line), and
    ValidationError for a duplicate date.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("document is empty, expected a header row")

    positions: dict[str, int] = {}
    for i, name in enumerate(header):
        positions.setdefault(name.strip().lower(), i)
    missing = [c for c in CSV_COLUMNS if c.lower() not in positions]
    if missing:
        raise FormatError(f"missing column(s): {', '.join(missing)}")
    cols = {c: positions[c.lower()] for c in CSV_COLUMNS}

    bars: list[Bar] = []
    seen: dict[Date, int] = {}
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            raise FormatError(f"row at line {line_no}: expected {len(header)} cells, got {len(row)}")

        def cell(name: str) -> str:
            return row[cols[name]].strip()

        try:
            day = Date.fromisoformat(cell("Date"))
        except ValueError:
            raise FormatError(f"row at line {line_no}: bad Date value {cell('Date')!r}")
        try:
            bar = Bar(
                date=day,
                open=float(cell("Open")),
                high=float(cell("High")),
                low=float(cell("Low")),
                close=float(cell("Close")),
                adj_close=float(cell("Adj Close")),
                volume=int(float(cell("Volume"))),
            )
        except ValueError as exc:
            raise FormatError(f"row at line {line_no}: unparseable cell ({exc})")
        if day in seen:
            raise ValidationError(f"duplicate date {day.isoformat()} (lines {seen[day]} and {line_no})")
        seen[day] = line_no
        bars.append(bar)

    bars.sort(key=lambda b: b.date)
    return BarSeries(ticker=ticker, bars=bars)


def series_to_csv(s: BarSeries) -> str:
    """Serialize a BarSeries back to its CSV form (round-trips exactly)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for b in s.bars:
        writer.writerow(
            [b.date.isoformat(), repr(b.open), repr(b.high), repr(b.low),
             repr(b.close), repr(b.adj_close), b.volume]
        )
    return out.getvalue()


def validate_series(s: BarSeries) -> ValidationReport:
    """Check every bar against the price/volume invariants.

    Returns a report with one Violation per bad bar; a clean series
    yields an empty report. Never raises.
    """
    report = ValidationReport()
    for b in s.bars:
        problems: list[str] = []
        if not (b.open > 0 and b.high > 0 and b.low > 0 and b.close > 0 and b.adj_close > 0):
            problems.append("non-positive price")
        if b.low > min(b.open, b.close):
            problems.append("low above min(open, close)")
        if b.high < max(b.open, b.close):
            problems.append("high below max(open, close)")
        if b.low > b.high:
            problems.append("low above high")
        if b.volume < 0:
            problems.append("negative volume")
        if problems:
            report.violations.append(Violation(date=b.date, problems=problems))
    return report
