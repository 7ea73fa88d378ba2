"""Join indicators with daily sentiment, correlate, select, scale, split.

The canonical feature layout is High, Close, Volume, SMA, RSI, %K,
Sentiment, TodayTrend with TomorrowTrend (1/0) as the label. Scaling is
min-max onto [-1, 1], always fitted on training rows only.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field
from datetime import date as Date

import numpy as np

from .errors import ValidationError
from .indicators import IndicatorRow, encode_trend
from .sentiment import DailySentiment

FEATURE_COLUMNS = ("High", "Close", "Volume", "SMA", "RSI", "%K", "Sentiment", "TodayTrend")
LABEL_COLUMN = "TomorrowTrend"
DEFAULT_DROP = ("Open", "Low", "AdjClose")


@dataclass
class FeatureMatrix:
    column_names: list[str]
    rows: np.ndarray  # (n_rows, n_cols) float64
    labels: np.ndarray  # (n_rows,) int, values {0, 1}
    dates: list[Date] = field(default_factory=list)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.rows.ndim != 2:
            raise ValidationError("feature rows must be a 2-d matrix")
        if self.rows.shape[0] != self.labels.shape[0]:
            raise ValidationError("rows and labels must have equal length")
        if self.rows.shape[1] != len(self.column_names):
            raise ValidationError("row width must match column_names")

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.column_names.index(name)]


@dataclass
class CorrelationMatrix:
    """Pairwise Pearson coefficients; NaN marks an undefined entry
    (a constant column involved). The diagonal is 1 by convention."""

    names: list[str]
    values: np.ndarray

    def is_defined(self, i: int, j: int) -> bool:
        return not math.isnan(self.values[i, j])


def join_features(rows: list[IndicatorRow], sent: list[DailySentiment]) -> FeatureMatrix:
    """Left join of indicator rows with daily sentiment on date.

    Every indicator row is kept; dates with no sentiment get 0.0
    (neutral). Sentiment on dates absent from the indicator frame is
    ignored.
    """
    overall = {d.date: d.overall for d in sent}
    data = np.empty((len(rows), len(FEATURE_COLUMNS)), dtype=np.float64)
    labels = np.empty(len(rows), dtype=np.int64)
    dates = []
    for k, row in enumerate(rows):
        data[k] = (
            row.high,
            row.close,
            float(row.volume),
            row.sma,
            row.rsi,
            row.pct_k,
            overall.get(row.date, 0.0),
            float(encode_trend(row.today_trend)),
        )
        labels[k] = encode_trend(row.tomorrow_trend)
        dates.append(row.date)
    return FeatureMatrix(list(FEATURE_COLUMNS), data, labels, dates)


def pearson_matrix(m: FeatureMatrix) -> CorrelationMatrix:
    """Standard Pearson coefficients per column pair.

    Entries involving a constant column are NaN (undefined marker)
    rather than a number; the diagonal stays 1.
    """
    if m.n_rows < 2:
        raise ValidationError("pearson_matrix needs at least 2 rows")
    x = m.rows
    centered = x - x.mean(axis=0)
    std = np.sqrt((centered**2).mean(axis=0))
    d = x.shape[1]
    values = np.full((d, d), np.nan)
    for i in range(d):
        values[i, i] = 1.0
        for j in range(i + 1, d):
            if std[i] == 0.0 or std[j] == 0.0:
                continue
            cov = (centered[:, i] * centered[:, j]).mean()
            values[i, j] = values[j, i] = cov / (std[i] * std[j])
    return CorrelationMatrix(list(m.column_names), values)


def select_features(m: FeatureMatrix, drop_policy=DEFAULT_DROP) -> FeatureMatrix:
    """Drop the columns named by the policy; unknown names warn and no-op."""
    keep_idx = []
    drop = set(drop_policy)
    for name in drop:
        if name not in m.column_names:
            warnings.warn(f"drop policy names absent column {name!r}, ignored", stacklevel=2)
    for i, name in enumerate(m.column_names):
        if name not in drop:
            keep_idx.append(i)
    return FeatureMatrix(
        [m.column_names[i] for i in keep_idx],
        m.rows[:, keep_idx].copy(),
        m.labels.copy(),
        list(m.dates),
    )


@dataclass
class ScalerState:
    """Per-column min/max captured from training rows only."""

    column_names: list[str]
    mins: np.ndarray
    maxs: np.ndarray

    def transform(self, m: FeatureMatrix) -> FeatureMatrix:
        if list(m.column_names) != list(self.column_names):
            raise ValidationError(
                f"scaler fitted on columns {self.column_names}, got {m.column_names}"
            )
        span = self.maxs - self.mins
        scaled = np.zeros_like(m.rows)
        nonconst = span != 0.0
        scaled[:, nonconst] = -1.0 + 2.0 * (m.rows[:, nonconst] - self.mins[nonconst]) / span[nonconst]
        return FeatureMatrix(list(m.column_names), scaled, m.labels.copy(), list(m.dates))

    def to_dict(self) -> dict:
        return {
            "columns": list(self.column_names),
            "mins": [float(v) for v in self.mins],
            "maxs": [float(v) for v in self.maxs],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScalerState":
        return cls(
            column_names=list(d["columns"]),
            mins=np.array(d["mins"], dtype=np.float64),
            maxs=np.array(d["maxs"], dtype=np.float64),
        )


def fit_scaler(train: FeatureMatrix) -> ScalerState:
    if train.n_rows == 0:
        raise ValidationError("cannot fit a scaler on an empty training set")
    return ScalerState(
        column_names=list(train.column_names),
        mins=train.rows.min(axis=0),
        maxs=train.rows.max(axis=0),
    )


def min_max_scale(train: FeatureMatrix, apply_to: FeatureMatrix) -> tuple[FeatureMatrix, ScalerState]:
    """Scale apply_to using min/max fitted on train only.

    Training extremes map to exactly -1 and +1; a constant training
    column maps everything to 0; values outside the training range are
    reported as-is (no clamping).
    """
    state = fit_scaler(train)
    return state.transform(apply_to), state


def split_train_test(
    m: FeatureMatrix, ratio: float = 0.8, mode: str = "chronological", seed: int | None = None
) -> tuple[FeatureMatrix, FeatureMatrix]:
    """Split rows into train/test, first ceil(ratio*n) rows as train.

    'chronological' keeps row order; 'random' applies a seeded uniform
    shuffle first. Needs at least 5 rows.
    """
    if not 0.0 < ratio < 1.0:
        raise ValidationError(f"split ratio must be in (0, 1), got {ratio}")
    n = m.n_rows
    if n < 5:
        raise ValidationError(f"need at least 5 rows to split, got {n}")
    if mode == "chronological":
        order = np.arange(n)
    elif mode == "random":
        order = np.random.default_rng(seed).permutation(n)
    else:
        raise ValidationError(f"unknown split mode {mode!r}")
    n_train = math.ceil(ratio * n)
    tr, te = order[:n_train], order[n_train:]

    def take(idx):
        return FeatureMatrix(
            list(m.column_names),
            m.rows[idx].copy(),
            m.labels[idx].copy(),
            [m.dates[i] for i in idx] if m.dates else [],
        )

    return take(tr), take(te)


def matrix_to_csv(m: FeatureMatrix) -> str:
    """Feature matrix as CSV: Date, feature columns, label column."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["Date", *m.column_names, LABEL_COLUMN])
    for k in range(m.n_rows):
        day = m.dates[k].isoformat() if m.dates else ""
        writer.writerow([day, *[repr(float(v)) for v in m.rows[k]], int(m.labels[k])])
    return out.getvalue()


def matrix_from_csv(text: str) -> FeatureMatrix:
    """Inverse of matrix_to_csv; tolerates a missing Date column."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    has_date = header and header[0] == "Date"
    has_label = header and header[-1] == LABEL_COLUMN
    lo = 1 if has_date else 0
    hi = len(header) - 1 if has_label else len(header)
    names = header[lo:hi]
    rows, labels, dates = [], [], []
    for rec in reader:
        if not rec:
            continue
        if has_date:
            dates.append(Date.fromisoformat(rec[0]))
        rows.append([float(v) for v in rec[lo:hi]])
        labels.append(int(rec[-1]) if has_label else 0)
    data = np.array(rows, dtype=np.float64) if rows else np.empty((0, len(names)))
    return FeatureMatrix(names, data, np.array(labels, dtype=np.int64), dates)


def correlation_to_csv(c: CorrelationMatrix) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["", *c.names])
    for i, name in enumerate(c.names):
        writer.writerow([name, *["" if math.isnan(v) else repr(float(v)) for v in c.values[i]]])
    return out.getvalue()


def correlation_to_json(c: CorrelationMatrix) -> str:
    """Nested object keyed by feature-name pairs; undefined entries are null."""
    obj = {
        a: {
            b: (None if math.isnan(c.values[i, j]) else float(c.values[i, j]))
            for j, b in enumerate(c.names)
        }
        for i, a in enumerate(c.names)
    }
    return json.dumps(obj, indent=2, sort_keys=True)
