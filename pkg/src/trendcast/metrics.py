"""Binary-classification metrics with Up (=1) as the positive class.

A zero denominator never produces NaN: the metric is reported as 0.0
and flagged degenerate so CV averaging stays well defined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

METRIC_NAMES = ("accuracy", "precision", "recall", "f1")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def confusion(y_true, y_pred) -> ConfusionMatrix:
    yt = np.asarray(y_true, dtype=np.int64)
    yp = np.asarray(y_pred, dtype=np.int64)
    if yt.shape != yp.shape:
        raise ValidationError(f"length mismatch: {yt.shape} vs {yp.shape}")
    if yt.size and not (np.isin(yt, (0, 1)).all() and np.isin(yp, (0, 1)).all()):
        raise ValidationError("labels must be 0 or 1")
    return ConfusionMatrix(
        tp=int(((yt == 1) & (yp == 1)).sum()),
        fp=int(((yt == 0) & (yp == 1)).sum()),
        tn=int(((yt == 0) & (yp == 0)).sum()),
        fn=int(((yt == 1) & (yp == 0)).sum()),
    )


def _ratio(num: int, den: int) -> tuple[float, bool]:
    if den == 0:
        return 0.0, True
    return num / den, False


def accuracy(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tp + cm.tn, cm.total)[0]


def precision(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tp, cm.tp + cm.fp)[0]


def recall(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tp, cm.tp + cm.fn)[0]


def f1(cm: ConfusionMatrix) -> float:
    p, r = precision(cm), recall(cm)
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


@dataclass
class MetricReport:
    """Metric values plus which of them hit a zero denominator."""

    cm: ConfusionMatrix
    values: dict[str, float] = field(default_factory=dict)
    degenerate: list[str] = field(default_factory=list)


def evaluate(y_true, y_pred) -> MetricReport:
    cm = confusion(y_true, y_pred)
    report = MetricReport(cm=cm)
    acc, acc_deg = _ratio(cm.tp + cm.tn, cm.total)
    prec, prec_deg = _ratio(cm.tp, cm.tp + cm.fp)
    rec, rec_deg = _ratio(cm.tp, cm.tp + cm.fn)
    if prec + rec == 0.0:
        f, f_deg = 0.0, True
    else:
        f, f_deg = 2.0 * prec * rec / (prec + rec), False
    report.values = {"accuracy": acc, "precision": prec, "recall": rec, "f1": f}
    for name, deg in zip(METRIC_NAMES, (acc_deg, prec_deg, rec_deg, f_deg)):
        if deg:
            report.degenerate.append(name)
    return report


def report_to_json(report: MetricReport) -> str:
    """Flat JSON object with the four metrics, counts, and flags."""
    flat = {
        **{name: report.values[name] for name in METRIC_NAMES},
        "tp": report.cm.tp,
        "fp": report.cm.fp,
        "tn": report.cm.tn,
        "fn": report.cm.fn,
        "degenerate": sorted(report.degenerate),
    }
    return json.dumps(flat, indent=2, sort_keys=True)


def render_table(rows: list[tuple[str, dict[str, float]]], columns: list[str] | None = None) -> str:
    """Fixed-width text table: one row per model, one column per metric."""
    if columns is None:
        columns = list(rows[0][1].keys()) if rows else list(METRIC_NAMES)
    name_width = max([len("Model")] + [len(name) for name, _ in rows])
    widths = [max(len(c), 8) for c in columns]
    header = "Model".ljust(name_width) + "  " + "  ".join(
        c.rjust(w) for c, w in zip(columns, widths)
    )
    lines = [header, "-" * len(header)]
    for name, values in rows:
        cells = []
        for c, w in zip(columns, widths):
            v = values.get(c)
            cells.append(("-" if v is None else f"{v:.4f}").rjust(w))
        lines.append(name.ljust(name_width) + "  " + "  ".join(cells))
    return "\n".join(lines) + "\n"
