"""Command-line pipeline: build features, train and tune, predict, report.

Every run writes machine-readable JSON next to the human-readable text
report. metrics.json is a pure function of (inputs, config, seed);
wall-clock timestamps go only to run_report.json.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import features as ft
from . import indicators, market_data, metrics, news, sentiment
from .config import RunConfig, apply_overrides, load_config, packaged_data, packaged_keywords_text
from .errors import PipelineError, SchemaError, StageError, ValidationError
from .models import grid_search, make_model, save_model
from .models.cv import FAMILIES, _point_seed
from .models.persist import load_model

TABLE_COLUMNS = ["cv_accuracy", "test_accuracy", "precision", "recall", "f1"]


def _stage_row(stage: str, rows_in: int, rows_out: int) -> dict:
    return {
        "stage": stage,
        "rows_in": rows_in,
        "rows_out": rows_out,
        "rows_dropped": rows_in - rows_out,
    }


def _read_text(path: Path, stage: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StageError(stage, f"cannot read {path}: {exc.strerror or exc}") from exc


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def _load_sentiment_inputs(cfg: RunConfig):
    lex_text = _read_text(cfg.lexicon, "load_lexicon") if cfg.lexicon else packaged_data("lexicon.tsv")
    neg_text = _read_text(cfg.negators, "load_negators") if cfg.negators else packaged_data("negators.txt")
    stop_text = _read_text(cfg.stopwords, "load_stopwords") if cfg.stopwords else packaged_data("stopwords.txt")
    kw_text = _read_text(cfg.keywords, "load_keywords") if cfg.keywords else packaged_keywords_text(cfg.ticker)
    lex = sentiment.Lexicon(sentiment.load_lexicon(lex_text), frozenset(news.load_wordlist(neg_text)))
    stoplist = news.load_wordlist(stop_text)
    keywords = news.KeywordSet(cfg.ticker, frozenset(news.load_wordlist(kw_text)))
    return lex, stoplist, keywords


def cmd_build_features(cfg: RunConfig) -> dict:
    """Prices + news -> unscaled feature CSV, correlation report, run report."""
    started = _now()
    t0 = time.perf_counter()
    stages: list[dict] = []
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)

    price_text = _read_text(cfg.prices, "parse_prices")
    try:
        series = market_data.parse_ohlcv_csv(price_text, cfg.ticker)
    except PipelineError as exc:
        raise StageError("parse_prices", f"{cfg.prices}: {exc}") from exc
    stages.append(_stage_row("parse_prices", len(series), len(series)))

    report = market_data.validate_series(series)
    if not report.ok:
        first = report.violations[0]
        raise StageError(
            "validate_prices",
            f"{cfg.prices}: {len(report.violations)} invalid bar(s); "
            f"first at {first.date}: {'; '.join(first.problems)}",
        )
    stages.append(_stage_row("validate_prices", len(series), len(series)))

    try:
        frame = indicators.build_indicator_frame(series, n=cfg.indicator_window)
    except PipelineError as exc:
        raise StageError("indicator_frame", f"{cfg.prices}: {exc}") from exc
    stages.append(_stage_row("indicator_frame", len(series), len(frame)))

    daily: list[sentiment.DailySentiment] = []
    articles_scored = 0
    if cfg.news is not None:
        lex, stoplist, keywords = _load_sentiment_inputs(cfg)
        news_text = _read_text(cfg.news, "read_news")
        stats = news.NewsIngestStats()
        try:
            raw = news.read_news_jsonl(news_text, stats)
        except PipelineError as exc:
            raise StageError("read_news", f"{cfg.news}: {exc}") from exc
        stages.append(_stage_row("read_news", stats.lines_read, stats.articles))
        tokenized = news.preprocess_corpus(raw, keywords, stoplist)
        stages.append(_stage_row("filter_news", stats.articles, len(tokenized)))
        scores = [sentiment.score_article(a, lex) for a in tokenized]
        daily = sentiment.aggregate_daily(scores, mode=cfg.aggregation)
        articles_scored = len(scores)

    matrix = ft.join_features(frame, daily)
    trading_days = set(matrix.dates)
    matched_days = sum(1 for d in daily if d.date in trading_days)
    stages.append(_stage_row("sentiment_join", len(daily), matched_days))

    effective_drop = tuple(c for c in cfg.drop_columns if c in matrix.column_names)
    matrix = ft.select_features(matrix, effective_drop)
    corr = ft.pearson_matrix(matrix)

    (out / "features.csv").write_text(ft.matrix_to_csv(matrix))
    (out / "correlation.csv").write_text(ft.correlation_to_csv(corr))
    (out / "correlation.json").write_text(ft.correlation_to_json(corr) + "\n")

    run_report = {
        "command": "build-features",
        "ticker": cfg.ticker,
        "indicator_window": cfg.indicator_window,
        "aggregation": cfg.aggregation,
        "stages": stages,
        "articles_scored": articles_scored,
        "sentiment_days": len(daily),
        "sentiment_days_off_calendar": len(daily) - matched_days,
        "feature_columns": list(matrix.column_names),
        "feature_rows": matrix.n_rows,
        "outputs": ["features.csv", "correlation.csv", "correlation.json"],
        "started_at": started,
        "finished_at": _now(),
        "duration_s": round(time.perf_counter() - t0, 3),
    }
    _write_json(out / "run_report.json", run_report)
    return run_report


def _final_seed(master_seed: int, family: str, params: dict) -> int:
    # off the fold-index range, so the refit never shares a stream with a fold
    point = _point_seed(master_seed, family, params)
    return int(np.random.SeedSequence((point, 1_000_003)).generate_state(1)[0])


def cmd_train(cfg: RunConfig) -> dict:
    """Grid search + 10-fold CV per family, final holdout evaluation, reports."""
    started = _now()
    t0 = time.perf_counter()
    out = Path(cfg.out)
    features_path = out / "features.csv"
    if not features_path.exists():
        cmd_build_features(cfg)

    matrix = ft.matrix_from_csv(features_path.read_text())
    n_up = int(np.sum(matrix.labels == 1))
    n_down = int(np.sum(matrix.labels == 0))
    if n_up == 0 or n_down == 0:
        raise ValidationError(
            f"degenerate label distribution: Up={n_up}, Down={n_down}; training needs both classes"
        )

    train, test = ft.split_train_test(
        matrix, ratio=cfg.split.ratio, mode=cfg.split.mode, seed=cfg.split.seed
    )
    scaled_train, scaler = ft.min_max_scale(train, train)
    scaled_test = scaler.transform(test)

    families_out = {}
    table_rows = []
    timing = {}
    for family in FAMILIES:
        f0 = time.perf_counter()
        search = grid_search(
            train.rows,
            train.labels,
            family,
            cfg.grids[family],
            k=cfg.cv_folds,
            mode=cfg.split.mode,
            seed=cfg.split.seed,
        )
        best = search.best
        model = make_model(
            family, best.params, seed=_final_seed(cfg.split.seed, family, best.params)
        )
        model.fit(scaled_train.rows, scaled_train.labels)
        test_report = metrics.evaluate(test.labels, model.predict(scaled_test.rows))
        save_model(out / f"model_{family}.json", model, matrix.column_names, scaler)
        timing[family] = round(time.perf_counter() - f0, 3)

        families_out[family] = {
            "best_params": best.params,
            "cv_mean": best.mean,
            "cv_std": best.std,
            "skipped_folds": best.skipped_folds,
            "grid_points": len(search.results),
            "test": {
                **{m: test_report.values[m] for m in metrics.METRIC_NAMES},
                "tp": test_report.cm.tp,
                "fp": test_report.cm.fp,
                "tn": test_report.cm.tn,
                "fn": test_report.cm.fn,
                "degenerate": sorted(test_report.degenerate),
            },
        }
        table_rows.append(
            (
                family,
                {
                    "cv_accuracy": best.mean["accuracy"],
                    "test_accuracy": test_report.values["accuracy"],
                    "precision": test_report.values["precision"],
                    "recall": test_report.values["recall"],
                    "f1": test_report.values["f1"],
                },
            )
        )

    payload = {
        "command": "train",
        "ticker": cfg.ticker,
        "cv_folds": cfg.cv_folds,
        "split": {"ratio": cfg.split.ratio, "mode": cfg.split.mode, "seed": cfg.split.seed},
        "n_rows": matrix.n_rows,
        "n_train": train.n_rows,
        "n_test": test.n_rows,
        "label_counts": {"Up": n_up, "Down": n_down},
        "families": families_out,
    }
    _write_json(out / "metrics.json", payload)
    (out / "table2.txt").write_text(metrics.render_table(table_rows, TABLE_COLUMNS))
    run_report = {
        "command": "train",
        "ticker": cfg.ticker,
        "family_seconds": timing,
        "outputs": ["metrics.json", "table2.txt"] + [f"model_{f}.json" for f in FAMILIES],
        "started_at": started,
        "finished_at": _now(),
        "duration_s": round(time.perf_counter() - t0, 3),
    }
    _write_json(out / "train_report.json", run_report)
    return payload


def cmd_predict(model_path, input_path) -> list[dict]:
    """Apply a saved model (scaler included) to feature rows from a CSV."""
    loaded = load_model(model_path)
    matrix = ft.matrix_from_csv(_read_text(Path(input_path), "read_features"))
    have = set(matrix.column_names)
    want = set(loaded.feature_names)
    if have != want:
        missing = sorted(want - have)
        extra = sorted(have - want)
        raise SchemaError(
            f"feature columns do not match the model: missing {missing}, extra {extra}"
        )
    order = [matrix.column_names.index(n) for n in loaded.feature_names]
    aligned = ft.FeatureMatrix(
        list(loaded.feature_names), matrix.rows[:, order], matrix.labels, matrix.dates
    )
    if loaded.scaler is not None:
        aligned = loaded.scaler.transform(aligned)
    proba = loaded.model.predict_proba(aligned.rows)
    rows = []
    for i, p in enumerate(proba):
        rows.append(
            {
                "row": i,
                "date": aligned.dates[i].isoformat() if aligned.dates else None,
                "label": indicators.Trend.UP.value if p >= 0.5 else indicators.Trend.DOWN.value,
                "probability_up": float(p),
            }
        )
    return rows


def cmd_report(metrics_path) -> str:
    """Re-render the fixed-width comparison table from metrics.json."""
    path = Path(metrics_path)
    try:
        payload = json.loads(_read_text(path, "read_metrics"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    families = payload.get("families")
    if not families:
        raise SchemaError(f"{path} has no 'families' section to report on")
    # same row order as train, so a re-render is byte-identical
    order = [f for f in FAMILIES if f in families]
    order += sorted(set(families) - set(FAMILIES))
    rows = []
    for family in order:
        info = families[family]
        rows.append(
            (
                family,
                {
                    "cv_accuracy": info["cv_mean"]["accuracy"],
                    "test_accuracy": info["test"]["accuracy"],
                    "precision": info["test"]["precision"],
                    "recall": info["test"]["recall"],
                    "f1": info["test"]["f1"],
                },
            )
        )
    table = metrics.render_table(rows, TABLE_COLUMNS)
    (path.parent / "table2.txt").write_text(table)
    return table


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", required=True, help="path to the YAML run config")
    p.add_argument("--seed", type=int, help="override the split/CV seed")
    p.add_argument("--ticker", help="override the ticker symbol")
    p.add_argument("--split-mode", choices=["chrono", "random"], help="override the split mode")
    p.add_argument("--out", help="override the output directory")


def _config_from_args(args) -> RunConfig:
    cfg = load_config(args.config)
    return apply_overrides(
        cfg, seed=args.seed, ticker=args.ticker, split_mode=args.split_mode, out=args.out
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trendcast",
        description="Next-day stock trend classification from indicators and news sentiment",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build-features", help="prices + news -> feature matrix CSV")
    _add_common_flags(p_build)

    p_train = sub.add_parser("train", help="grid search, CV, holdout evaluation, model files")
    _add_common_flags(p_train)

    p_pred = sub.add_parser("predict", help="apply a saved model to feature rows")
    p_pred.add_argument("--model", required=True, help="model JSON written by train")
    p_pred.add_argument("--input", required=True, help="feature CSV (features.csv format)")
    p_pred.add_argument("--out", help="also write predictions as CSV here")

    p_rep = sub.add_parser("report", help="re-render table2.txt from metrics.json")
    group = p_rep.add_mutually_exclusive_group(required=True)
    group.add_argument("--config", help="run config; reads <out>/metrics.json")
    group.add_argument("--metrics", help="path to a metrics.json")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "build-features":
            report = cmd_build_features(_config_from_args(args))
            print(f"features: {report['feature_rows']} rows x {len(report['feature_columns'])} columns")
            for row in report["stages"]:
                print(
                    f"  {row['stage']}: in={row['rows_in']} out={row['rows_out']}"
                    f" dropped={row['rows_dropped']}"
                )
        elif args.command == "train":
            cfg = _config_from_args(args)
            cmd_train(cfg)
            print((Path(cfg.out) / "table2.txt").read_text(), end="")
        elif args.command == "predict":
            rows = cmd_predict(args.model, args.input)
            for r in rows:
                tag = r["date"] if r["date"] else f"row {r['row']}"
                print(f"{tag}  {r['label']:<4}  p(Up)={r['probability_up']:.4f}")
            if args.out:
                lines = ["Date,Label,ProbabilityUp"]
                for r in rows:
                    lines.append(f"{r['date'] or r['row']},{r['label']},{r['probability_up']!r}")
                Path(args.out).write_text("\n".join(lines) + "\n")
        elif args.command == "report":
            if args.config:
                cfg = load_config(args.config)
                metrics_path = Path(cfg.out) / "metrics.json"
            else:
                metrics_path = Path(args.metrics)
            print(cmd_report(metrics_path), end="")
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
