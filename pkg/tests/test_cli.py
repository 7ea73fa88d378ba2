import json
from datetime import date

import numpy as np
import pytest

from trendcast import features as ft
from trendcast.cli import cmd_build_features, cmd_predict, cmd_report, cmd_train, main
from trendcast.config import load_config
from trendcast.errors import SchemaError, StageError, ValidationError
from trendcast.market_data import series_to_csv

from synthetic import make_bar_series, make_news_jsonl, trading_days

SMALL_GRIDS = (
    "grids:\n"
    "  logreg:\n"
    "    epochs: [60]\n"
    "    learning_rate: [0.5]\n"
    "  random_forest:\n"
    "    n_trees: [5]\n"
    "    max_depth: [4]\n"
    "  gbm:\n"
    "    n_rounds: [10]\n"
    "    shrinkage: [0.2]\n"
    "    max_depth: [3]\n"
)


def write_run(tmp_path, rng, n_bars=100, with_news=True, extra=SMALL_GRIDS):
    series = make_bar_series(rng, n_bars)
    (tmp_path / "prices.csv").write_text(series_to_csv(series))
    lines = ["ticker: TEST", "prices: prices.csv", "cv_folds: 3", "out: run"]
    if with_news:
        days = [b.date for b in series.bars]
        (tmp_path / "news.jsonl").write_text(make_news_jsonl(rng, days))
        lines.append("news: news.jsonl")
    cfg_path = tmp_path / "run.yaml"
    cfg_path.write_text("\n".join(lines) + "\n" + extra)
    return cfg_path


class TestBuildFeatures:
    def test_outputs_and_stage_accounting(self, tmp_path, rng):
        cfg = load_config(write_run(tmp_path, rng))
        report = cmd_build_features(cfg)
        out = tmp_path / "run"
        for name in ("features.csv", "correlation.csv", "correlation.json", "run_report.json"):
            assert (out / name).exists()
        # 14-bar warmup plus the unlabeled last bar
        assert report["feature_rows"] == 85
        assert report["feature_columns"] == list(ft.FEATURE_COLUMNS)
        for row in report["stages"]:
            assert row["rows_in"] == row["rows_out"] + row["rows_dropped"]
        names = [row["stage"] for row in report["stages"]]
        assert names == [
            "parse_prices",
            "validate_prices",
            "indicator_frame",
            "read_news",
            "filter_news",
            "sentiment_join",
        ]
        matrix = ft.matrix_from_csv((out / "features.csv").read_text())
        assert matrix.n_rows == 85
        assert np.any(matrix.rows[:, matrix.column_names.index("Sentiment")] != 0.0)

    def test_no_news_means_zero_sentiment(self, tmp_path, rng):
        cfg = load_config(write_run(tmp_path, rng, with_news=False))
        report = cmd_build_features(cfg)
        assert report["articles_scored"] == 0
        assert "read_news" not in [r["stage"] for r in report["stages"]]
        matrix = ft.matrix_from_csv((tmp_path / "run" / "features.csv").read_text())
        assert np.all(matrix.rows[:, matrix.column_names.index("Sentiment")] == 0.0)

    def test_off_calendar_news_reported(self, tmp_path, rng):
        series = make_bar_series(rng, 40)
        (tmp_path / "prices.csv").write_text(series_to_csv(series))
        # article dated on a Saturday never joins a trading day
        weekend = date(2019, 1, 5)
        assert weekend.weekday() == 5
        (tmp_path / "news.jsonl").write_text(make_news_jsonl(rng, [weekend] * 4))
        cfg_path = tmp_path / "run.yaml"
        cfg_path.write_text(
            "ticker: TEST\nprices: prices.csv\nnews: news.jsonl\nout: run\n"
        )
        report = cmd_build_features(load_config(cfg_path))
        assert report["sentiment_days"] == 1
        assert report["sentiment_days_off_calendar"] == 1

    def test_too_few_bars_fails_with_window_size(self, tmp_path, rng):
        cfg = load_config(write_run(tmp_path, rng, n_bars=10, with_news=False))
        with pytest.raises(StageError, match="indicator_frame"):
            cmd_build_features(cfg)

    def test_invalid_bar_aborts_naming_date(self, tmp_path, rng):
        series = make_bar_series(rng, 30)
        lines = series_to_csv(series).splitlines()
        fields = lines[6].split(",")
        fields[2], fields[3] = fields[3], fields[2]  # high below low
        lines[6] = ",".join(fields)
        (tmp_path / "prices.csv").write_text("\n".join(lines) + "\n")
        cfg_path = tmp_path / "run.yaml"
        cfg_path.write_text("ticker: TEST\nprices: prices.csv\nout: run\n")
        bad_date = fields[0]
        with pytest.raises(StageError, match=f"validate_prices.*{bad_date}"):
            cmd_build_features(load_config(cfg_path))


class TestTrain:
    def test_writes_all_outputs(self, tmp_path, rng):
        cfg = load_config(write_run(tmp_path, rng))
        payload = cmd_train(cfg)
        out = tmp_path / "run"
        for name in (
            "metrics.json",
            "table2.txt",
            "train_report.json",
            "model_logreg.json",
            "model_random_forest.json",
            "model_gbm.json",
        ):
            assert (out / name).exists()
        assert payload["n_rows"] == 85
        assert payload["n_train"] == 68  # ceil(0.8 * 85)
        assert payload["n_test"] == 17
        assert payload["label_counts"]["Up"] + payload["label_counts"]["Down"] == 85
        assert sorted(payload["families"]) == ["gbm", "logreg", "random_forest"]
        for family, info in payload["families"].items():
            assert info["grid_points"] == 1
            t = info["test"]
            assert t["tp"] + t["fp"] + t["tn"] + t["fn"] == 17
            assert 0.0 <= t["accuracy"] <= 1.0
        # the file matches the returned payload
        on_disk = json.loads((out / "metrics.json").read_text())
        assert on_disk == payload
        table = (out / "table2.txt").read_text()
        assert "cv_accuracy" in table and "logreg" in table

    def test_degenerate_labels_rejected(self, tmp_path, rng):
        (tmp_path / "prices.csv").write_text("placeholder\n")
        cfg_path = tmp_path / "run.yaml"
        cfg_path.write_text("ticker: T\nprices: prices.csv\nout: run\n")
        cfg = load_config(cfg_path)
        out = tmp_path / "run"
        out.mkdir()
        rows = rng.normal(size=(8, 2))
        m = ft.FeatureMatrix(
            ["RSI", "Sentiment"], rows, np.ones(8, dtype=np.int64), trading_days(date(2020, 1, 6), 8)
        )
        (out / "features.csv").write_text(ft.matrix_to_csv(m))
        with pytest.raises(ValidationError, match="Up=8, Down=0"):
            cmd_train(cfg)

    def test_learns_separable_fixture(self, tmp_path, rng):
        """All three families should nail a label that is just RSI > 50."""
        (tmp_path / "prices.csv").write_text("placeholder\n")
        cfg_path = tmp_path / "run.yaml"
        cfg_path.write_text(
            "ticker: T\nprices: prices.csv\ncv_folds: 3\nout: run\n"
            + SMALL_GRIDS.replace("epochs: [60]", "epochs: [400]")
        )
        cfg = load_config(cfg_path)
        out = tmp_path / "run"
        out.mkdir()
        n = 200
        rsi = rng.uniform(5.0, 95.0, n)
        noise = rng.normal(size=n)
        m = ft.FeatureMatrix(
            ["RSI", "Sentiment"],
            np.column_stack([rsi, noise]),
            (rsi > 50.0).astype(np.int64),
            trading_days(date(2018, 1, 2), n),
        )
        (out / "features.csv").write_text(ft.matrix_to_csv(m))
        payload = cmd_train(cfg)
        for family, info in payload["families"].items():
            assert info["test"]["accuracy"] >= 0.95, family


class TestPredict:
    def test_roundtrip_over_feature_rows(self, tmp_path, rng):
        cfg = load_config(write_run(tmp_path, rng))
        cmd_train(cfg)
        out = tmp_path / "run"
        rows = cmd_predict(out / "model_logreg.json", out / "features.csv")
        matrix = ft.matrix_from_csv((out / "features.csv").read_text())
        assert len(rows) == matrix.n_rows
        assert [r["row"] for r in rows] == list(range(matrix.n_rows))
        assert rows[0]["date"] == matrix.dates[0].isoformat()
        for r in rows:
            assert r["label"] in ("Up", "Down")
            assert (r["label"] == "Up") == (r["probability_up"] >= 0.5)

    def test_column_mismatch_names_columns(self, tmp_path, rng):
        cfg = load_config(write_run(tmp_path, rng))
        cmd_train(cfg)
        out = tmp_path / "run"
        matrix = ft.matrix_from_csv((out / "features.csv").read_text())
        keep = [i for i, c in enumerate(matrix.column_names) if c != "RSI"]
        smaller = ft.FeatureMatrix(
            [matrix.column_names[i] for i in keep],
            matrix.rows[:, keep],
            matrix.labels,
            matrix.dates,
        )
        bad = tmp_path / "bad.csv"
        bad.write_text(ft.matrix_to_csv(smaller))
        with pytest.raises(SchemaError, match=r"missing \['RSI'\]"):
            cmd_predict(out / "model_logreg.json", bad)

    def test_shuffled_columns_are_realigned(self, tmp_path, rng):
        cfg = load_config(write_run(tmp_path, rng))
        cmd_train(cfg)
        out = tmp_path / "run"
        matrix = ft.matrix_from_csv((out / "features.csv").read_text())
        perm = list(reversed(range(len(matrix.column_names))))
        shuffled = ft.FeatureMatrix(
            [matrix.column_names[i] for i in perm],
            matrix.rows[:, perm],
            matrix.labels,
            matrix.dates,
        )
        alt = tmp_path / "shuffled.csv"
        alt.write_text(ft.matrix_to_csv(shuffled))
        a = cmd_predict(out / "model_gbm.json", out / "features.csv")
        b = cmd_predict(out / "model_gbm.json", alt)
        assert [r["probability_up"] for r in a] == [r["probability_up"] for r in b]


class TestReport:
    def test_rerenders_table(self, tmp_path, rng):
        cfg = load_config(write_run(tmp_path, rng))
        cmd_train(cfg)
        out = tmp_path / "run"
        original = (out / "table2.txt").read_text()
        (out / "table2.txt").unlink()
        table = cmd_report(out / "metrics.json")
        assert (out / "table2.txt").read_text() == table
        assert table == original

    def test_missing_families_section(self, tmp_path):
        bad = tmp_path / "metrics.json"
        bad.write_text(json.dumps({"command": "train"}))
        with pytest.raises(SchemaError, match="families"):
            cmd_report(bad)


class TestMain:
    def test_build_features_exit_zero(self, tmp_path, rng, capsys):
        cfg_path = write_run(tmp_path, rng, with_news=False)
        assert main(["build-features", "--config", str(cfg_path)]) == 0
        assert "features: 85 rows" in capsys.readouterr().out

    def test_pipeline_error_exits_two(self, tmp_path, rng, capsys):
        cfg_path = write_run(tmp_path, rng, n_bars=10, with_news=False)
        assert main(["build-features", "--config", str(cfg_path)]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error: stage 'indicator_frame'")

    def test_missing_config_exits_two(self, tmp_path, capsys):
        assert main(["train", "--config", str(tmp_path / "nope.yaml")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_out_override_and_predict_csv(self, tmp_path, rng, capsys):
        cfg_path = write_run(tmp_path, rng)
        other = tmp_path / "elsewhere"
        assert main(["train", "--config", str(cfg_path), "--out", str(other)]) == 0
        assert (other / "metrics.json").exists()
        pred_csv = tmp_path / "pred.csv"
        code = main(
            [
                "predict",
                "--model",
                str(other / "model_random_forest.json"),
                "--input",
                str(other / "features.csv"),
                "--out",
                str(pred_csv),
            ]
        )
        assert code == 0
        lines = pred_csv.read_text().splitlines()
        assert lines[0] == "Date,Label,ProbabilityUp"
        assert len(lines) == 86
        out = capsys.readouterr().out
        assert "p(Up)=" in out

    def test_report_from_config(self, tmp_path, rng, capsys):
        cfg_path = write_run(tmp_path, rng)
        assert main(["train", "--config", str(cfg_path)]) == 0
        capsys.readouterr()
        assert main(["report", "--config", str(cfg_path)]) == 0
        assert "test_accuracy" in capsys.readouterr().out
