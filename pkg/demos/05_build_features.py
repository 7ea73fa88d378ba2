"""Join indicators with daily sentiment into the model-ready feature
matrix, then inspect the feature correlation structure.

Run from the repository root:

    python3 demos/05_build_features.py
"""

from pathlib import Path

from trendcast.config import packaged_data
from trendcast.features import join_features, min_max_scale, pearson_matrix
from trendcast.indicators import build_indicator_frame
from trendcast.market_data import parse_ohlcv_csv
from trendcast.news import KeywordSet, load_wordlist, preprocess_corpus, read_news_jsonl
from trendcast.sentiment import Lexicon, aggregate_daily, load_lexicon, score_article

DATA = Path(__file__).parent / "data"


def main():
    series = parse_ohlcv_csv((DATA / "prices.csv").read_text(), ticker="DEMO")
    frame = build_indicator_frame(series, n=14)

    stoplist = load_wordlist(packaged_data("stopwords.txt"))
    lex = Lexicon(
        valences=load_lexicon(packaged_data("lexicon.tsv")),
        negators=frozenset(load_wordlist(packaged_data("negators.txt"))),
    )
    raw = read_news_jsonl((DATA / "news.jsonl").read_text())
    corpus = preprocess_corpus(raw, KeywordSet("DEMO", frozenset({"demo"})), stoplist)
    daily = aggregate_daily([score_article(a, lex) for a in corpus], mode="mean")

    # left join on the trading calendar: days without news score 0.0
    matrix = join_features(frame, daily)
    print(f"feature matrix: {matrix.n_rows} rows x {len(matrix.column_names)} columns")
    print(f"columns: {', '.join(matrix.column_names)}")
    up = int(matrix.labels.sum())
    print(f"labels: {up} Up / {matrix.n_rows - up} Down")
    with_news = int((matrix.column("Sentiment") != 0.0).sum())
    print(f"days with scored news: {with_news} of {matrix.n_rows}\n")

    corr = pearson_matrix(matrix)
    print("strongly correlated feature pairs (|r| > 0.5):")
    for i in range(len(corr.names)):
        for j in range(i + 1, len(corr.names)):
            if corr.is_defined(i, j) and abs(corr.values[i, j]) > 0.5:
                print(f"  {corr.names[i]:<10} ~ {corr.names[j]:<10} r={corr.values[i, j]:+.4f}")

    scaled, _ = min_max_scale(matrix, matrix)
    print("\nafter min-max scaling every non-constant column spans [-1, 1]:")
    for j, name in enumerate(scaled.column_names):
        col = scaled.rows[:, j]
        print(f"  {name:<12} min={col.min():+.3f} max={col.max():+.3f}")


if __name__ == "__main__":
    main()
