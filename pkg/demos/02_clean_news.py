"""Show each text-cleaning stage on raw news: noise stripping,
lowercasing, keyword filtering, tokenization, stopword removal.

Run from the repository root:

    python3 demos/02_clean_news.py
"""

from pathlib import Path

from trendcast.config import packaged_data
from trendcast.news import (
    KeywordSet,
    NewsIngestStats,
    clean_text_to_tokens,
    load_wordlist,
    preprocess_corpus,
    read_news_jsonl,
    strip_noise,
    to_lowercase,
)

DATA = Path(__file__).parent / "data"

SAMPLE = (
    "Demo Corp SOARS after <b>record</b> results &amp; upbeat guidance! "
    "Details at https://news.example.com/story?id=4821 or email "
    "ir@demo.example.com. Analysts don't expect a 2,500 point slide."
)


def main():
    print("raw text:")
    print(f"  {SAMPLE}\n")

    stripped = strip_noise(SAMPLE)
    print("after noise stripping (URLs, emails, HTML, entities):")
    print(f"  {stripped}\n")

    lowered = to_lowercase(stripped)
    print("after lowercasing:")
    print(f"  {lowered}\n")

    stoplist = load_wordlist(packaged_data("stopwords.txt"))
    tokens = clean_text_to_tokens(SAMPLE, stoplist)
    print("final tokens (punctuation gone, digit runs and stopwords removed,")
    print("negation words like 'dont' deliberately kept):")
    print(f"  {tokens}\n")

    # the same stages applied to a whole corpus, keeping only articles
    # that mention the ticker's keywords
    stats = NewsIngestStats()
    raw = read_news_jsonl((DATA / "news.jsonl").read_text(), stats)
    keywords = KeywordSet("DEMO", frozenset({"demo"}))
    corpus = preprocess_corpus(raw, keywords, stoplist)
    print(f"corpus: {stats.articles} articles read, {len(corpus)} mention 'demo'")
    print(f"example tokenized article ({corpus[0].date}):")
    print(f"  {corpus[0].tokens}")


if __name__ == "__main__":
    main()
