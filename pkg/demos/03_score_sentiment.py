"""Score token lists with the shipped lexicon: valence sums, negation
damping, compound normalization, and daily aggregation.

Run from the repository root:

    python3 demos/03_score_sentiment.py
"""

from datetime import date

from trendcast.config import packaged_data
from trendcast.news import TokenizedArticle, load_wordlist
from trendcast.sentiment import (
    Lexicon,
    aggregate_daily,
    load_lexicon,
    normalize_compound,
    raw_valence_sum,
    score_article,
)


def main():
    lex = Lexicon(
        valences=load_lexicon(packaged_data("lexicon.tsv")),
        negators=frozenset(load_wordlist(packaged_data("negators.txt"))),
    )
    print(f"lexicon: {len(lex.valences)} valenced tokens, {len(lex.negators)} negators\n")

    samples = [
        ("plain positive", ("profit", "growth", "strong")),
        ("plain negative", ("lawsuit", "loss", "weak")),
        ("negated positive", ("not", "a", "strong", "quarter")),
        ("mixed", ("record", "profit", "despite", "lawsuit")),
        ("no valenced words", ("the", "market", "opened")),
    ]
    print(f"{'case':<20} {'raw sum':>8} {'compound':>9}")
    for name, tokens in samples:
        raw = raw_valence_sum(tokens, lex)
        compound = normalize_compound(raw)
        print(f"{name:<20} {raw:8.3f} {compound:9.4f}")

    # a negator within the three preceding tokens flips and damps the
    # valence (multiplies by -0.74) instead of simply zeroing it
    print("\nnegation window: 'not' three tokens back still flips,")
    far = ("not", "a", "very", "big", "strong", "finish")
    near = ("not", "strong",)
    print(f"  {near}: {raw_valence_sum(near, lex):.3f}")
    print(f"  {far}:  {raw_valence_sum(far, lex):.3f}  (four back: no flip)")

    # one overall score per calendar day
    day1, day2 = date(2019, 3, 4), date(2019, 3, 5)
    scores = [
        score_article(TokenizedArticle(day1, ("strong", "profit")), lex),
        score_article(TokenizedArticle(day1, ("weak", "results")), lex),
        score_article(TokenizedArticle(day2, ("crash", "fear")), lex),
    ]
    print("\ndaily aggregation (mean of each day's compounds):")
    for d in aggregate_daily(scores, mode="mean"):
        print(f"  {d.date}: overall={d.overall:+.4f} from {d.article_count} article(s)")


if __name__ == "__main__":
    main()
