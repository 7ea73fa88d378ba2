"""Lexicon-based compound sentiment scoring and daily aggregation.

A document's raw score is the sum of its tokens' lexicon valences, with
a sign-flip damping of -0.74 when a valenced token is preceded within
three tokens by a negator. The raw sum s maps to a compound score in
(-1, 1) via s / sqrt(s^2 + 15).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from datetime import date as Date

from .errors import FormatError
from .news import TokenizedArticle

NEGATION_FLIP = -0.74
NEGATION_LOOKBACK = 3
VALENCE_MIN, VALENCE_MAX = -4.0, 4.0


@dataclass(frozen=True)
class Lexicon:
    valences: dict[str, float]
    negators: frozenset[str]


@dataclass(frozen=True)
class ArticleScore:
    date: Date
    compound: float


@dataclass(frozen=True)
class DailySentiment:
    date: Date
    overall: float
    article_count: int


def load_lexicon(tsv_text: str) -> dict[str, float]:
    """Parse token<TAB>valence lines; '#' comments and blanks skipped."""
    valences: dict[str, float] = {}
    for line_no, line in enumerate(tsv_text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise FormatError(f"lexicon line {line_no}: expected token<TAB>valence")
        token = parts[0].strip().lower()
        try:
            valence = float(parts[1])
        except ValueError:
            raise FormatError(f"lexicon line {line_no}: bad valence {parts[1]!r}")
        if not (VALENCE_MIN <= valence <= VALENCE_MAX):
            raise FormatError(
                f"lexicon line {line_no}: valence {valence} outside [{VALENCE_MIN}, {VALENCE_MAX}]"
            )
        valences[token] = valence
    return valences


def raw_valence_sum(tokens, lex: Lexicon) -> float:
    """Sum of lexicon valences with negation damping.

    A valenced token preceded by a negator within the previous three
    tokens contributes valence * -0.74 instead of its valence.
    """
    total = 0.0
    for i, tok in enumerate(tokens):
        valence = lex.valences.get(tok)
        if valence is None:
            continue
        lookback = tokens[max(0, i - NEGATION_LOOKBACK):i]
        if any(t in lex.negators for t in lookback):
            valence *= NEGATION_FLIP
        total += valence
    return total


def normalize_compound(s: float) -> float:
    """Map a raw valence sum into (-1, 1), odd and strictly increasing."""
    return s / math.sqrt(s * s + 15.0)


def score_article(a: TokenizedArticle, lex: Lexicon) -> ArticleScore:
    return ArticleScore(date=a.date, compound=normalize_compound(raw_valence_sum(a.tokens, lex)))


def aggregate_daily(scores: list[ArticleScore], mode: str = "mean") -> list[DailySentiment]:
    """Collapse article scores into one overall score per date.

    mode 'mean' (default) averages the day's compounds; 'sum' adds them
    (sum can leave the [-1, 1] range, mean cannot).
    """
    if mode not in ("mean", "sum"):
        raise ValueError(f"unknown aggregation mode {mode!r}")
    by_date: dict[Date, list[float]] = defaultdict(list)
    for s in scores:
        by_date[s.date].append(s.compound)
    out = []
    for day in sorted(by_date):
        compounds = by_date[day]
        total = math.fsum(compounds)
        overall = total / len(compounds) if mode == "mean" else total
        out.append(DailySentiment(date=day, overall=overall, article_count=len(compounds)))
    return out
