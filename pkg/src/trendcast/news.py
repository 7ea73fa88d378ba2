"""Clean raw news articles, keep the ticker-relevant ones, tokenize.

Processing order per article: strip noise, lowercase, keyword filter,
tokenize, drop stopwords, drop sub-2-character residue. Articles that
match no keyword or come out empty are dropped.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import date as Date

from .errors import FormatError

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_EMAIL_RE = re.compile(r"\b[\w.+-]+@[\w-]+\.[\w.-]+\b")
_HTML_TAG_RE = re.compile(r"<[^>]*>")
_HTML_ENTITY_RE = re.compile(r"&[a-zA-Z]+;|&#\d+;")
_APOSTROPHE_RE = re.compile(r"[’']")
_PUNCT_RE = re.compile(r"[^\w\s]")
_DIGITS_ONLY_RE = re.compile(r"^\d+$")

MIN_TOKEN_LEN = 2


@dataclass(frozen=True)
class RawArticle:
    date: Date
    article: str
    title: str | None = None
    publication: str | None = None


@dataclass(frozen=True)
class TokenizedArticle:
    date: Date
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class KeywordSet:
    ticker: str
    keywords: frozenset[str]

    def __post_init__(self):
        if not self.keywords:
            raise ValueError("keyword set must be non-empty")
        if any(k != k.lower() for k in self.keywords):
            raise ValueError("keywords must be lowercase")


def strip_noise(text: str) -> str:
    """Remove URLs, e-mails, HTML, punctuation and digit-only tokens."""
    text = _URL_RE.sub(" ", text)
    text = _EMAIL_RE.sub(" ", text)
    text = _HTML_TAG_RE.sub(" ", text)
    text = _HTML_ENTITY_RE.sub(" ", text)
    text = _APOSTROPHE_RE.sub("", text)  # don't -> dont, keeps negators whole
    text = _PUNCT_RE.sub(" ", text)
    words = [w for w in text.split() if not _DIGITS_ONLY_RE.match(w)]
    return " ".join(words)


def to_lowercase(text: str) -> str:
    return text.lower()


def matches_keywords(text: str, ks: KeywordSet) -> bool:
    """True iff any keyword occurs as a whole word in the lowercased text."""
    for kw in ks.keywords:
        if re.search(rf"\b{re.escape(kw)}\b", text):
            return True
    return False


def tokenize(text: str) -> list[str]:
    """Split on whitespace, order preserved."""
    return text.split()


def remove_stopwords(tokens: list[str], stoplist: set[str]) -> list[str]:
    return [t for t in tokens if t not in stoplist]


def clean_text_to_tokens(text: str, stoplist: set[str]) -> list[str]:
    """Noise-strip, lowercase, tokenize, un-stopword one document."""
    tokens = tokenize(to_lowercase(strip_noise(text)))
    tokens = remove_stopwords(tokens, stoplist)
    return [t for t in tokens if len(t) >= MIN_TOKEN_LEN]


def preprocess_corpus(
    articles: list[RawArticle], ks: KeywordSet, stoplist: set[str]
) -> list[TokenizedArticle]:
    """Full pipeline over a corpus.

    Keeps exactly the articles that mention a keyword, fully cleaned and
    tokenized, ordered by (date, input position). Non-matching articles
    and articles empty after cleaning are dropped.
    """
    kept: list[tuple[Date, int, TokenizedArticle]] = []
    for i, art in enumerate(articles):
        text = art.article if art.title is None else f"{art.title} {art.article}"
        lowered = to_lowercase(strip_noise(text))
        if not matches_keywords(lowered, ks):
            continue
        tokens = remove_stopwords(tokenize(lowered), stoplist)
        tokens = [t for t in tokens if len(t) >= MIN_TOKEN_LEN]
        if not tokens:
            continue
        kept.append((art.date, i, TokenizedArticle(date=art.date, tokens=tuple(tokens))))
    kept.sort(key=lambda item: (item[0], item[1]))
    return [item[2] for item in kept]


@dataclass
class NewsIngestStats:
    lines_read: int = 0
    articles: int = 0
    empty_dropped: int = 0
    fields_missing: list[int] = field(default_factory=list)


def read_news_jsonl(text: str, stats: NewsIngestStats | None = None) -> list[RawArticle]:
    """Parse a JSON-lines news file: one object per line with date,
    article, and optional title/publication fields.

    Records with an empty or missing article body are dropped (counted
    in stats when given). Malformed JSON or a bad date raises FormatError
    naming the line.
    """
    out: list[RawArticle] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if stats:
            stats.lines_read += 1
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"line {line_no}: invalid JSON ({exc.msg})")
        if not isinstance(obj, dict):
            raise FormatError(f"line {line_no}: expected a JSON object")
        raw_date = obj.get("date")
        if not isinstance(raw_date, str):
            raise FormatError(f"line {line_no}: missing or non-string 'date'")
        try:
            day = _parse_date(raw_date)
        except ValueError:
            raise FormatError(f"line {line_no}: bad date {raw_date!r}")
        body = obj.get("article")
        if not isinstance(body, str) or not body.strip():
            if stats:
                stats.empty_dropped += 1
            continue
        out.append(
            RawArticle(
                date=day,
                article=body,
                title=obj.get("title") or None,
                publication=obj.get("publication") or None,
            )
        )
    if stats:
        stats.articles = len(out)
    return out


def _parse_date(value: str) -> Date:
    # accept plain dates and full timestamps (date part taken)
    try:
        return Date.fromisoformat(value)
    except ValueError:
        if len(value) > 10:
            return Date.fromisoformat(value[:10])
        raise


def load_wordlist(text: str) -> set[str]:
    """One lowercase word per line; blank lines and '#' comments skipped."""
    words = set()
    for line in text.splitlines():
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(word.lower())
    return words
