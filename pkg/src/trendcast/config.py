"""Run configuration: one YAML file plus command-line overrides.

Relative paths inside the file resolve against the file's own
directory, so a config travels with its data. Lexicon, stopword,
negator, and keyword files fall back to the packaged defaults under
trendcast/data when not set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import yaml

from .errors import ConfigError
from .features import DEFAULT_DROP
from .models.cv import DEFAULT_GRIDS, FAMILIES, validate_grid

SPLIT_MODES = ("chronological", "random")
AGGREGATION_MODES = ("mean", "sum")


@dataclass
class SplitConfig:
    ratio: float = 0.8
    mode: str = "chronological"
    seed: int = 7


@dataclass
class RunConfig:
    ticker: str
    prices: Path
    news: Path | None = None
    lexicon: Path | None = None
    stopwords: Path | None = None
    negators: Path | None = None
    keywords: Path | None = None
    indicator_window: int = 14
    aggregation: str = "mean"
    drop_columns: tuple[str, ...] = DEFAULT_DROP
    split: SplitConfig = field(default_factory=SplitConfig)
    cv_folds: int = 10
    grids: dict = field(default_factory=lambda: {f: dict(DEFAULT_GRIDS[f]) for f in FAMILIES})
    out: Path = Path("runs/latest")

    def validate(self) -> None:
        if not self.ticker:
            raise ConfigError("ticker must be a non-empty symbol")
        if self.indicator_window < 2:
            raise ConfigError(f"indicator_window must be >= 2, got {self.indicator_window}")
        if self.aggregation not in AGGREGATION_MODES:
            raise ConfigError(
                f"aggregation must be one of {AGGREGATION_MODES}, got {self.aggregation!r}"
            )
        if not (0.0 < self.split.ratio < 1.0):
            raise ConfigError(f"split ratio must be in (0, 1), got {self.split.ratio}")
        if self.split.mode not in SPLIT_MODES:
            raise ConfigError(
                f"split mode must be one of {SPLIT_MODES}, got {self.split.mode!r}"
            )
        if self.cv_folds < 2:
            raise ConfigError(f"cv_folds must be >= 2, got {self.cv_folds}")
        for family, grid in self.grids.items():
            validate_grid(family, grid)
        for name in ("prices", "news", "lexicon", "stopwords", "negators", "keywords"):
            p = getattr(self, name)
            if p is not None and not Path(p).exists():
                raise ConfigError(f"{name} file not found: {p}")


def packaged_data(filename: str) -> str:
    """Text of a file shipped under trendcast/data."""
    ref = resources.files("trendcast").joinpath("data", filename)
    try:
        return ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"no packaged data file {filename!r}")


def packaged_keywords_text(ticker: str) -> str:
    """Keyword list for a ticker: packaged file if shipped, else the symbol itself."""
    ref = resources.files("trendcast").joinpath("data", f"keywords_{ticker.lower()}.txt")
    try:
        return ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        return ticker.lower() + "\n"


_KNOWN_KEYS = {
    "ticker",
    "prices",
    "news",
    "lexicon",
    "stopwords",
    "negators",
    "keywords",
    "indicator_window",
    "aggregation",
    "drop_columns",
    "split",
    "cv_folds",
    "grids",
    "out",
}


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text()) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must contain a mapping at the top level")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "ticker" not in raw:
        raise ConfigError("config is missing required key 'ticker'")
    if "prices" not in raw:
        raise ConfigError("config is missing required key 'prices'")

    base = path.parent

    def to_path(value) -> Path:
        p = Path(str(value))
        return p if p.is_absolute() else base / p

    split_raw = raw.get("split") or {}
    if not isinstance(split_raw, dict):
        raise ConfigError("config key 'split' must be a mapping (ratio, mode, seed)")
    split = SplitConfig(
        ratio=float(split_raw.get("ratio", 0.8)),
        mode=str(split_raw.get("mode", "chronological")),
        seed=int(split_raw.get("seed", 7)),
    )

    grids_raw = raw.get("grids")
    if grids_raw is None:
        grids = {f: dict(DEFAULT_GRIDS[f]) for f in FAMILIES}
    else:
        if not isinstance(grids_raw, dict):
            raise ConfigError("config key 'grids' must map family -> parameter grid")
        grids = {}
        for family in FAMILIES:
            grids[family] = dict(grids_raw.get(family, DEFAULT_GRIDS[family]))

    drop = raw.get("drop_columns", list(DEFAULT_DROP))
    if not isinstance(drop, (list, tuple)):
        raise ConfigError("config key 'drop_columns' must be a list of column names")

    cfg = RunConfig(
        ticker=str(raw["ticker"]),
        prices=to_path(raw["prices"]),
        news=to_path(raw["news"]) if raw.get("news") else None,
        lexicon=to_path(raw["lexicon"]) if raw.get("lexicon") else None,
        stopwords=to_path(raw["stopwords"]) if raw.get("stopwords") else None,
        negators=to_path(raw["negators"]) if raw.get("negators") else None,
        keywords=to_path(raw["keywords"]) if raw.get("keywords") else None,
        indicator_window=int(raw.get("indicator_window", 14)),
        aggregation=str(raw.get("aggregation", "mean")),
        drop_columns=tuple(drop),
        split=split,
        cv_folds=int(raw.get("cv_folds", 10)),
        grids=grids,
        out=to_path(raw.get("out", "runs/latest")),
    )
    cfg.validate()
    return cfg


def apply_overrides(cfg: RunConfig, seed=None, ticker=None, split_mode=None, out=None) -> RunConfig:
    """Command-line flags win over file values."""
    if seed is not None:
        cfg.split.seed = int(seed)
    if ticker is not None:
        cfg.ticker = ticker
    if split_mode is not None:
        mapped = {"chrono": "chronological", "random": "random"}.get(split_mode)
        if mapped is None:
            raise ConfigError(f"split mode must be 'chrono' or 'random', got {split_mode!r}")
        cfg.split.mode = mapped
    if out is not None:
        cfg.out = Path(out)
    cfg.validate()
    return cfg
