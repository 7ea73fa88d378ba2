"""Next-day stock trend classification from OHLCV prices and news sentiment.

The pipeline turns a daily price series into technical indicators (SMA,
RSI, stochastic %K), scores ticker-relevant news with a valence
lexicon, joins both into a feature matrix, and trains logistic
regression, random forest, and gradient boosting classifiers on the
up/down label of the next session.
"""

from .errors import (
    ConfigError,
    FormatError,
    LabelUnavailableError,
    PipelineError,
    SchemaError,
    StageError,
    ValidationError,
    WarmupError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "FormatError",
    "LabelUnavailableError",
    "PipelineError",
    "SchemaError",
    "StageError",
    "ValidationError",
    "WarmupError",
    "__version__",
]
