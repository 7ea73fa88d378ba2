"""Classifiers, cross-validation, and model persistence."""

from .boosting import GradientBoosting
from .cv import (
    DEFAULT_GRIDS,
    CVResult,
    GridSearchResult,
    grid_points,
    grid_search,
    kfold_cv,
    make_model,
    validate_grid,
)
from .forest import RandomForest
from .logreg import LogisticRegression
from .persist import LoadedModel, load_model, save_model
from .tree import DecisionTree

__all__ = [
    "DEFAULT_GRIDS",
    "CVResult",
    "DecisionTree",
    "GradientBoosting",
    "GridSearchResult",
    "LoadedModel",
    "LogisticRegression",
    "RandomForest",
    "grid_points",
    "grid_search",
    "kfold_cv",
    "load_model",
    "make_model",
    "save_model",
    "validate_grid",
]
