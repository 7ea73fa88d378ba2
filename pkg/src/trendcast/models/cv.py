"""K-fold cross-validation and exhaustive grid search."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, ValidationError
from ..metrics import METRIC_NAMES, evaluate
from .boosting import GradientBoosting
from .forest import RandomForest, resolve_feature_count
from .logreg import LogisticRegression

FAMILIES = ("logreg", "random_forest", "gbm")

DEFAULT_GRIDS = {
    "logreg": {
        "learning_rate": [0.01, 0.1],
        "l2_penalty": [0.0, 0.01, 0.1],
        "epochs": [500],
    },
    "random_forest": {
        "n_trees": [50, 100, 200],
        "max_depth": [4, 6, 10],
        "features_per_split": ["sqrt"],
    },
    "gbm": {
        "n_rounds": [100, 300],
        "shrinkage": [0.05, 0.1],
        "max_depth": [3, 5],
    },
}

def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _feature_setting_ok(v) -> bool:
    try:
        resolve_feature_count(v, 8)
    except ValidationError:
        return False
    return True


_PARAM_CHECKS = {
    "logreg": {
        "learning_rate": lambda v: _is_num(v) and v > 0,
        "l2_penalty": lambda v: _is_num(v) and v >= 0,
        "epochs": lambda v: _is_int(v) and v >= 1,
    },
    "random_forest": {
        "n_trees": lambda v: _is_int(v) and v >= 1,
        "max_depth": lambda v: v is None or (_is_int(v) and v >= 0),
        "min_samples_leaf": lambda v: _is_int(v) and v >= 1,
        "features_per_split": _feature_setting_ok,
        "bootstrap": lambda v: isinstance(v, bool),
    },
    "gbm": {
        "n_rounds": lambda v: _is_int(v) and v >= 0,
        "shrinkage": lambda v: _is_num(v) and v > 0,
        "max_depth": lambda v: _is_int(v) and v >= 0,
        "min_samples_leaf": lambda v: _is_int(v) and v >= 1,
    },
}


def make_model(family: str, params: dict, seed: int = 0):
    """Instantiate a classifier; seed only matters for randomized families."""
    if family == "logreg":
        return LogisticRegression(**params)
    if family == "random_forest":
        return RandomForest(seed=seed, **params)
    if family == "gbm":
        return GradientBoosting(**params)
    raise ConfigError(f"unknown model family {family!r}; expected one of {FAMILIES}")


def validate_grid(family: str, grid: dict) -> None:
    """Reject a malformed grid before any training starts."""
    if family not in _PARAM_CHECKS:
        raise ConfigError(f"unknown model family {family!r}; expected one of {FAMILIES}")
    checks = _PARAM_CHECKS[family]
    if not grid:
        raise ConfigError(f"empty parameter grid for {family}")
    for name, values in grid.items():
        if name not in checks:
            raise ConfigError(
                f"unknown {family} parameter {name!r}; known: {sorted(checks)}"
            )
        if not isinstance(values, (list, tuple)) or len(values) == 0:
            raise ConfigError(f"grid entry {name!r} must be a non-empty list")
        for v in values:
            if not checks[name](v):
                raise ConfigError(f"invalid value {v!r} for {family} parameter {name!r}")


def grid_points(grid: dict) -> list[dict]:
    """Cartesian product over sorted parameter names, deterministic order."""
    names = sorted(grid)
    return [dict(zip(names, combo)) for combo in itertools.product(*(grid[n] for n in names))]


def _point_seed(master_seed: int, family: str, params: dict) -> int:
    # derived from parameter content, not grid position, so adding or
    # reordering grid entries never changes another point's result
    canon = json.dumps({"family": family, "params": params}, sort_keys=True)
    digest = int.from_bytes(hashlib.sha256(canon.encode("utf-8")).digest()[:8], "big")
    return int(np.random.SeedSequence((master_seed, digest)).generate_state(1)[0])


@dataclass
class CVResult:
    family: str
    params: dict
    k: int
    fold_metrics: list[dict[str, float]]
    mean: dict[str, float]
    std: dict[str, float]
    skipped_folds: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "k": self.k,
            "fold_metrics": self.fold_metrics,
            "mean": self.mean,
            "std": self.std,
            "skipped_folds": self.skipped_folds,
        }


def _fold_blocks(n: int, k: int, mode: str, seed: int) -> list[np.ndarray]:
    if k < 2:
        raise ConfigError(f"cross-validation needs k >= 2, got {k}")
    if n < k:
        raise ValidationError(f"cannot build {k} folds from {n} rows")
    if mode == "chronological":
        order = np.arange(n)
    elif mode == "random":
        order = np.random.default_rng(seed).permutation(n)
    else:
        raise ConfigError(f"unknown fold mode {mode!r}; expected 'chronological' or 'random'")
    base, extra = divmod(n, k)
    blocks = []
    at = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        blocks.append(order[at : at + size])
        at += size
    return blocks


def _scale_fold(Xtr: np.ndarray, Xte: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # same map as the feature scaler: train extremes to [-1, 1],
    # constant training columns to 0, fitted on the fold's train part
    mins = Xtr.min(axis=0)
    span = Xtr.max(axis=0) - mins
    nz = span != 0.0

    def apply(arr: np.ndarray) -> np.ndarray:
        out = np.zeros_like(arr)
        out[:, nz] = -1.0 + 2.0 * (arr[:, nz] - mins[nz]) / span[nz]
        return out

    return apply(Xtr), apply(Xte)


def kfold_cv(
    X,
    y,
    family: str,
    params: dict,
    k: int = 10,
    mode: str = "chronological",
    seed: int = 0,
) -> CVResult:
    """Score one parameter point with k-fold CV.

    Folds are contiguous row blocks; mode "random" shuffles rows first
    with the given seed. A candidate scaler is fitted on each fold's
    training part only. Folds whose training part has a single class
    are skipped and listed in skipped_folds; an error is raised only if
    every fold is degenerate.
    """
    Xa = np.asarray(X, dtype=np.float64)
    ya = np.asarray(y)
    if Xa.ndim != 2 or Xa.shape[0] != ya.shape[0]:
        raise ValidationError(
            f"feature/label shapes do not align: {Xa.shape} vs {ya.shape}"
        )
    blocks = _fold_blocks(Xa.shape[0], k, mode, seed)
    point_seed = _point_seed(seed, family, params)
    fold_metrics: list[dict[str, float]] = []
    skipped: list[int] = []
    for i, test_idx in enumerate(blocks):
        train_idx = np.concatenate([b for j, b in enumerate(blocks) if j != i])
        ytr, yte = ya[train_idx], ya[test_idx]
        if len(np.unique(ytr)) < 2:
            skipped.append(i)
            continue
        Xtr, Xte = _scale_fold(Xa[train_idx], Xa[test_idx])
        fold_seed = int(np.random.SeedSequence((point_seed, i)).generate_state(1)[0])
        model = make_model(family, params, seed=fold_seed)
        model.fit(Xtr, ytr)
        report = evaluate(yte, model.predict(Xte))
        fold_metrics.append({name: report.values[name] for name in METRIC_NAMES})
    if not fold_metrics:
        raise ValidationError("every fold had single-class training labels")
    mean = {
        name: float(np.mean([fm[name] for fm in fold_metrics])) for name in METRIC_NAMES
    }
    std = {
        name: float(np.std([fm[name] for fm in fold_metrics])) for name in METRIC_NAMES
    }
    return CVResult(
        family=family,
        params=dict(params),
        k=k,
        fold_metrics=fold_metrics,
        mean=mean,
        std=std,
        skipped_folds=skipped,
    )


@dataclass
class GridSearchResult:
    best: CVResult
    results: list[CVResult]

    @property
    def best_params(self) -> dict:
        return self.best.params


def grid_search(
    X,
    y,
    family: str,
    grid: dict | None = None,
    k: int = 10,
    metric: str = "accuracy",
    mode: str = "chronological",
    seed: int = 0,
) -> GridSearchResult:
    """Exhaustive search over the grid, scored by mean CV metric.

    The whole grid is validated before any point is trained. Ties keep
    the first point in deterministic grid order (sorted names, then
    value order as written).
    """
    if grid is None:
        grid = DEFAULT_GRIDS.get(family)
        if grid is None:
            raise ConfigError(f"unknown model family {family!r}; expected one of {FAMILIES}")
    if metric not in METRIC_NAMES:
        raise ConfigError(f"unknown metric {metric!r}; expected one of {METRIC_NAMES}")
    validate_grid(family, grid)
    results = []
    best = None
    for params in grid_points(grid):
        result = kfold_cv(X, y, family, params, k=k, mode=mode, seed=seed)
        results.append(result)
        if best is None or result.mean[metric] > best.mean[metric]:
            best = result
    return GridSearchResult(best=best, results=results)
