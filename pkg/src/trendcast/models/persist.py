"""Save and load trained models as JSON.

Floats are serialized with repr semantics (json keeps full double
precision), so a load followed by predict reproduces the original
outputs bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import SchemaError
from ..features import ScalerState
from .boosting import GradientBoosting
from .forest import RandomForest
from .logreg import LogisticRegression
from .tree import DecisionTree

FORMAT_VERSION = 1


def _tree_hyperparams(model) -> dict:
    return {"max_depth": model.max_depth, "min_samples_leaf": model.min_samples_leaf}


def model_payload(model) -> dict:
    if isinstance(model, LogisticRegression):
        if model.weights_ is None:
            raise SchemaError("cannot save an unfitted model")
        return {
            "model_type": "logreg",
            "hyperparams": {
                "learning_rate": model.learning_rate,
                "l2_penalty": model.l2_penalty,
                "epochs": model.epochs,
            },
            "parameters": {
                "weights": [float(w) for w in model.weights_],
                "bias": float(model.bias_),
            },
        }
    if isinstance(model, RandomForest):
        if not model.trees_:
            raise SchemaError("cannot save an unfitted model")
        return {
            "model_type": "random_forest",
            "hyperparams": {
                "n_trees": model.n_trees,
                "features_per_split": model.features_per_split,
                "bootstrap": model.bootstrap,
                "seed": model.seed,
                **_tree_hyperparams(model),
            },
            "parameters": {
                "n_features": model.trees_[0].n_features_,
                "trees": [t.to_dict() for t in model.trees_],
            },
        }
    if isinstance(model, GradientBoosting):
        if model.init_score_ is None:
            raise SchemaError("cannot save an unfitted model")
        return {
            "model_type": "gbm",
            "hyperparams": {
                "n_rounds": model.n_rounds,
                "shrinkage": model.shrinkage,
                **_tree_hyperparams(model),
            },
            "parameters": {
                "init_score": float(model.init_score_),
                "n_features": model.trees_[0].n_features_ if model.trees_ else 0,
                "trees": [t.to_dict() for t in model.trees_],
            },
        }
    raise SchemaError(f"cannot serialize model of type {type(model).__name__}")


def model_from_payload(data: dict):
    kind = data.get("model_type")
    hp = data.get("hyperparams", {})
    params = data.get("parameters", {})
    if kind == "logreg":
        model = LogisticRegression(**hp)
        model.weights_ = np.array(params["weights"], dtype=np.float64)
        model.bias_ = float(params["bias"])
        return model
    if kind == "random_forest":
        model = RandomForest(**hp)
        model.trees_ = [
            DecisionTree.from_dict(
                t,
                n_features=params["n_features"],
                mode="classification",
                max_depth=hp.get("max_depth"),
                min_samples_leaf=hp.get("min_samples_leaf", 1),
            )
            for t in params["trees"]
        ]
        return model
    if kind == "gbm":
        model = GradientBoosting(**hp)
        model.init_score_ = float(params["init_score"])
        model.trees_ = [
            DecisionTree.from_dict(
                t,
                n_features=params["n_features"],
                mode="regression",
                max_depth=hp.get("max_depth"),
                min_samples_leaf=hp.get("min_samples_leaf", 1),
            )
            for t in params["trees"]
        ]
        return model
    raise SchemaError(f"unknown model_type {kind!r} in model file")


@dataclass
class LoadedModel:
    model: object
    feature_names: list[str]
    scaler: ScalerState | None


def save_model(path, model, feature_names, scaler: ScalerState | None = None) -> None:
    payload = model_payload(model)
    payload["format_version"] = FORMAT_VERSION
    payload["feature_names"] = list(feature_names)
    payload["scaler"] = scaler.to_dict() if scaler is not None else None
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def load_model(path) -> LoadedModel:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"model file {path} is not valid JSON: {exc}") from exc
    for key in ("model_type", "parameters", "feature_names"):
        if key not in data:
            raise SchemaError(f"model file {path} is missing key {key!r}")
    scaler = ScalerState.from_dict(data["scaler"]) if data.get("scaler") else None
    return LoadedModel(
        model=model_from_payload(data),
        feature_names=list(data["feature_names"]),
        scaler=scaler,
    )
