"""Single CART tree for binary classification or residual regression."""

from __future__ import annotations

from typing import Any

import numpy as np

from ..errors import ValidationError
from . import _kernel

_NO_DEPTH_LIMIT = 2**31 - 1


def _as_matrix(X: Any) -> np.ndarray:
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValidationError(f"expected a 2-d feature array, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("feature array contains NaN or infinite values")
    return np.ascontiguousarray(arr)


def _as_binary_labels(y: Any, n_rows: int) -> np.ndarray:
    arr = np.asarray(y)
    if arr.shape != (n_rows,):
        raise ValidationError(f"labels have shape {arr.shape}, expected ({n_rows},)")
    vals = np.unique(arr)
    if not np.all(np.isin(vals, (0, 1))):
        raise ValidationError(f"labels must be 0 or 1, found {vals.tolist()}")
    return arr.astype(np.float64)


class DecisionTree:
    """Greedy binary tree with gini (classification) or variance (regression) splits.

    Zero-gain splits are taken when they are the best available, so
    parity-style targets that need two levels to separate still get
    split. Ties are broken toward the lowest feature index, then the
    lowest threshold. max_depth=0 yields a single leaf; max_depth=None
    means unlimited.
    """

    def __init__(
        self,
        max_depth: int | None = None,
        min_samples_leaf: int = 1,
        mode: str = "classification",
    ):
        if max_depth is not None and max_depth < 0:
            raise ValidationError(f"max_depth must be >= 0 or None, got {max_depth}")
        if min_samples_leaf < 1:
            raise ValidationError(f"min_samples_leaf must be >= 1, got {min_samples_leaf}")
        if mode not in ("classification", "regression"):
            raise ValidationError(f"unknown tree mode {mode!r}")
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.mode = mode
        self._arrays: tuple[np.ndarray, ...] | None = None
        self.n_features_: int | None = None

    def fit(self, X, y, hess=None, n_candidate_features: int | None = None, seed: int = 0):
        Xa = _as_matrix(X)
        n, d = Xa.shape
        if n == 0:
            raise ValidationError("cannot fit a tree on an empty dataset")
        if self.mode == "classification":
            target = _as_binary_labels(y, n)
        else:
            target = np.asarray(y, dtype=np.float64)
            if target.shape != (n,):
                raise ValidationError(f"targets have shape {target.shape}, expected ({n},)")
        if hess is None:
            hvec = np.ones(n, dtype=np.float64)
        else:
            hvec = np.asarray(hess, dtype=np.float64)
            if hvec.shape != (n,):
                raise ValidationError(f"hess has shape {hvec.shape}, expected ({n},)")
        depth = _NO_DEPTH_LIMIT if self.max_depth is None else self.max_depth
        k = d if n_candidate_features is None else min(max(n_candidate_features, 1), d)
        mode_code = _kernel.CLASSIFICATION if self.mode == "classification" else _kernel.REGRESSION
        self._arrays = _kernel.grow_tree(
            Xa, target, hvec, mode_code, depth, self.min_samples_leaf, k, np.uint64(seed)
        )
        self.n_features_ = d
        return self

    def _require_fit(self) -> tuple[np.ndarray, ...]:
        if self._arrays is None:
            raise ValidationError("tree has not been fitted")
        return self._arrays

    @property
    def n_nodes(self) -> int:
        return len(self._require_fit()[0])

    def predict_value(self, X) -> np.ndarray:
        """Leaf values per row: class-1 fraction or regression estimate."""
        feature, threshold, left, right, value, _ = self._require_fit()
        Xa = _as_matrix(X)
        if Xa.shape[1] != self.n_features_:
            raise ValidationError(
                f"input has {Xa.shape[1]} columns, tree was fitted on {self.n_features_}"
            )
        return _kernel.predict_tree(feature, threshold, left, right, value, Xa)

    def predict(self, X) -> np.ndarray:
        if self.mode != "classification":
            raise ValidationError("predict() is only defined for classification trees")
        return (self.predict_value(X) >= 0.5).astype(np.int64)

    def scale_leaf_values(self, factor: float) -> None:
        """Multiply every stored node value in place (boosting shrinkage)."""
        values = self._require_fit()[4]
        values *= factor

    def to_dict(self) -> dict:
        feature, threshold, left, right, value, count = self._require_fit()

        def node(i: int) -> dict:
            if feature[i] == _kernel.LEAF:
                return {"value": float(value[i]), "count": int(count[i])}
            return {
                "feature": int(feature[i]),
                "threshold": float(threshold[i]),
                "left": node(int(left[i])),
                "right": node(int(right[i])),
            }

        return node(0)

    @classmethod
    def from_dict(
        cls,
        data: dict,
        n_features: int,
        mode: str = "classification",
        max_depth: int | None = None,
        min_samples_leaf: int = 1,
    ) -> "DecisionTree":
        flat: list[dict] = []

        def walk(nd: dict) -> int:
            i = len(flat)
            flat.append(nd)
            if "feature" in nd:
                nd["_lid"] = walk(nd["left"])
                nd["_rid"] = walk(nd["right"])
            return i

        walk(data)
        n = len(flat)
        feature = np.full(n, _kernel.LEAF, np.int32)
        threshold = np.zeros(n, np.float64)
        left = np.full(n, _kernel.LEAF, np.int32)
        right = np.full(n, _kernel.LEAF, np.int32)
        value = np.zeros(n, np.float64)
        count = np.zeros(n, np.int32)
        for i, nd in enumerate(flat):
            if "feature" in nd:
                feature[i] = nd["feature"]
                threshold[i] = nd["threshold"]
                left[i] = nd.pop("_lid")
                right[i] = nd.pop("_rid")
            else:
                value[i] = nd["value"]
                count[i] = nd.get("count", 0)
        tree = cls(max_depth=max_depth, min_samples_leaf=min_samples_leaf, mode=mode)
        tree._arrays = (feature, threshold, left, right, value, count)
        tree.n_features_ = n_features
        return tree
