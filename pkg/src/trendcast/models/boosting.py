"""Gradient boosting with regression trees on logistic-loss residuals."""

from __future__ import annotations

import math

import numpy as np

from ..errors import ValidationError
from .logreg import sigmoid
from .tree import DecisionTree, _as_binary_labels, _as_matrix

# retry budget for the non-increasing-loss guard; 2**-60 puts any
# update below float resolution, so the fallback to 0 is unreachable in
# practice but keeps the loop finite
_MAX_HALVINGS = 60


def logistic_loss(scores: np.ndarray, y: np.ndarray) -> float:
    """Mean logistic loss of raw scores against 0/1 labels."""
    return float(np.mean(np.logaddexp(0.0, scores) - y * scores))


class GradientBoosting:
    """Additive model of shrunken regression trees fitted to residuals.

    Each round fits a tree to y - sigmoid(F) with Newton leaf values
    (residual sum over hessian sum). If a shrunken update would raise
    the training loss, its scale is halved until the loss is
    non-increasing, so loss_history_ is monotone by construction. The
    final scale is folded into the stored leaf values, which keeps
    prediction a plain sum over trees.
    """

    def __init__(
        self,
        n_rounds: int = 100,
        shrinkage: float = 0.1,
        max_depth: int = 3,
        min_samples_leaf: int = 1,
    ):
        if n_rounds < 0:
            raise ValidationError(f"n_rounds must be >= 0, got {n_rounds}")
        if shrinkage <= 0:
            raise ValidationError(f"shrinkage must be > 0, got {shrinkage}")
        self.n_rounds = n_rounds
        self.shrinkage = shrinkage
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.init_score_: float | None = None
        self.trees_: list[DecisionTree] = []
        self.loss_history_: list[float] = []

    def fit(self, X, y):
        Xa = _as_matrix(X)
        n = Xa.shape[0]
        if n == 0:
            raise ValidationError("cannot fit on an empty dataset")
        ya = _as_binary_labels(y, n)
        pos = float(np.sum(ya))
        if pos == 0.0 or pos == n:
            raise ValidationError(
                "training labels contain a single class; the initial log-odds is undefined"
            )
        self.init_score_ = math.log(pos / (n - pos))
        scores = np.full(n, self.init_score_)
        trees: list[DecisionTree] = []
        history = [logistic_loss(scores, ya)]
        for _ in range(self.n_rounds):
            p = sigmoid(scores)
            residual = ya - p
            hess = np.maximum(p * (1.0 - p), 1e-12)
            tree = DecisionTree(
                max_depth=self.max_depth,
                min_samples_leaf=self.min_samples_leaf,
                mode="regression",
            )
            tree.fit(Xa, residual, hess=hess)
            update = tree.predict_value(Xa)
            scale = self.shrinkage
            for _attempt in range(_MAX_HALVINGS):
                if logistic_loss(scores + scale * update, ya) <= history[-1]:
                    break
                scale *= 0.5
            else:
                scale = 0.0
            tree.scale_leaf_values(scale)
            scores += scale * update
            trees.append(tree)
            history.append(logistic_loss(scores, ya))
        self.trees_ = trees
        self.loss_history_ = history
        return self

    def predict_score(self, X) -> np.ndarray:
        """Raw additive score: init log-odds plus the stored tree outputs."""
        if self.init_score_ is None:
            raise ValidationError("model has not been fitted")
        Xa = _as_matrix(X)
        scores = np.full(Xa.shape[0], self.init_score_)
        for tree in self.trees_:
            scores += tree.predict_value(Xa)
        return scores

    def predict_proba(self, X) -> np.ndarray:
        return sigmoid(self.predict_score(X))

    def predict(self, X) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(np.int64)
