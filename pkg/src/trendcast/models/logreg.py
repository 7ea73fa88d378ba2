"""Logistic regression trained by full-batch gradient descent."""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError
from .tree import _as_binary_labels, _as_matrix


def sigmoid(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def loss_value(weights, bias, X, y, l2_penalty=0.0) -> float:
    """Mean cross-entropy plus 0.5 * l2 * ||w||^2 (bias not penalized)."""
    z = X @ weights + bias
    ce = np.logaddexp(0.0, z) - y * z
    return float(np.mean(ce) + 0.5 * l2_penalty * float(weights @ weights))


def loss_gradient(weights, bias, X, y, l2_penalty=0.0):
    """Gradient of loss_value; returns (d_weights, d_bias)."""
    n = X.shape[0]
    err = sigmoid(X @ weights + bias) - y
    gw = X.T @ err / n + l2_penalty * weights
    gb = float(np.mean(err))
    return gw, gb


class LogisticRegression:
    def __init__(self, learning_rate: float = 0.1, l2_penalty: float = 0.0, epochs: int = 500):
        if learning_rate <= 0:
            raise ValidationError(f"learning_rate must be > 0, got {learning_rate}")
        if l2_penalty < 0:
            raise ValidationError(f"l2_penalty must be >= 0, got {l2_penalty}")
        if epochs < 1:
            raise ValidationError(f"epochs must be >= 1, got {epochs}")
        self.learning_rate = learning_rate
        self.l2_penalty = l2_penalty
        self.epochs = epochs
        self.weights_: np.ndarray | None = None
        self.bias_: float = 0.0
        self.loss_history_: list[float] = []

    def fit(self, X, y):
        Xa = _as_matrix(X)
        n, d = Xa.shape
        if n == 0:
            raise ValidationError("cannot fit on an empty dataset")
        ya = _as_binary_labels(y, n)
        w = np.zeros(d, dtype=np.float64)
        b = 0.0
        history = [loss_value(w, b, Xa, ya, self.l2_penalty)]
        for _ in range(self.epochs):
            gw, gb = loss_gradient(w, b, Xa, ya, self.l2_penalty)
            w -= self.learning_rate * gw
            b -= self.learning_rate * gb
            history.append(loss_value(w, b, Xa, ya, self.l2_penalty))
        if not np.all(np.isfinite(w)) or not np.isfinite(b):
            raise ValidationError(
                "training diverged to non-finite weights; lower the learning rate"
            )
        self.weights_ = w
        self.bias_ = b
        self.loss_history_ = history
        return self

    def _scores(self, X) -> np.ndarray:
        if self.weights_ is None:
            raise ValidationError("model has not been fitted")
        Xa = _as_matrix(X)
        if Xa.shape[1] != len(self.weights_):
            raise ValidationError(
                f"input has {Xa.shape[1]} columns, model was fitted on {len(self.weights_)}"
            )
        return Xa @ self.weights_ + self.bias_

    def predict_proba(self, X) -> np.ndarray:
        return sigmoid(self._scores(X))

    def predict(self, X) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(np.int64)
