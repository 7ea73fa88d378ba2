"""Random forest of CART trees with bootstrap rows and per-split feature draws."""

from __future__ import annotations

import math

import numpy as np

from ..errors import ValidationError
from .tree import DecisionTree, _as_binary_labels, _as_matrix


def resolve_feature_count(setting, n_features: int) -> int:
    """Map a features_per_split setting to a concrete count.

    Accepts "sqrt" (ceil of the square root), None (all features), or a
    positive int, capped at n_features.
    """
    if setting is None:
        return n_features
    if setting == "sqrt":
        return min(math.ceil(math.sqrt(n_features)), n_features)
    if isinstance(setting, int) and not isinstance(setting, bool) and setting >= 1:
        return min(setting, n_features)
    raise ValidationError(
        f"features_per_split must be 'sqrt', None, or a positive int, got {setting!r}"
    )


class RandomForest:
    """Majority vote over bootstrapped trees; a tied vote predicts class 1.

    Each tree gets an independent RNG stream derived from (seed, tree
    index), so refitting with the same seed reproduces the forest
    exactly and changing n_trees leaves earlier trees unchanged.
    """

    def __init__(
        self,
        n_trees: int = 100,
        max_depth: int | None = None,
        min_samples_leaf: int = 1,
        features_per_split="sqrt",
        bootstrap: bool = True,
        seed: int = 0,
    ):
        if n_trees < 1:
            raise ValidationError(f"n_trees must be >= 1, got {n_trees}")
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.features_per_split = features_per_split
        self.bootstrap = bootstrap
        self.seed = seed
        self.trees_: list[DecisionTree] = []

    def fit(self, X, y):
        Xa = _as_matrix(X)
        n, d = Xa.shape
        if n == 0:
            raise ValidationError("cannot fit on an empty dataset")
        ya = _as_binary_labels(y, n)
        k = resolve_feature_count(self.features_per_split, d)
        trees = []
        for t in range(self.n_trees):
            ss = np.random.SeedSequence((self.seed, t))
            boot_state, split_state = ss.generate_state(2)
            if self.bootstrap:
                rows = np.random.default_rng(int(boot_state)).integers(0, n, size=n)
                Xt, yt = Xa[rows], ya[rows]
            else:
                Xt, yt = Xa, ya
            tree = DecisionTree(
                max_depth=self.max_depth,
                min_samples_leaf=self.min_samples_leaf,
                mode="classification",
            )
            tree.fit(Xt, yt, n_candidate_features=k, seed=int(split_state) + 1)
            trees.append(tree)
        self.trees_ = trees
        return self

    def _require_fit(self) -> list[DecisionTree]:
        if not self.trees_:
            raise ValidationError("model has not been fitted")
        return self.trees_

    def predict_proba(self, X) -> np.ndarray:
        """Fraction of trees voting class 1."""
        trees = self._require_fit()
        Xa = _as_matrix(X)
        votes = np.zeros(Xa.shape[0])
        for tree in trees:
            votes += (tree.predict_value(Xa) >= 0.5).astype(np.float64)
        return votes / len(trees)

    def predict(self, X) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(np.int64)
