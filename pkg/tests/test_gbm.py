import math

import numpy as np
import pytest

from trendcast.errors import ValidationError
from trendcast.models import GradientBoosting
from trendcast.models.boosting import logistic_loss


def noisy_problem(rng, n=200, flip=0.15):
    X = rng.normal(size=(n, 3))
    y = (X[:, 0] - 0.5 * X[:, 1] > 0).astype(int)
    noise = rng.random(n) < flip
    return X, np.where(noise, 1 - y, y)


def test_zero_rounds_predicts_prior(rng):
    X = rng.normal(size=(40, 2))
    y = np.array([1] * 30 + [0] * 10)
    m = GradientBoosting(n_rounds=0).fit(X, y)
    assert m.trees_ == []
    p = m.predict_proba(X)
    assert np.allclose(p, 0.75)
    assert m.init_score_ == pytest.approx(math.log(3.0))


def test_loss_monotone_on_noisy_data(rng):
    """The guard keeps training loss non-increasing round over round."""
    for _ in range(5):
        X, y = noisy_problem(rng)
        m = GradientBoosting(n_rounds=60, shrinkage=0.3, max_depth=3).fit(X, y)
        assert len(m.loss_history_) == 61
        assert len(m.trees_) == 60
        diffs = np.diff(m.loss_history_)
        assert np.all(diffs <= 1e-12)


def test_learns_noisy_boundary(rng):
    X, y = noisy_problem(rng, n=400, flip=0.1)
    m = GradientBoosting(n_rounds=80, shrinkage=0.2, max_depth=3).fit(X, y)
    assert np.mean(m.predict(X) == y) >= 0.85


def test_predict_equals_stored_tree_sum(rng):
    """Shrinkage and guard scaling live inside the stored leaf values."""
    X, y = noisy_problem(rng, n=120)
    m = GradientBoosting(n_rounds=20, shrinkage=0.1).fit(X, y)
    scores = np.full(len(X), m.init_score_)
    for tree in m.trees_:
        scores += tree.predict_value(X)
    assert np.allclose(m.predict_score(X), scores, rtol=0, atol=0)


def test_single_class_labels_rejected(rng):
    X = rng.normal(size=(20, 2))
    with pytest.raises(ValidationError, match="single class"):
        GradientBoosting(n_rounds=5).fit(X, np.ones(20, dtype=int))


def test_deterministic_refit(rng):
    X, y = noisy_problem(rng)
    a = GradientBoosting(n_rounds=25, shrinkage=0.2).fit(X, y)
    b = GradientBoosting(n_rounds=25, shrinkage=0.2).fit(X, y)
    assert a.loss_history_ == b.loss_history_
    assert np.array_equal(a.predict_proba(X), b.predict_proba(X))


def test_logistic_loss_reference():
    scores = np.array([0.0, 100.0, -100.0])
    y = np.array([1.0, 1.0, 0.0])
    # log(2) for the first, ~0 for the confident correct ones
    assert logistic_loss(scores, y) == pytest.approx(math.log(2.0) / 3.0)


def test_constructor_validation():
    with pytest.raises(ValidationError):
        GradientBoosting(n_rounds=-1)
    with pytest.raises(ValidationError):
        GradientBoosting(shrinkage=0.0)
