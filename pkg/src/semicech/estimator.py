"""scikit-learn style wrappers over collections of empirical models.

Nothing is learned: ``fit`` validates its inputs and records per-model
results, ``predict`` / ``transform`` run the exact decision procedures.
The wrappers exist so that model collections drop into pipelines and
parameter grids (``get_params`` / ``set_params``).
"""

from __future__ import annotations

from typing import Iterable

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .analysis import contextual_fraction, is_r_contextual
from .errors import ModelError
from .model import DEFAULT_CUTOFF, EmpiricalModel, require_nondisturbing


def check_model(m, require_semifield: bool = True) -> EmpiricalModel:
    """Validate one input: an :class:`EmpiricalModel`, non-disturbing, over a semifield."""
    if not isinstance(m, EmpiricalModel):
        raise TypeError(f"expected an EmpiricalModel, got {type(m).__name__}")
    require_nondisturbing(m)
    if require_semifield and not m.semiring.has_division:
        raise ModelError(f"{m.semiring.name} models cannot be analyzed; a semifield is required")
    return m


def check_models(X: Iterable, require_semifield: bool = True) -> list[EmpiricalModel]:
    models = [check_model(m, require_semifield) for m in X]
    if not models:
        raise ValueError("expected at least one model")
    return models


class ContextualityClassifier(ClassifierMixin, BaseEstimator):
    """Label models 1 (contextual) or 0 (noncontextual) via the generalized obstruction.

    After ``fit``: ``verdicts_`` holds the :class:`ContextualityVerdict` of
    every training model and ``classes_`` is ``[0, 1]``.
    """

    def __init__(self, cutoff: int = DEFAULT_CUTOFF):
        self.cutoff = cutoff

    def fit(self, X, y=None):
        models = check_models(X)
        self.verdicts_ = [is_r_contextual(m, self.cutoff) for m in models]
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "classes_"):
            raise NotFittedError("call fit before predict")
        models = check_models(X)
        return np.array([int(is_r_contextual(m, self.cutoff).contextual) for m in models])


class ContextualFractionTransformer(TransformerMixin, BaseEstimator):
    """Map nonneg-rational models to a column of exact contextual fractions.

    The output has dtype ``object`` so that values stay
    :class:`fractions.Fraction`; pass ``as_float=True`` for a float column.
    """

    def __init__(self, cutoff: int = DEFAULT_CUTOFF, as_float: bool = False):
        self.cutoff = cutoff
        self.as_float = as_float

    def fit(self, X, y=None):
        check_models(X)
        self.n_features_out_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "n_features_out_"):
            raise NotFittedError("call fit before transform")
        values = [contextual_fraction(m, self.cutoff).value for m in check_models(X)]
        if self.as_float:
            return np.array([[float(v)] for v in values])
        out = np.empty((len(values), 1), dtype=object)
        out[:, 0] = values
        return out
