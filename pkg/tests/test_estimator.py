from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from semicech.errors import Disturbing, ModelError
from semicech.estimator import ContextualFractionTransformer, ContextualityClassifier, check_model
from semicech.generate import HALF, mix
from semicech.model import make_model
from semicech.scenario import build_scenario
from semicech.semiring import INTEGER, NONNEG_RATIONAL


def test_classifier(table1, det, prbox, uniform):
    clf = ContextualityClassifier().fit([table1, det])
    assert len(clf.verdicts_) == 2 and clf.verdicts_[0].contextual
    assert list(clf.predict([table1, det, prbox, uniform])) == [1, 0, 1, 0]
    assert clf.score([prbox, uniform], [1, 0]) == 1.0


def test_classifier_params():
    clf = ContextualityClassifier(cutoff=64)
    assert clf.get_params() == {"cutoff": 64}
    assert clone(clf).set_params(cutoff=32).cutoff == 32


def test_unfitted(det):
    with pytest.raises(NotFittedError):
        ContextualityClassifier().predict([det])
    with pytest.raises(NotFittedError):
        ContextualFractionTransformer().transform([det])


def test_fraction_transformer(prbox, det):
    out = ContextualFractionTransformer().fit_transform([prbox, det, mix(prbox, det, HALF)])
    assert out.shape == (3, 1) and out.dtype == object
    assert list(out[:, 0]) == [1, 0, Fraction(1, 2)]
    floats = ContextualFractionTransformer(as_float=True).fit_transform([prbox])
    assert floats.dtype == np.float64 and floats[0, 0] == 1.0


def test_validation(square):
    with pytest.raises(TypeError):
        check_model("prbox")
    z = make_model(square, INTEGER, {c: {"00": 1} for c in square.contexts})
    with pytest.raises(ModelError):
        check_model(z)
    s = build_scenario("abc", ["ab", "bc"], "01")
    bad = make_model(s, NONNEG_RATIONAL, {"ab": {"00": 1}, "bc": {"10": 1}})
    with pytest.raises(Disturbing):
        ContextualityClassifier().fit([bad])
    with pytest.raises(ValueError):
        ContextualityClassifier().fit([])
