import numpy as np
import pytest
from sklearn.base import clone

from hypermin.errors import UsageError
from hypermin.estimators import MinimalEdgeFilter, MinimizationSizeModel
from hypermin.sampler import sample_incidence

X = np.array([[1, 1, 0], [0, 1, 0], [0, 1, 1], [1, 0, 1], [0, 1, 0]])


def test_filter_fit_transform():
    f = MinimalEdgeFilter()
    out = f.fit_transform(X)
    assert out.tolist() == [[False, True, False], [True, False, True]]
    assert (f.n_edges_, f.n_distinct_, f.n_features_in_) == (5, 4, 3)
    assert f.transform(np.array([[1, 0, 0]])).astype(int).tolist() == [[0, 1, 0], [1, 0, 0]]
    assert f.predict(np.array([[1, 1, 1], [0, 1, 0], [1, 0, 0]])).tolist() == [False, True, True]


@pytest.mark.parametrize("algo", ["naive", "sorted", "stream"])
def test_filter_algorithms_agree(algo):
    S = sample_incidence(20, 300, 0.4, seed=4)
    ref = MinimalEdgeFilter().fit(S).minimal_edges_
    assert (MinimalEdgeFilter(algo=algo).fit(S).minimal_edges_ == ref).all()


def test_filter_params_and_validation():
    f = MinimalEdgeFilter(algo="stream")
    assert clone(f).get_params() == {"algo": "stream"}
    with pytest.raises(UsageError):
        MinimalEdgeFilter(algo="bogus").fit(X)
    with pytest.raises(UsageError):
        MinimalEdgeFilter().fit(np.array([[0, 2]]))
    f.fit(X)
    with pytest.raises(UsageError):
        f.transform(np.ones((1, 4)))


def test_size_model():
    S = sample_incidence(12, 256, 0.5, seed=8)
    model = MinimizationSizeModel(p=0.5).fit(S)
    assert model.regime_.regime == "info_theoretic"
    pred = model.predict([1, 256])
    assert pred[0] == pytest.approx(1.0) and pred[1] == pytest.approx(model.expected_min_)
    lo, hi = model.predict_interval([256])
    assert lo[0] <= pred[1] <= hi[0]
    est = MinimizationSizeModel().fit(S)
    assert abs(est.p_ - 0.5) < 0.02
    assert clone(model).get_params() == {"p": 0.5, "eps": 0.05, "epsp": 0.05}
    assert MinimizationSizeModel(p=0.0).fit(S).regime_ is None
    with pytest.raises(UsageError):
        model.predict([0])
