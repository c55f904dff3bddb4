"""scikit-learn style wrappers.

Rows of an incidence matrix are edges and columns are vertices, so a
hypergraph over ``[n]`` with ``m`` edges is an ``(m, n)`` 0/1 array.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bounds import (
    DEFAULT_EPS,
    DEFAULT_EPSP,
    DerivedParams,
    expected_min_exact,
    expected_min_sandwich,
    regime_classify,
)
from .core import MultiHypergraph, incidence_from_words, words_from_incidence
from .errors import UsageError
from .minimize import ALGORITHMS, minimal_rows, minimize
from .validation import check_incidence, check_margin, check_positive_int, check_probability

_PREDICT_BLOCK = 1 << 22


def _sorted_incidence(words: np.ndarray, n: int) -> np.ndarray:
    rows = minimal_rows(words, n)
    return incidence_from_words(words[rows], n)


class MinimalEdgeFilter(TransformerMixin, BaseEstimator):
    """Keep only the inclusion-minimal rows of an incidence matrix.

    ``fit`` remembers the minimal edges of the training hypergraph;
    ``transform`` returns the minimal edges of the union of those and the new
    rows, so ``fit_transform(X)`` is simply the minimization of ``X``.
    Rows come out ordered by cardinality, duplicates collapsed.
    """

    def __init__(self, algo: str = "sorted"):
        self.algo = algo

    def _check_algo(self) -> None:
        if self.algo not in ALGORITHMS:
            raise UsageError(f"algo must be one of {ALGORITHMS}, got {self.algo!r}")

    def fit(self, X, y=None):
        self._check_algo()
        X = check_incidence(X)
        H = MultiHypergraph.from_incidence(X)
        self.minimal_edges_ = minimize(H, self.algo).to_hypergraph().to_incidence()
        self.n_features_in_ = X.shape[1]
        self.n_edges_ = X.shape[0]
        self.n_distinct_ = len(np.unique(X, axis=0))
        return self

    def _check_input(self, X) -> np.ndarray:
        check_is_fitted(self, "minimal_edges_")
        X = check_incidence(X, allow_empty=True)
        if X.shape[1] != self.n_features_in_:
            raise UsageError(
                f"X has {X.shape[1]} vertices but the filter was fitted on {self.n_features_in_}"
            )
        return X

    def transform(self, X) -> np.ndarray:
        X = self._check_input(X)
        words = words_from_incidence(np.vstack([self.minimal_edges_, X]))
        if len(words) == 0:
            return np.zeros((0, self.n_features_in_), dtype=bool)
        return _sorted_incidence(words, self.n_features_in_)

    def predict(self, X) -> np.ndarray:
        """``True`` for rows that no fitted minimal edge properly contains in."""
        X = self._check_input(X)
        fitted = words_from_incidence(self.minimal_edges_)
        rows = words_from_incidence(X)
        out = np.ones(len(rows), dtype=bool)
        if len(fitted) == 0:
            return out
        step = max(1, _PREDICT_BLOCK // (len(fitted) * fitted.shape[1]))
        for lo in range(0, len(rows), step):
            block = rows[lo : lo + step, None, :]
            inside = ((fitted[None, :, :] & ~block) == 0).all(axis=2)
            differs = (fitted[None, :, :] != block).any(axis=2)
            out[lo : lo + step] = ~(inside & differs).any(axis=1)
        return out


class MinimizationSizeModel(BaseEstimator):
    """Predict ``E|min|`` of ``m`` random edges from an observed edge sample.

    ``fit`` reads the universe size from the column count and, unless ``p``
    is fixed, estimates the inclusion probability as the mean entry.
    """

    def __init__(self, p: float | None = None, eps: float = DEFAULT_EPS, epsp: float = DEFAULT_EPSP):
        self.p = p
        self.eps = eps
        self.epsp = epsp

    def fit(self, X, y=None):
        X = check_incidence(X)
        check_margin(self.eps, name="eps")
        check_margin(self.epsp, name="epsp")
        p = float(X.mean()) if self.p is None else check_probability(self.p)
        n, m = X.shape[1], X.shape[0]
        self.n_features_in_ = n
        self.p_ = p
        self.n_edges_ = m
        self.expected_min_ = float(expected_min_exact(n, p, m))
        if 0 < p < 1:
            self.derived_ = DerivedParams.from_m(n, p, m)
            self.regime_ = regime_classify(self.derived_, self.eps, self.epsp)
        else:
            self.derived_ = None
            self.regime_ = None
        return self

    def _ms(self, M) -> list[int]:
        check_is_fitted(self, "p_")
        flat = np.asarray(M).ravel()
        return [check_positive_int(int(v) if float(v).is_integer() else v, name="m") for v in flat]

    def predict(self, M) -> np.ndarray:
        """Exact expected number of minimal edges for each ``m`` in ``M``."""
        return np.array([float(expected_min_exact(self.n_features_in_, self.p_, m)) for m in self._ms(M)])

    def predict_interval(self, M) -> tuple[np.ndarray, np.ndarray]:
        """Analytic lower and upper bounds for each ``m`` in ``M``."""
        pairs = [expected_min_sandwich(self.n_features_in_, self.p_, m) for m in self._ms(M)]
        return (np.array([float(s.lower) for s in pairs]), np.array([float(s.upper) for s in pairs]))
