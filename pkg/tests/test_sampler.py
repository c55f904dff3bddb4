import math

import numpy as np
import pytest

from hypermin.core import EdgeSet
from hypermin.errors import DomainError, ResourceCapError, UsageError
from hypermin.sampler import (
    GENERATOR_VERSION,
    MAX_EDGES,
    ModelParams,
    TrialStream,
    bernoulli_threshold,
    derive_seed,
    sample_edge,
    sample_hypergraph,
    sample_incidence,
    sample_words,
)
from hypermin.core import words_from_incidence


def test_degenerate_probabilities():
    assert all(e == EdgeSet(3, 0) for e in sample_hypergraph(ModelParams(3, 5, 0.0, seed=9)))
    assert all(e == EdgeSet.full(3) for e in sample_hypergraph(ModelParams(3, 5, 1.0, seed=9)))
    stream = TrialStream(1, 0)
    assert sample_edge(7, 0.0, stream) == EdgeSet(7, 0)
    assert sample_edge(7, 1.0, stream) == EdgeSet.full(7)


def test_sample_edge_consumes_n_draws():
    s = TrialStream(5, 2)
    sample_edge(13, 0.4, s)
    assert s.position == 13
    sample_edge(13, 0.4, s)
    assert s.position == 26


def test_sample_edge_matches_trial_rows():
    X = sample_incidence(9, 4, 0.5, seed=77)
    for j in range(4):
        e = sample_edge(9, 0.5, TrialStream(77, j))
        assert e.bits == int(sum(1 << v for v in range(9) if X[j, v]))


def test_determinism_and_order_independence():
    a = sample_hypergraph(ModelParams(10, 300, 0.3, seed=42))
    b = sample_hypergraph(ModelParams(10, 300, 0.3, seed=42))
    assert a == b
    tail = sample_incidence(10, 100, 0.3, seed=42, start=200)
    assert (tail == a.to_incidence()[200:]).all()
    assert sample_hypergraph(ModelParams(10, 300, 0.3, seed=43)) != a


def test_words_match_incidence():
    assert (sample_words(70, 50, 0.5, 3) == words_from_incidence(sample_incidence(70, 50, 0.5, 3))).all()


def test_cardinality_moments_within_five_sigma():
    n, p, m = 20, 0.3, 100_000
    cards = sample_incidence(n, m, p, seed=2024).sum(axis=1)
    mean, var = n * p, n * p * (1 - p)
    assert abs(cards.mean() - mean) <= 5 * math.sqrt(var / m)
    # variance of the sample variance of a binomial: (mu4 - var^2) / m
    mu4 = n * p * (1 - p) * (1 + 3 * (n - 2) * p * (1 - p))
    assert abs(cards.var(ddof=1) - var) <= 5 * math.sqrt((mu4 - var**2) / m)


def test_vertex_frequencies_within_five_sigma():
    n, p, m = 16, 0.15, 100_000
    freq = sample_incidence(n, m, p, seed=7).mean(axis=0)
    assert np.all(np.abs(freq - p) <= 5 * math.sqrt(p * (1 - p) / m))


def test_two_by_two_expected_min():
    X = sample_incidence(2, 1_000_000, 0.5, seed=123)
    a = X[0::2, 0] + 2 * X[0::2, 1].astype(int)
    b = X[1::2, 0] + 2 * X[1::2, 1].astype(int)
    comparable = ((a & ~b) == 0) | ((b & ~a) == 0)
    sizes = np.where(comparable, 1, 2)
    se = sizes.std(ddof=1) / math.sqrt(len(sizes))
    assert abs(sizes.mean() - 1.125) <= 5 * se


def test_threshold_is_exact():
    assert bernoulli_threshold(0.5) == 1 << 63
    assert bernoulli_threshold(0.0) == 0
    assert bernoulli_threshold(1.0) is None


def test_params_validation_and_cap():
    for bad in [(0, 1, 0.5), (1, 0, 0.5)]:
        with pytest.raises(UsageError):
            ModelParams(*bad)
    with pytest.raises(DomainError):
        ModelParams(1, 1, 1.5)
    with pytest.raises(ResourceCapError):
        sample_incidence(2, MAX_EDGES + 1, 0.5, 0)


def test_seed_derivation_is_stable():
    assert derive_seed(0, 1) == derive_seed(0, 1)
    assert derive_seed(0, 1) != derive_seed(0, 2) != derive_seed(1, 1)
    assert GENERATOR_VERSION == "splitmix64-ctr/1"
