"""Reproducible sampling of the random multi-hypergraph B(n, m, p).

Generator ``splitmix64-ctr/1``
------------------------------
All randomness is counter based.  With ``mix`` the SplitMix64 finalizer and
``G = 0x9E3779B97F4A7C15``::

    trial_key(seed, j) = mix(seed + (j + 1) * G)
    draw(seed, j, v)   = mix(trial_key(seed, j) + (v + 1) * G)      (mod 2**64)

Vertex ``v + 1`` of trial ``j`` is present iff ``draw(seed, j, v) < floor(p * 2**64)``,
computed from the exact binary value of ``p``.  Trial ``j`` is therefore a pure
function of ``(seed, j)`` and does not depend on evaluation order, chunking or
thread count.  Changing any of this is a breaking change for recorded seeds,
so bump :data:`GENERATOR_VERSION` when doing so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import EdgeSet, MultiHypergraph, masks_from_words, n_words, words_from_incidence
from .errors import DomainError, ResourceCapError, UsageError

GENERATOR_VERSION = "splitmix64-ctr/1"

#: Largest number of trials a single call will materialize.
MAX_EDGES = 10_000_000
#: Largest number of Bernoulli draws (m * n) a single call will materialize.
MAX_DRAWS = 1 << 31

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1
_CHUNK = 1 << 21


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _counter(start: int, count: int) -> np.ndarray:
    return np.arange(start + 1, start + count + 1, dtype=np.uint64)


def trial_keys(seed: int, start: int, count: int) -> np.ndarray:
    base = np.full(count, seed & _MASK64, dtype=np.uint64)
    return _mix(base + _counter(start, count) * _GAMMA)


def derive_seed(seed: int, *path: int) -> int:
    """Hash a seed together with integer coordinates into a fresh 64-bit seed."""
    z = np.array([seed & _MASK64], dtype=np.uint64)
    for coord in path:
        c = _mix(np.array([coord & _MASK64], dtype=np.uint64) * _GAMMA + _GAMMA)
        z = _mix(z ^ c)
    return int(z[0])


def bernoulli_threshold(p: float) -> int | None:
    """``floor(p * 2**64)``, or ``None`` when ``p == 1`` (every draw succeeds)."""
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if p == 1:
        return None
    return int(Fraction(p) * (1 << 64))


@dataclass(frozen=True)
class ModelParams:
    n: int
    m: int
    p: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise UsageError(f"n must be >= 1, got {self.n}")
        if self.m < 1:
            raise UsageError(f"m must be >= 1, got {self.m}")
        if not 0 <= self.p <= 1:
            raise DomainError(f"p must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed <= _MASK64:
            raise UsageError("seed must be an unsigned 64-bit integer")


class TrialStream:
    """Draw stream of one trial; every call to :meth:`draw` advances it."""

    def __init__(self, seed: int, trial: int):
        self.seed = seed
        self.trial = trial
        self.position = 0
        self._key = trial_keys(seed, trial, 1)[0]

    def draw(self, count: int) -> np.ndarray:
        out = _mix(self._key + _counter(self.position, count) * _GAMMA)
        self.position += count
        return out


def _bernoulli(draws: np.ndarray, threshold: int | None) -> np.ndarray:
    if threshold is None:
        return np.ones(draws.shape, dtype=bool)
    if threshold == 0:
        return np.zeros(draws.shape, dtype=bool)
    return draws < np.uint64(threshold)


def sample_edge(n: int, p: float, stream: TrialStream) -> EdgeSet:
    """Draw one edge: each vertex independently with probability ``p``.

    Consumes exactly ``n`` draws from ``stream``.
    """
    present = _bernoulli(stream.draw(n), bernoulli_threshold(p))
    return EdgeSet(n, masks_from_words(words_from_incidence(present[None, :]))[0])


def _check_cap(n: int, m: int) -> None:
    if m > MAX_EDGES or m * n > MAX_DRAWS:
        raise ResourceCapError(
            f"m={m} with n={n} exceeds the sampling cap (m <= {MAX_EDGES}, "
            f"m*n <= {MAX_DRAWS}); use the analytic bounds for such m"
        )


def sample_incidence(n: int, m: int, p: float, seed: int, start: int = 0) -> np.ndarray:
    """Trials ``start .. start + m - 1`` as an ``(m, n)`` boolean matrix."""
    _check_cap(n, m)
    threshold = bernoulli_threshold(p)
    out = np.empty((m, n), dtype=bool)
    offsets = _counter(0, n) * _GAMMA
    rows = max(1, _CHUNK // n)
    for lo in range(0, m, rows):
        hi = min(m, lo + rows)
        keys = trial_keys(seed, start + lo, hi - lo)
        out[lo:hi] = _bernoulli(_mix(keys[:, None] + offsets[None, :]), threshold)
    return out


def sample_words(n: int, m: int, p: float, seed: int) -> np.ndarray:
    """Same trials as :func:`sample_incidence`, packed into ``(m, ceil(n/64))`` words."""
    _check_cap(n, m)
    out = np.empty((m, n_words(n)), dtype=np.uint64)
    rows = max(1, _CHUNK // n)
    for lo in range(0, m, rows):
        hi = min(m, lo + rows)
        out[lo:hi] = words_from_incidence(sample_incidence(n, hi - lo, p, seed, start=lo))
    return out


def sample_hypergraph(params: ModelParams) -> MultiHypergraph:
    """Draw B(n, m, p) with trial ``j`` determined by ``(params.seed, j)`` alone."""
    words = sample_words(params.n, params.m, params.p, params.seed)
    return MultiHypergraph.from_masks(params.n, masks_from_words(words))
