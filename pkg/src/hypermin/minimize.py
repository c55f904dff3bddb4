"""Inclusion-minimal edges of a multi-hypergraph.

Three routes compute the same antichain:

* :func:`minimize_naive` compares every pair of distinct edges; it is the
  reference the others are tested against.
* :func:`minimize_sorted` deduplicates, processes edges by increasing
  cardinality and compares each candidate only with already accepted minimal
  edges, for ``O(mn |min(H)| + mn)`` work.
* :class:`StreamingMinimizer` / :func:`streaming_insert` maintain the
  minimization of a stream of edges.

Duplicated minimal edges appear once in the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from ._kernels import sorted_minimal_mask
from .core import EdgeSet, MultiHypergraph, masks_from_words
from .errors import UsageError

ALGORITHMS = ("naive", "sorted", "stream")
MAX_KEY_BITS = 16


@dataclass(frozen=True)
class Antichain:
    """A set of pairwise incomparable edges over one universe."""

    universe_size: int
    members: frozenset

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[EdgeSet]:
        return iter(sorted(self.members, key=lambda e: (e.cardinality, e.bits)))

    def __contains__(self, e: EdgeSet) -> bool:
        return e in self.members

    def masks(self) -> set[int]:
        return {e.bits for e in self.members}

    def to_hypergraph(self) -> MultiHypergraph:
        return MultiHypergraph(self.universe_size, tuple(self))

    @classmethod
    def empty(cls, n: int) -> "Antichain":
        return cls(n, frozenset())


def is_antichain(edges: Iterable[EdgeSet]) -> bool:
    """True iff no edge is a subset of a different edge and none repeats."""
    masks = [e.bits for e in edges]
    if len(set(masks)) != len(masks):
        return False
    for a in masks:
        for b in masks:
            if a != b and not a & ~b:
                return False
    return True


def _antichain(H: MultiHypergraph, masks: Iterable[int]) -> Antichain:
    n = H.universe_size
    return Antichain(n, frozenset(EdgeSet(n, b) for b in masks))


def minimize_naive(H: MultiHypergraph) -> Antichain:
    distinct = list(dict.fromkeys(H.masks()))
    keep = []
    for e in distinct:
        ne = ~e
        if not any(f != e and not f & ne for f in distinct):
            keep.append(e)
    return _antichain(H, keep)


# ---------------------------------------------------------------------------
# cardinality-sorted algorithm


def _dedup_sorted(words: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Distinct rows (first occurrence wins) ordered by cardinality, then position."""
    if len(words) == 0:
        return words, np.empty(0, np.int64), np.empty(0, np.int64)
    _, first = np.unique(words, axis=0, return_index=True)
    first = np.sort(first)
    cards = np.bitwise_count(words[first]).sum(axis=1, dtype=np.int64)
    order = np.argsort(cards, kind="stable")
    rows = first[order]
    return np.ascontiguousarray(words[rows]), cards[order], rows


def _choose_key(words: np.ndarray, n: int) -> tuple[np.ndarray, int]:
    """Pick index vertices and compute each row's key over them.

    The number of key bits trades submask enumeration ``(1 + q)^k`` against
    the pairs still compared, ``D (1 - q (1 - q))^k``, with ``q`` the
    observed vertex density.  Vertices with density nearest 1/2 filter best.
    """
    D = len(words)
    inc = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")[:, :n]
    density = inc.mean(axis=0) if D else np.zeros(n)
    q = float(density.mean()) if n else 0.0
    best_k, best_cost = 0, float(D)
    for k in range(1, min(n, MAX_KEY_BITS) + 1):
        cost = (1 + q) ** k + D * (1 - q * (1 - q)) ** k
        if cost < best_cost:
            best_k, best_cost = k, cost
    cols = np.argsort(np.abs(density - 0.5), kind="stable")[:best_k]
    keys = np.zeros(D, dtype=np.int64)
    for bit, col in enumerate(cols):
        keys |= inc[:, col].astype(np.int64) << bit
    return keys, best_k


def minimal_rows(words: np.ndarray, n: int) -> np.ndarray:
    """Row indices (first occurrences) of the inclusion-minimal rows of a word matrix."""
    distinct, cards, rows = _dedup_sorted(np.ascontiguousarray(words, dtype=np.uint64))
    if len(distinct) == 0:
        return rows
    keys, k = _choose_key(distinct, n)
    keep = sorted_minimal_mask(distinct, cards, keys, k)
    return rows[keep]


def minimal_count(words: np.ndarray, n: int) -> int:
    return int(len(minimal_rows(words, n)))


def minimize_sorted(H: MultiHypergraph) -> Antichain:
    if len(H) == 0:
        return Antichain.empty(H.universe_size)
    words = H.to_words()
    rows = minimal_rows(words, H.universe_size)
    return _antichain(H, masks_from_words(words[rows]))


# ---------------------------------------------------------------------------
# streaming filter


class StreamingMinimizer:
    """Single-writer filter keeping the minimization of all edges seen so far.

    Members are bucketed by cardinality: a new edge is checked against the
    buckets of cardinality at most its own, and only buckets of larger
    cardinality are scanned for eviction.
    """

    def __init__(self, universe_size: int, edges: Iterable[EdgeSet] = ()):
        self.universe_size = universe_size
        self._buckets: dict[int, set[int]] = {}
        for e in edges:
            self.insert(e)

    def __len__(self) -> int:
        return sum(len(b) for b in self._buckets.values())

    def insert(self, e: EdgeSet) -> bool:
        """Add ``e``; return False when a current member is a subset of it."""
        if e.universe_size != self.universe_size:
            raise UsageError(
                f"universe mismatch: {e.universe_size} vs {self.universe_size}"
            )
        bits, card = e.bits, e.cardinality
        ne = ~bits
        sizes = sorted(self._buckets)
        for c in sizes:
            if c > card:
                break
            if any(not f & ne for f in self._buckets[c]):
                return False
        for c in sizes:
            if c > card:
                bucket = self._buckets[c]
                evicted = [f for f in bucket if not bits & ~f]
                bucket.difference_update(evicted)
                if not bucket:
                    del self._buckets[c]
        self._buckets.setdefault(card, set()).add(bits)
        return True

    def snapshot(self) -> Antichain:
        n = self.universe_size
        return Antichain(
            n, frozenset(EdgeSet(n, b) for bucket in self._buckets.values() for b in bucket)
        )


def streaming_insert(state: Antichain, e: EdgeSet) -> Antichain:
    """Functional update: ``min(state ∪ {e})``."""
    if e.universe_size != state.universe_size:
        raise UsageError(f"universe mismatch: {e.universe_size} vs {state.universe_size}")
    filt = StreamingMinimizer(state.universe_size)
    for member in state.members:
        filt._buckets.setdefault(member.cardinality, set()).add(member.bits)
    if not filt.insert(e):
        return state
    return filt.snapshot()


def minimize_stream(H: MultiHypergraph) -> Antichain:
    return StreamingMinimizer(H.universe_size, H.edges).snapshot()


def minimize(H: MultiHypergraph, algo: str = "sorted") -> Antichain:
    try:
        fn = {"naive": minimize_naive, "sorted": minimize_sorted, "stream": minimize_stream}[algo]
    except KeyError:
        raise UsageError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}") from None
    return fn(H)

