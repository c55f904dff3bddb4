"""Edge and multi-hypergraph value types.

An edge over the universe ``[n] = {1, ..., n}`` is stored as a Python integer
bit mask: vertex ``v`` is present iff bit ``v - 1`` is set.  CPython stores
big integers as arrays of machine words, so ``a & ~b`` runs wordwise.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import UsageError

MAX_UNIVERSE = 1 << 16
EMPTY_TOKEN = "-"


def _check_universe(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise UsageError(f"universe size must be an integer, got {n!r}")
    if not 1 <= n <= MAX_UNIVERSE:
        raise UsageError(f"universe size must lie in [1, {MAX_UNIVERSE}], got {n}")


@dataclass(frozen=True, slots=True)
class EdgeSet:
    """A subset of ``[universe_size]`` held as a bit mask.

    Equality and hashing use ``(universe_size, bits)``, so edges can be
    deduplicated with ordinary sets and dicts.
    """

    universe_size: int
    bits: int = 0

    def __post_init__(self) -> None:
        _check_universe(self.universe_size)
        if self.bits < 0 or self.bits >> self.universe_size:
            raise UsageError(
                f"membership mask has bits outside [1, {self.universe_size}]"
            )

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "EdgeSet":
        """Build an edge from 1-based vertex labels."""
        bits = 0
        for v in vertices:
            if not 1 <= v <= n:
                raise UsageError(f"vertex {v} outside [1, {n}]")
            bits |= 1 << (v - 1)
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "EdgeSet":
        return cls(n, (1 << n) - 1)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length()
            bits ^= low

    def vertices(self) -> tuple[int, ...]:
        return tuple(self)

    def _check_same(self, other: "EdgeSet") -> None:
        if self.universe_size != other.universe_size:
            raise UsageError(
                f"universe mismatch: {self.universe_size} vs {other.universe_size}"
            )

    def is_subset(self, other: "EdgeSet") -> bool:
        self._check_same(other)
        return not self.bits & ~other.bits

    def is_proper_subset(self, other: "EdgeSet") -> bool:
        self._check_same(other)
        return self.bits != other.bits and not self.bits & ~other.bits

    __le__ = is_subset
    __lt__ = is_proper_subset

    def complement(self) -> "EdgeSet":
        """Complement within the universe; turns minimization into maximization."""
        return EdgeSet(self.universe_size, ~self.bits & ((1 << self.universe_size) - 1))

    def to_text(self) -> str:
        """Canonical form: increasing 1-based labels, ``-`` for the empty edge."""
        if not self.bits:
            return EMPTY_TOKEN
        return " ".join(map(str, self))

    @classmethod
    def parse(cls, n: int, line: str) -> "EdgeSet":
        tokens = line.split()
        if tokens == [EMPTY_TOKEN]:
            return cls(n, 0)
        if not tokens:
            raise UsageError("empty edge line; write '-' for the empty edge")
        try:
            labels = [int(t) for t in tokens]
        except ValueError:
            raise UsageError(f"non-integer vertex label in {line!r}") from None
        for a, b in zip(labels, labels[1:]):
            if a >= b:
                raise UsageError(f"vertex labels not strictly increasing in {line!r}")
        return cls.from_vertices(n, labels)

    def __repr__(self) -> str:
        return f"EdgeSet({self.universe_size}, {{{', '.join(map(str, self))}}})"


@dataclass(frozen=True, slots=True)
class MultiHypergraph:
    """An ordered multiset of edges over a common universe; order is trial index."""

    universe_size: int
    edges: tuple[EdgeSet, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        _check_universe(self.universe_size)
        if not isinstance(self.edges, tuple):
            object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if e.universe_size != self.universe_size:
                raise UsageError(
                    f"edge over universe {e.universe_size} in hypergraph over "
                    f"{self.universe_size}"
                )

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "MultiHypergraph":
        return cls(n, tuple(EdgeSet(n, b) for b in masks))

    @classmethod
    def from_incidence(cls, X) -> "MultiHypergraph":
        """Rows of a 0/1 matrix become edges; column ``j`` is vertex ``j + 1``."""
        X = np.asarray(X, dtype=bool)
        if X.ndim != 2:
            raise UsageError("incidence matrix must be two-dimensional")
        n = X.shape[1]
        return cls.from_masks(n, masks_from_words(words_from_incidence(X)))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[EdgeSet]:
        return iter(self.edges)

    def __getitem__(self, j: int) -> EdgeSet:
        return self.edges[j]

    def masks(self) -> list[int]:
        return [e.bits for e in self.edges]

    def support(self) -> set[EdgeSet]:
        return set(self.edges)

    def multiplicities(self) -> Counter:
        return Counter(self.edges)

    def to_incidence(self) -> np.ndarray:
        return incidence_from_words(self.to_words(), self.universe_size)

    def to_words(self) -> np.ndarray:
        return words_from_masks(self.masks(), self.universe_size)

    def complement(self) -> "MultiHypergraph":
        return MultiHypergraph(self.universe_size, tuple(e.complement() for e in self.edges))


def count_distinct(H: MultiHypergraph) -> int:
    """Number of distinct edges, written ``||H||``."""
    return len(set(H.masks()))


# ---------------------------------------------------------------------------
# word-matrix conversions used by the compiled kernels and the sampler


def n_words(n: int) -> int:
    return (n + 63) // 64


def words_from_masks(masks: Sequence[int], n: int) -> np.ndarray:
    width = n_words(n)
    raw = b"".join(b.to_bytes(8 * width, "little") for b in masks)
    return np.frombuffer(raw, dtype="<u8").reshape(len(masks), width).astype(np.uint64)


def masks_from_words(words: np.ndarray) -> list[int]:
    words = np.ascontiguousarray(words, dtype="<u8")
    stride = 8 * words.shape[1]
    raw = words.tobytes()
    return [int.from_bytes(raw[k : k + stride], "little") for k in range(0, len(raw), stride)]


def words_from_incidence(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=bool)
    m, n = X.shape
    width = n_words(n)
    packed = np.packbits(X, axis=1, bitorder="little")
    padded = np.zeros((m, 8 * width), dtype=np.uint8)
    padded[:, : packed.shape[1]] = packed
    return padded.view("<u8").astype(np.uint64)


def incidence_from_words(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    as_bytes = words.view(np.uint8).reshape(words.shape[0], 8 * words.shape[1])
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n].astype(bool)


# ---------------------------------------------------------------------------
# text format


def dumps(H: MultiHypergraph) -> str:
    lines = [f"n {H.universe_size}"]
    lines.extend(e.to_text() for e in H.edges)
    return "\n".join(lines) + "\n"


def loads(text: str) -> MultiHypergraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise UsageError("empty hypergraph file; expected header 'n <universe_size>'")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "n":
        raise UsageError(f"bad header {lines[0]!r}; expected 'n <universe_size>'")
    try:
        n = int(header[1])
    except ValueError:
        raise UsageError(f"bad universe size in header {lines[0]!r}") from None
    _check_universe(n)
    return MultiHypergraph(n, tuple(EdgeSet.parse(n, ln) for ln in lines[1:]))


def read_hypergraph(path) -> MultiHypergraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_hypergraph(H: MultiHypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(H))
