"""Brute-force reference computations.

These are deliberately slow and simple.  With ``p`` given as a
:class:`fractions.Fraction` (or int) every result is an exact rational.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from fractions import Fraction
from typing import Literal, Union

from .core import MultiHypergraph
from .errors import DomainError, ResourceCapError, VerificationError
from .logreal import NEG_INF, LogReal, log_sum
from .minimize import minimize_naive

Number = Union[float, Fraction]

MAX_OUTCOMES = 10**7
RATIONAL_CHECK_MAX_N = 64
RATIONAL_CHECK_RTOL = 1e-10


def outcome_count(n: int, m: int) -> int:
    return (2**n) ** m


def enumerate_expected_min(n: int, p: Number, m: int) -> Number:
    """``E|min(B(n, m, p))|`` summed over every tuple of ``m`` subsets of ``[n]``."""
    if n < 1 or m < 1:
        raise DomainError("n and m must be positive")
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    total = outcome_count(n, m)
    if total > MAX_OUTCOMES:
        raise ResourceCapError(f"(2^{n})^{m} = {total} outcomes exceeds cap {MAX_OUTCOMES}")
    exact = isinstance(p, (Fraction, int))
    weight = [p ** bin(s).count("1") * (1 - p) ** (n - bin(s).count("1")) for s in range(2**n)]
    acc = []
    for tup in itertools.product(range(2**n), repeat=m):
        w = 1
        for s in tup:
            w *= weight[s]
        if w:
            acc.append(w * len(minimize_naive(MultiHypergraph.from_masks(n, tup))))
    return sum(acc, Fraction(0)) if exact else math.fsum(acc)


def _pmf_rational(n: int, p: Fraction, k: int) -> Fraction:
    return math.comb(n, k) * p**k * (1 - p) ** (n - k)


def _tail_range(n: int, k: int, direction: str) -> range:
    if direction == "lower":
        return range(0, k + 1)
    if direction == "upper":
        return range(k, n + 1)
    raise DomainError(f"direction must be 'lower' or 'upper', got {direction!r}")


def exact_binomial_tail_rational(
    n: int, p, k: int, direction: Literal["lower", "upper"] = "lower"
) -> Fraction:
    """``P[Y <= k]`` (lower) or ``P[Y >= k]`` (upper) as an exact fraction."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    p = Fraction(p)
    return sum((_pmf_rational(n, p, j) for j in _tail_range(n, k, direction)), Fraction(0))


@lru_cache(maxsize=64)
def _log_comb_row(n: int) -> tuple[float, ...]:
    """``log C(n, k)`` for ``k = 0..n`` from the exact integer recurrence."""
    row, c = [], 1
    for k in range(n + 1):
        row.append(math.log(c))
        c = c * (n - k) // (k + 1)
    return tuple(row)


def log_binomial_pmf(n: int, p: float, k: int) -> float:
    if p == 0:
        return 0.0 if k == 0 else NEG_INF
    if p == 1:
        return 0.0 if k == n else NEG_INF
    return _log_comb_row(n)[k] + k * math.log(p) + (n - k) * math.log1p(-p)


@lru_cache(maxsize=64)
def log_binomial_pmf_row(n: int, p: float) -> tuple[float, ...]:
    return tuple(log_binomial_pmf(n, p, k) for k in range(n + 1))


def exact_binomial_tail(
    n: int, p: float, k: int, direction: Literal["lower", "upper"] = "lower"
) -> LogReal:
    """Binomial tail as a log-domain sum of exact log PMF terms.

    For ``n <= 64`` the result is also computed in rational arithmetic from
    the exact binary value of ``p``; disagreement raises
    :class:`VerificationError`.
    """
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    row = log_binomial_pmf_row(n, float(p))
    value = LogReal.from_log(log_sum(row[j] for j in _tail_range(n, k, direction)))
    if n <= RATIONAL_CHECK_MAX_N:
        exact = exact_binomial_tail_rational(n, p, k, direction)
        ref = LogReal.from_log(math.log(exact)) if exact else LogReal.zero()
        if not _close(value, ref, RATIONAL_CHECK_RTOL):
            raise VerificationError(
                f"log-domain tail {value} disagrees with rational {ref} at n={n}, p={p}, k={k}"
            )
    return value


def _close(a: LogReal, b: LogReal, rtol: float) -> bool:
    if a.sign != b.sign:
        return False
    return a.sign == 0 or abs(math.expm1(a.log - b.log)) <= rtol


def enumerate_conditional_survival(pA: Number, pB: Number, m: int) -> tuple[Number, Number]:
    """``P[no A in m trials | some B]`` and ``P[no A in m trials | last trial is B]``.

    Outcomes A, B and C (the rest) are disjoint with ``P[B] > 0``.
    """
    if m < 1:
        raise DomainError("m must be positive")
    if pA < 0 or pB <= 0 or pA + pB > 1:
        raise DomainError(f"need pA >= 0, pB > 0, pA + pB <= 1; got {pA}, {pB}")
    lhs = ((1 - pA) ** m - (1 - pA - pB) ** m) / (1 - (1 - pB) ** m)
    rhs = (1 - pA) ** (m - 1)
    return lhs, rhs


def enumerate_conditional_survival_bruteforce(pA: Number, pB: Number, m: int) -> tuple[Number, Number]:
    """Same quantities by summing over all ``3^m`` outcome sequences."""
    if pA < 0 or pB <= 0 or pA + pB > 1:
        raise DomainError(f"need pA >= 0, pB > 0, pA + pB <= 1; got {pA}, {pB}")
    if 3**m > MAX_OUTCOMES:
        raise ResourceCapError(f"3^{m} outcomes exceeds cap {MAX_OUTCOMES}")
    prob = {"A": pA, "B": pB, "C": 1 - pA - pB}
    some_b = no_a_some_b = last_b = no_a_last_b = 0
    for seq in itertools.product("ABC", repeat=m):
        w = 1
        for o in seq:
            w *= prob[o]
        no_a = "A" not in seq
        if "B" in seq:
            some_b += w
            no_a_some_b += w * no_a
        if seq[-1] == "B":
            last_b += w
            no_a_last_b += w * no_a
    return no_a_some_b / some_b, no_a_last_b / last_b
