"""Closed-form quantities for the minimization of B(n, m, p).

Everything probability-like is evaluated in the log domain (see
:mod:`hypermin.logreal`), because ``m`` ranges up to ``(1 - p)^-n`` and the
weighting factors fall far below the smallest double.

``m`` is integral when sampling but may be any real ``>= 1`` here; every
function accepting ``m`` also takes a :class:`~hypermin.logreal.LogReal`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, NamedTuple

from .errors import DomainError
from .logreal import (
    LN2,
    NEG_INF,
    LogReal,
    log1mexp,
    log_at_least_once,
    log_never,
    log_sum,
    logaddexp,
)

Tail = Literal["lower", "upper"]

DEFAULT_EPS = 0.05
DEFAULT_EPSP = 0.05
#: Finite-n stand-in for the omega(log n) excess: m >= (1-p)^-(n + C log2 n).
COLLAPSE_LOG_MULTIPLIER = 10.0
INTEGRALITY_TOL = 1e-9


# ---------------------------------------------------------------------------
# small helpers


def _check_prob(name: str, x: float) -> None:
    if not 0.0 <= x <= 1.0 or math.isnan(x):
        raise DomainError(f"{name} must be a probability in [0, 1], got {x}")


def _xlogy(x: float, y: float) -> float:
    return 0.0 if x == 0 else x * math.log(y)


def log_m_of(m) -> float:
    """Natural log of ``m`` given as int, float or LogReal."""
    if isinstance(m, LogReal):
        if m.sign <= 0:
            raise DomainError("m must be positive")
        return m.log
    if m <= 0:
        raise DomainError(f"m must be positive, got {m}")
    return math.log(m)


def _check_m(log_m: float) -> None:
    if log_m < -1e-12:
        raise DomainError("m must be at least 1")


def _log_m_minus_one(log_m: float) -> float:
    if log_m <= 0:
        return NEG_INF
    return log_m + math.log1p(-math.exp(-log_m))


@lru_cache(maxsize=64)
def log_binomial_row(n: int) -> tuple[float, ...]:
    """``log C(n, i)`` for ``i = 0..n`` from exact integers."""
    row = []
    c = 1
    for i in range(n + 1):
        row.append(math.log(c))
        c = c * (n - i) // (i + 1)
    return tuple(row)


# ---------------------------------------------------------------------------
# information measures


def binary_entropy(x: float) -> float:
    """Binary entropy in bits, with ``0 log 0 = 0``."""
    _check_prob("x", x)
    return -(_xlogy(x, x) + _xlogy(1 - x, 1 - x)) / LN2


def kl_divergence(x: float, y: float, base: float = 2) -> float:
    """Divergence ``D(x || y)`` between Bernoulli(x) and Bernoulli(y).

    Returns ``inf`` when Bernoulli(x) is not absolutely continuous with
    respect to Bernoulli(y).
    """
    _check_prob("x", x)
    _check_prob("y", y)
    if base not in (2, math.e):
        raise DomainError(f"base must be 2 or e, got {base}")
    if (x > 0 and y == 0) or (x < 1 and y == 1):
        return math.inf
    nats = _xlogy(x, x / y if x else 1.0) + _xlogy(1 - x, (1 - x) / (1 - y) if x < 1 else 1.0)
    nats = max(nats, 0.0)
    return nats / LN2 if base == 2 else nats


def perplexity(x: float) -> float:
    return 2.0 ** binary_entropy(x)


# ---------------------------------------------------------------------------
# elementary inequalities


def _snap_integral(n: int, x: float) -> int:
    k = round(x * n)
    if abs(x * n - k) > INTEGRALITY_TOL * n:
        raise DomainError(f"x*n = {x * n} is not an integer")
    return k


def binom_coeff_bounds(n: int, x: float) -> tuple[LogReal, LogReal]:
    """Entropy bounds on ``C(n, xn)`` with constants 8 (lower) and pi (upper)."""
    if n < 1:
        raise DomainError("n must be positive")
    if not 0 < x < 1:
        raise DomainError(f"x must lie strictly between 0 and 1, got {x}")
    k = _snap_integral(n, x)
    x = k / n
    head = binary_entropy(x) * n * LN2
    spread = math.log(n * x * (1 - x))
    lower = LogReal.from_log(head - 0.5 * (math.log(8) + spread))
    upper = LogReal.from_log(head - 0.5 * (math.log(math.pi) + spread))
    return lower, upper


class PolyProbBounds(NamedTuple):
    power_lower: float
    power_exact: float
    power_upper: float
    badkobeh_lower: float
    badkobeh_exact: float
    badkobeh_upper: float


def poly_prob_bounds(n: int, x: float) -> PolyProbBounds:
    """Bracket ``(1 - x)^n`` and ``1 - (1 - x)^n``.

    ``e^{-nx}(1 - n x^2) <= (1 - x)^n <= e^{-nx}`` and
    ``nx / (1 + nx) <= 1 - (1 - x)^n <= nx``.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    _check_prob("x", x)
    power = (1 - x) ** n
    return PolyProbBounds(
        power_lower=math.exp(-n * x) * (1 - n * x * x),
        power_exact=power,
        power_upper=math.exp(-n * x),
        badkobeh_lower=n * x / (1 + n * x),
        badkobeh_exact=-math.expm1(n * math.log1p(-x)) if x < 1 else float(n > 0),
        badkobeh_upper=n * x,
    )


# ---------------------------------------------------------------------------
# binomial tails


@dataclass(frozen=True)
class TailBoundPair:
    """Bounds on a binomial tail and the prefactors of ``2^{-D n} / sqrt(n)``."""

    lower: LogReal
    upper: LogReal
    constants: dict = field(compare=False)
    tail: str = "lower"
    integral: bool = False

    def contains(self, value: LogReal, rel_slack: float = 0.0) -> bool:
        from .logreal import within

        return within(self.lower, value, self.upper, rel_slack)


def _tail_common(n: int, p: float, x: float) -> float:
    return -kl_divergence(x, p) * n * LN2 - 0.5 * math.log(n)


def _check_tail_window(n: int, p: float, x: float, tail: str, general: bool) -> None:
    if n < 1:
        raise DomainError("n must be positive")
    if not 0 < p < 1:
        raise DomainError(f"p must lie strictly between 0 and 1, got {p}")
    slack = INTEGRALITY_TOL / n
    if tail == "lower":
        floor = 1 / n - slack if general else 0.0
        if not (x >= floor and x > 0 and x < p):
            need = "1/n <= x < p" if general else "0 < x < p"
            raise DomainError(f"lower tail needs {need}; got n={n}, p={p}, x={x}")
    elif tail == "upper":
        ceil = 1 - 1 / n + slack if general else 1.0
        if not (x <= ceil and x < 1 and x > p):
            need = "p < x <= 1 - 1/n" if general else "p < x < 1"
            raise DomainError(f"upper tail needs {need}; got n={n}, p={p}, x={x}")
    else:
        raise DomainError(f"tail must be 'lower' or 'upper', got {tail!r}")


def tail_constants(p: float, x: float, tail: str, integral: bool) -> tuple[float, float]:
    """Prefactors (lower, upper) multiplying ``2^{-D(x||p) n} / sqrt(n)``."""
    if integral:
        low = 1 / math.sqrt(8 * x * (1 - x))
        if tail == "lower":
            high = p * math.sqrt(1 - x) / ((p - x) * math.sqrt(math.pi * x))
        else:
            high = (1 - p) * math.sqrt(x) / ((x - p) * math.sqrt(math.pi * (1 - x)))
        return low, high
    if tail == "lower":
        low = (1 - p) * math.sqrt(x) / (2 * math.e * math.sqrt(2 * (1 - x)))
        high = math.sqrt(1 - x) / ((p - x) * math.sqrt(math.pi * x))
    else:
        low = p * math.sqrt(1 - x) / (2 * math.e * math.sqrt(2 * x))
        high = math.sqrt(x) / ((x - p) * math.sqrt(math.pi * (1 - x)))
    return low, high


def _tail_pair(n: int, p: float, x: float, tail: str, integral: bool) -> TailBoundPair:
    low, high = tail_constants(p, x, tail, integral)
    common = _tail_common(n, p, x)
    return TailBoundPair(
        lower=LogReal.from_log(common + math.log(low)),
        upper=LogReal.from_log(common + math.log(high)),
        constants={"lower": low, "upper": high},
        tail=tail,
        integral=integral,
    )


def chernoff_sharp(n: int, p: float, x: float, tail: Tail = "lower") -> TailBoundPair:
    """Two-sided bounds on ``P[Y <= xn]`` (or ``P[Y >= xn]``) for ``Y ~ Bin(n, p)``.

    Both sides equal a constant times ``2^{-D(x||p) n} / sqrt(n)``; valid for
    ``1/n <= x < p`` (lower tail) or ``p < x <= 1 - 1/n`` (upper tail).  The
    window cannot be widened: at ``x = 0`` the plain bound ``(1-p)^n`` is
    already exact and at ``x = p`` the tail is at least 1/2.
    """
    _check_tail_window(n, p, x, tail, general=True)
    return _tail_pair(n, p, x, tail, integral=False)


def chernoff_integral(n: int, p: float, x: float, tail: Tail = "lower") -> TailBoundPair:
    """Tighter tail bounds when ``xn`` is an integer."""
    _check_tail_window(n, p, x, tail, general=False)
    x = _snap_integral(n, x) / n
    return _tail_pair(n, p, x, tail, integral=True)


def klar_ratio_bound(n: int, p: float, k: int) -> tuple[float, float]:
    """Bounds ``(1, r)`` on ``P[Y <= k] / P[Y = k]`` for ``k <= pn``."""
    _check_prob("p", p)
    if k < 0 or k > p * n * (1 + 1e-12):
        raise DomainError(f"need 0 <= k <= pn; got k={k}, n={n}, p={p}")
    denom = n + 1 - k - (n + 1) * (1 - p)
    if denom <= 0:
        raise DomainError(f"Klar denominator {denom} is not positive")
    return 1.0, p * (n + 1 - k) / denom


def cramer_rate(n: int, p: float, x: float) -> float:
    """``-D_e(x||p) - ln(n) / (2n)``: rate of ``(1/n) ln P[sum X_i >= xn]`` up to O(1/n)."""
    if not 0 < p < x < 1:
        raise DomainError(f"need 0 < p < x < 1, got p={p}, x={x}")
    if n < 1 / (1 - x):
        raise DomainError(f"need n >= 1/(1-x) = {1 / (1 - x)}, got n={n}")
    return -kl_divergence(x, p, base=math.e) - math.log(n) / (2 * n)


# ---------------------------------------------------------------------------
# model parameters


@dataclass(frozen=True)
class DerivedParams:
    """``alpha = -log_{1-p}(m) / n`` and threshold ``i* = (1 - alpha) n``."""

    n: int
    p: float
    log_m: LogReal
    alpha: float
    i_star: float

    @classmethod
    def from_m(cls, n: int, p: float, m) -> "DerivedParams":
        if n < 1:
            raise DomainError("n must be positive")
        if not 0 < p < 1:
            raise DomainError(f"alpha is defined for 0 < p < 1, got {p}")
        lm = log_m_of(m)
        _check_m(lm)
        alpha = lm / (-math.log1p(-p) * n)
        return cls(n, p, LogReal.from_log(lm), alpha, (1 - alpha) * n)

    @classmethod
    def from_alpha(cls, n: int, p: float, alpha: float) -> "DerivedParams":
        if alpha < 0:
            raise DomainError("alpha must be non-negative")
        if not 0 < p < 1:
            raise DomainError(f"alpha is defined for 0 < p < 1, got {p}")
        lm = -alpha * n * math.log1p(-p)
        return cls(n, p, LogReal.from_log(lm), alpha, (1 - alpha) * n)

    @property
    def m(self) -> LogReal:
        return LogReal.from_log(self.log_m.log)


# ---------------------------------------------------------------------------
# weighting factors and expectations


def _log_p_terms(p: float) -> tuple[float, float]:
    return math.log(p), math.log1p(-p)


def _proper_subset_event(n: int, lp: float, lq: float, i: int) -> tuple[float, float]:
    """``(log a, log(1 - a))`` with ``a = (1-p)^{n-i} (1 - p^i)``.

    ``a`` is the chance one trial yields a proper subset of a fixed i-set.
    """
    log_outside = (n - i) * lq
    log_a = log_outside + log1mexp(i * lp) if i else NEG_INF
    if log_a < -LN2:
        return log_a, math.log1p(-math.exp(log_a)) if log_a != NEG_INF else 0.0
    # 1 - a = p^i (1-p)^{n-i} + (1 - (1-p)^{n-i}), both non-negative
    log_1ma = logaddexp(i * lp + log_outside, log1mexp(log_outside) if n > i else NEG_INF)
    return log_a, log_1ma


def _point_event(n: int, lp: float, lq: float, i: int) -> tuple[float, float]:
    """``(log pi, log(1 - pi))`` with ``pi = p^i (1-p)^{n-i}``."""
    log_pi = i * lp + (n - i) * lq
    return log_pi, log1mexp(log_pi)


def _weight_log(n: int, p: float, i: int, log_m: float) -> float:
    lp, lq = _log_p_terms(p)
    log_a, log_1ma = _proper_subset_event(n, lp, lq, i)
    return log_never(log_a, log_1ma, log_m)


def weighting_factor(n: int, p: float, i: int, m) -> LogReal:
    """``w(i, m) = (1 - (1-p)^{n-i} (1 - p^i))^m``.

    The probability that none of ``m`` trials yields a proper subset of a
    fixed ``i``-element set.
    """
    if not 0 <= i <= n:
        raise DomainError(f"need 0 <= i <= n, got i={i}, n={n}")
    _check_prob("p", p)
    lm = log_m_of(m) if not (isinstance(m, (int, float)) and m == 0) else NEG_INF
    if p == 0:
        return LogReal.one() if i == 0 or lm == NEG_INF else LogReal.zero()
    if p == 1:
        return LogReal.one()
    return LogReal.from_log(_weight_log(n, p, i, lm))


def weighting_factor_bounds(n: int, p: float, i: int, m) -> tuple[LogReal, LogReal]:
    """``exp(-m(1-p)^{n-i}) (1 - m(1-p)^{2(n-i)}) <= w(i,m) <= exp(-m(1-p)^{n-i+1})``.

    Valid for ``0 < p < 1`` and ``0 < i < n``; the lower side may be negative.
    """
    if not 0 < p < 1:
        raise DomainError(f"need 0 < p < 1, got {p}")
    if not 0 < i < n:
        raise DomainError(f"need 0 < i < n, got i={i}, n={n}")
    lm = log_m_of(m)
    lq = math.log1p(-p)
    upper = LogReal.from_log(-math.exp(lm + (n - i + 1) * lq))
    head = LogReal.from_log(-math.exp(lm + (n - i) * lq))
    lower = head * (LogReal.one() - LogReal.from_log(lm + 2 * (n - i) * lq))
    return lower, upper


class MinSandwich(NamedTuple):
    lower: LogReal
    upper_shifted: LogReal
    upper_scaled: LogReal

    @property
    def upper(self) -> LogReal:
        return min(self.upper_shifted, self.upper_scaled)


def _degenerate(p: float) -> bool:
    return p == 0 or p == 1


def expected_min_sandwich(n: int, p: float, m) -> MinSandwich:
    """Lower and two upper bounds on ``E|min(B(n, m, p))|``.

    Each is a sum over cardinalities ``i`` of ``C(n,i) (1 - (1 - pi_i)^m)``
    weighted by ``w(i, m)`` (lower), ``w(i, m-1)`` (shifted upper); the scaled
    upper bound is ``1 + lower / p``.
    """
    _check_prob("p", p)
    lm = log_m_of(m)
    _check_m(lm)
    if _degenerate(p):
        one = LogReal.one()
        return MinSandwich(one, one, one)
    lp, lq = _log_p_terms(p)
    lm1 = _log_m_minus_one(lm)
    row = log_binomial_row(n)
    low_terms, shift_terms = [], []
    for i in range(n + 1):
        base = row[i] + log_at_least_once(*_point_event(n, lp, lq, i), lm)
        log_a, log_1ma = _proper_subset_event(n, lp, lq, i)
        low_terms.append(base + log_never(log_a, log_1ma, lm))
        shift_terms.append(base + log_never(log_a, log_1ma, lm1))
    lower = log_sum(low_terms)
    return MinSandwich(
        LogReal.from_log(lower),
        LogReal.from_log(log_sum(shift_terms)),
        LogReal.from_log(logaddexp(0.0, lower - lp)),
    )


def expected_min_exact(n: int, p: float, m) -> LogReal:
    """Exact ``E|min(B(n, m, p))|``.

    A fixed i-set is minimal iff no trial yields a proper subset of it and
    some trial yields the set itself, so its probability is
    ``w(i, m) - (1 - (1-p)^{n-i})^m``.  Factoring out ``w(i, m)`` leaves
    ``1 - (1 - q)^m`` with ``q = pi_i / (1 - a_i)``, which avoids the
    cancellation in the difference.
    """
    _check_prob("p", p)
    lm = log_m_of(m)
    _check_m(lm)
    if _degenerate(p):
        return LogReal.one()
    lp, lq = _log_p_terms(p)
    row = log_binomial_row(n)
    terms = []
    for i in range(n + 1):
        log_a, log_1ma = _proper_subset_event(n, lp, lq, i)
        log_q = i * lp + (n - i) * lq - log_1ma
        # 1 - q = (1 - (1-p)^{n-i}) / (1 - a)
        log_1mq = (log1mexp((n - i) * lq) if i < n else NEG_INF) - log_1ma
        log_1mq = min(log_1mq, 0.0)
        log_q = min(log_q, 0.0)
        terms.append(
            row[i] + log_never(log_a, log_1ma, lm) + log_at_least_once(log_q, log_1mq, lm)
        )
    return LogReal.from_log(log_sum(terms))


class DistinctRange(NamedTuple):
    exact: LogReal
    lower: LogReal
    upper: LogReal
    peak_prob: LogReal
    tail_mass: LogReal


def peak_point_prob(n: int, p: float, lo: int, hi: int) -> LogReal:
    """``max_{lo <= i <= hi} p^i (1-p)^{n-i}`` by the odds case split."""
    lp, lq = _log_p_terms(p)
    if p < 0.5:
        i = lo
    elif p == 0.5:
        return LogReal.from_log(-n * LN2)
    else:
        i = hi
    return LogReal.from_log(i * lp + (n - i) * lq)


def expected_distinct_range(n: int, p: float, m, lo: int, hi: int) -> DistinctRange:
    """Expected number of distinct sampled sets with cardinality in ``[lo, hi]``.

    Bracketed by ``m / (1 + m P) * P[lo <= Y <= hi]`` and ``m * P[lo <= Y <= hi]``
    where ``P`` is :func:`peak_point_prob`.
    """
    if not 0 <= lo <= hi <= n:
        raise DomainError(f"need 0 <= lo <= hi <= n, got lo={lo}, hi={hi}, n={n}")
    if not 0 < p < 1:
        raise DomainError(f"need 0 < p < 1, got {p}")
    lm = log_m_of(m)
    _check_m(lm)
    lp, lq = _log_p_terms(p)
    row = log_binomial_row(n)
    exact_terms, mass_terms = [], []
    for i in range(lo, hi + 1):
        log_pi, log_1mpi = _point_event(n, lp, lq, i)
        exact_terms.append(row[i] + log_at_least_once(log_pi, log_1mpi, lm))
        mass_terms.append(row[i] + log_pi)
    mass = log_sum(mass_terms)
    peak = peak_point_prob(n, p, lo, hi)
    lower = lm - logaddexp(0.0, lm + peak.log) + mass
    return DistinctRange(
        exact=LogReal.from_log(log_sum(exact_terms)),
        lower=LogReal.from_log(lower),
        upper=LogReal.from_log(lm + mass),
        peak_prob=peak,
        tail_mass=LogReal.from_log(mass),
    )


# ---------------------------------------------------------------------------
# regimes and the maximum


def info_exponent(alpha: float, p: float) -> float:
    """``Hb(alpha) + (1 - alpha) log2 p``, the growth rate of the middle regime."""
    return binary_entropy(alpha) + (1 - alpha) * math.log2(p)


def info_magnitude(n: int, p: float, alpha: float) -> LogReal:
    """``2^{(Hb(alpha) + (1-alpha) log2 p) n} / sqrt(n)``."""
    return LogReal.from_log(info_exponent(alpha, p) * n * LN2 - 0.5 * math.log(n))


@dataclass(frozen=True)
class RegimeClassification:
    regime: str
    eps: float
    epsp: float
    alpha: float
    magnitude: LogReal | None
    heuristic: bool = False
    note: str = ""


def collapse_alpha(n: int) -> float:
    """Smallest alpha treated as collapsed: ``(n + C log2 n) / n``."""
    return (n + COLLAPSE_LOG_MULTIPLIER * math.log2(n)) / n if n > 1 else 1.0


def regime_classify(
    d: DerivedParams, eps: float = DEFAULT_EPS, epsp: float = DEFAULT_EPSP
) -> RegimeClassification:
    """Label ``(n, m, p)`` with its regime and the matching magnitude.

    ``linear`` for ``alpha <= 1 - p`` (magnitude ``m``); ``info_theoretic``
    for ``1 - p + eps <= alpha <= 1 - epsp``; ``collapsed`` once
    ``alpha n >= n + 10 log2 n`` (magnitude 1, a finite-n heuristic);
    ``near_transition`` in the gaps, where no magnitude is asserted.
    """
    if eps <= 0 or epsp <= 0:
        raise DomainError("margins eps and epsp must be positive")
    n, p, a = d.n, d.p, d.alpha
    if a >= collapse_alpha(n):
        return RegimeClassification(
            "collapsed", eps, epsp, a, LogReal.one(), heuristic=True,
            note=f"alpha*n >= n + {COLLAPSE_LOG_MULTIPLIER:g} log2 n",
        )
    if a <= 1 - p:
        return RegimeClassification("linear", eps, epsp, a, d.m)
    if 1 - p + eps <= a <= 1 - epsp:
        return RegimeClassification("info_theoretic", eps, epsp, a, info_magnitude(n, p, a))
    side = "1-p" if a < 1 - p + eps else "1"
    return RegimeClassification(
        "near_transition", eps, epsp, a, None, note=f"alpha within margin of {side}"
    )


def argmax_m(n: int, p: float) -> tuple[LogReal, LogReal]:
    """``m* = (1-p)^{-n/(1+p)}`` and the order ``(1+p)^n / sqrt(n)`` of the maximum.

    For ``p`` in {0, 1} every ``m`` gives exactly one minimal edge; returns ``(1, 1)``.
    """
    _check_prob("p", p)
    if _degenerate(p):
        return LogReal.one(), LogReal.one()
    m_star = LogReal.from_log(-n / (1 + p) * math.log1p(-p))
    value = LogReal.from_log(n * math.log1p(p) - 0.5 * math.log(n))
    return m_star, value


def optimal_alpha(p: float) -> float:
    return 1 / (1 + p)
