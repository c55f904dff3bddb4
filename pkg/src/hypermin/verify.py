"""Cross-checks of every analytic bound against the exact oracles.

Each check family is named after the operation it exercises and returns a
:class:`FamilyResult`; :func:`run_verify` runs them all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import bounds
from .logreal import NEG_INF, LogReal, logaddexp, within
from .oracle import (
    enumerate_conditional_survival,
    enumerate_expected_min,
    exact_binomial_tail,
    log_binomial_pmf_row,
)

SLACK = 1e-9

CHERNOFF_NS = (10, 50, 200, 1000, 5000)
CHERNOFF_PS = (0.2, 0.5, 0.8)
CHERNOFF_XS_PER_SIDE = 20
SANDWICH_NS = (4, 8, 12, 16)
SANDWICH_PS = (0.25, 0.5, 0.75)
SANDWICH_LOG2_MS = range(0, 21)
TINY_PS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


@dataclass
class FamilyResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, what: str) -> None:
        self.checked += 1
        if not cond:
            self.failures.append(f"{self.name}: {what}")


def check_expected_min_exact() -> FamilyResult:
    """Closed form against full enumeration for n, m <= 3."""
    res = FamilyResult("expected_min_exact")
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            for p in TINY_PS:
                oracle = enumerate_expected_min(n, p, m)
                value = float(bounds.expected_min_exact(n, float(p), m))
                res.expect(abs(value - float(oracle)) <= 1e-12,
                           f"n={n} m={m} p={p}: closed form {value!r} vs enumeration {oracle}")
    res.expect(enumerate_expected_min(2, Fraction(1, 2), 2) == Fraction(9, 8),
               "n=2 m=2 p=1/2 enumeration differs from 9/8")
    return res


def check_expected_min_sandwich(
    ns: Iterable[int] = SANDWICH_NS,
    ps: Iterable[float] = SANDWICH_PS,
    log2_ms: Iterable[int] = SANDWICH_LOG2_MS,
) -> FamilyResult:
    res = FamilyResult("expected_min_sandwich")
    log2_ms = list(log2_ms)
    for n in ns:
        for p in ps:
            for k in log2_ms:
                m = 2**k
                s = bounds.expected_min_sandwich(n, p, m)
                exact = bounds.expected_min_exact(n, p, m)
                res.expect(within(s.lower, exact, s.upper, SLACK),
                           f"n={n} p={p} m=2^{k}: {s} vs exact {exact}")
                distinct = bounds.expected_distinct_range(n, p, m, 0, n).exact
                res.expect(within(LogReal.zero(), exact, distinct, SLACK)
                           and within(LogReal.zero(), distinct, LogReal.from_float(m), SLACK),
                           f"n={n} p={p} m=2^{k}: exact {exact} <= distinct {distinct} <= m fails")
    return res


def chernoff_xs(n: int, p: float, tail: str, count: int = CHERNOFF_XS_PER_SIDE) -> list[float]:
    """``count`` evenly spaced points strictly inside (1/n, p) or (p, 1 - 1/n)."""
    lo, hi = (1 / n, p) if tail == "lower" else (p, 1 - 1 / n)
    if hi <= lo:
        return []
    return [lo + (hi - lo) * j / (count + 1) for j in range(1, count + 1)]


def _tail_k(n: int, x: float, tail: str) -> int:
    xn = x * n
    if tail == "lower":
        return math.floor(xn + 1e-9 * n)
    return math.ceil(xn - 1e-9 * n)


def check_chernoff_sharp(
    ns: Iterable[int] = CHERNOFF_NS, ps: Iterable[float] = CHERNOFF_PS
) -> FamilyResult:
    res = FamilyResult("chernoff_sharp")
    for n in ns:
        for p in ps:
            for tail in ("lower", "upper"):
                for x in chernoff_xs(n, p, tail):
                    pair = bounds.chernoff_sharp(n, p, x, tail)
                    exact = exact_binomial_tail(n, p, _tail_k(n, x, tail), tail)
                    res.expect(pair.contains(exact, SLACK),
                               f"n={n} p={p} x={x} {tail}: exact {exact} not in "
                               f"[{pair.lower}, {pair.upper}]")
    return res


def integral_ks(n: int, p: float, tail: str, count: int = CHERNOFF_XS_PER_SIDE) -> list[int]:
    """Up to ``count`` integers ``k`` with ``k/n`` strictly inside (0, p) or (p, 1)."""
    if tail == "lower":
        ks = [k for k in range(1, n) if k < p * n]
    else:
        ks = [k for k in range(1, n) if k > p * n]
    if len(ks) <= count:
        return ks
    step = (len(ks) - 1) / (count - 1)
    return sorted({ks[round(j * step)] for j in range(count)})


def check_chernoff_integral(
    ns: Iterable[int] = CHERNOFF_NS, ps: Iterable[float] = CHERNOFF_PS
) -> FamilyResult:
    res = FamilyResult("chernoff_integral")
    for n in ns:
        for p in ps:
            for tail in ("lower", "upper"):
                for k in integral_ks(n, p, tail):
                    x = k / n
                    pair = bounds.chernoff_integral(n, p, x, tail)
                    general_ok = (x >= 1 / n and tail == "lower") or (x <= 1 - 1 / n and tail == "upper")
                    exact = exact_binomial_tail(n, p, k, tail)
                    res.expect(pair.contains(exact, SLACK),
                               f"n={n} p={p} k={k} {tail}: exact {exact} not in "
                               f"[{pair.lower}, {pair.upper}]")
                    if general_ok:
                        wide = bounds.chernoff_sharp(n, p, x, tail)
                        res.expect(wide.lower <= pair.lower and pair.upper <= wide.upper,
                                   f"n={n} p={p} k={k} {tail}: integral pair not nested in general pair")
    return res


def _klar_exact_ratios(n: int, p: float) -> list[float]:
    """``P[Y <= k] / P[Y = k]`` for every ``k``, from one cumulative pass."""
    row = log_binomial_pmf_row(n, p)
    out, acc = [], NEG_INF
    for lp in row:
        acc = logaddexp(acc, lp)
        out.append(math.exp(acc - lp))
    return out


def check_klar_ratio_bound(max_n: int = 200, ps: Iterable[float] = (0.3, 0.5, 0.7)) -> FamilyResult:
    res = FamilyResult("klar_ratio_bound")
    for p in ps:
        for n in range(1, max_n + 1):
            ratios = _klar_exact_ratios(n, p)
            for k in range(0, math.floor(p * n) + 1):
                if n + 1 - k - (n + 1) * (1 - p) <= 0:
                    continue
                one, upper = bounds.klar_ratio_bound(n, p, k)
                ratio = ratios[k]
                res.expect(one * (1 - SLACK) <= ratio <= upper * (1 + SLACK),
                           f"n={n} p={p} k={k}: ratio {ratio} not in [1, {upper}]")
    return res


def check_weighting_factor() -> FamilyResult:
    res = FamilyResult("weighting_factor")
    for n in (10, 30, 60):
        for p in (0.25, 0.5, 0.75):
            for k in range(0, 2 * n, 3):
                m = LogReal.from_log(k * math.log(2))
                prev = None
                for i in range(0, n + 1):
                    w = bounds.weighting_factor(n, p, i, m)
                    res.expect(LogReal.zero() <= w <= LogReal.one(), f"n={n} p={p} i={i} m=2^{k}: w={w}")
                    if prev is not None:
                        res.expect(w <= prev, f"n={n} p={p} m=2^{k}: w not non-increasing at i={i}")
                    prev = w
                    if 0 < i < n:
                        lo, hi = bounds.weighting_factor_bounds(n, p, i, m)
                        res.expect(within(lo, w, hi, SLACK),
                                   f"n={n} p={p} i={i} m=2^{k}: w={w} outside [{lo}, {hi}]")
                res.expect(bounds.weighting_factor(n, p, 0, m) == LogReal.one(),
                           f"n={n} p={p} m=2^{k}: w(0, m) != 1")
    return res


def check_expected_distinct_range() -> FamilyResult:
    res = FamilyResult("expected_distinct_range")
    for n in (5, 12, 20):
        for p in (0.3, 0.5, 0.7):
            for m in (1, 10, 1000, 10**6):
                for lo, hi in ((0, n), (0, n // 2), (n // 3, n), (n // 2, n // 2)):
                    d = bounds.expected_distinct_range(n, p, m, lo, hi)
                    res.expect(within(d.lower, d.exact, d.upper, SLACK),
                               f"n={n} p={p} m={m} [{lo},{hi}]: {d}")
    return res


def check_conditional_survival(grid: int = 20, max_m: int = 12) -> FamilyResult:
    res = FamilyResult("enumerate_conditional_survival")
    for a in range(0, grid + 1):
        for b in range(1, grid + 1 - a):
            pA, pB = Fraction(a, grid), Fraction(b, grid)
            for m in range(1, max_m + 1):
                lhs, rhs = enumerate_conditional_survival(pA, pB, m)
                res.expect(lhs <= rhs, f"pA={pA} pB={pB} m={m}: lhs {lhs} > rhs {rhs}")
    return res


def check_elementary() -> FamilyResult:
    res = FamilyResult("elementary_bounds")
    for n in (1, 2, 7, 10, 50, 100, 400):
        for k in range(1, n):
            lo, hi = bounds.binom_coeff_bounds(n, k / n)
            exact = LogReal.from_log(math.log(math.comb(n, k)))
            res.expect(within(lo, exact, hi, SLACK), f"binom_coeff_bounds n={n} k={k}")
    for n in (0, 1, 5, 50, 500):
        for x in (0.0, 0.001, 0.01, 0.1, 0.3, 0.5, 0.9, 1.0):
            b = bounds.poly_prob_bounds(n, x)
            tol = 1e-12
            res.expect(b.power_lower - tol <= b.power_exact <= b.power_upper + tol,
                       f"poly_prob_bounds power n={n} x={x}: {b}")
            res.expect(b.badkobeh_lower - tol <= b.badkobeh_exact <= b.badkobeh_upper + tol,
                       f"poly_prob_bounds badkobeh n={n} x={x}: {b}")
    for p in (0.1, 0.3, 0.5, 0.9):
        prev = -1.0
        for j in range(0, 101):
            x = p * j / 100
            v = 2.0 ** -bounds.kl_divergence(x, p)
            res.expect(v >= prev - 1e-15, f"2^-D(x||p) decreases at x={x} p={p}")
            prev = v
    return res


CHECKS: dict[str, Callable[[], FamilyResult]] = {
    "expected_min_exact": check_expected_min_exact,
    "expected_min_sandwich": check_expected_min_sandwich,
    "chernoff_sharp": check_chernoff_sharp,
    "chernoff_integral": check_chernoff_integral,
    "klar_ratio_bound": check_klar_ratio_bound,
    "weighting_factor": check_weighting_factor,
    "expected_distinct_range": check_expected_distinct_range,
    "enumerate_conditional_survival": check_conditional_survival,
    "elementary_bounds": check_elementary,
}


@dataclass
class VerifyReport:
    families: list[FamilyResult]

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.families)

    def lines(self) -> list[str]:
        out = []
        for f in self.families:
            status = "PASS" if f.ok else "FAIL"
            out.append(f"{status} {f.name}: {f.checked} checks, {len(f.failures)} failures")
            out.extend(f"  {msg}" for msg in f.failures[:20])
        out.append("verify: " + ("all checks passed" if self.ok else "FAILED"))
        return out


def run_verify(names: Iterable[str] | None = None) -> VerifyReport:
    selected = list(CHECKS) if names is None else list(names)
    return VerifyReport([CHECKS[name]() for name in selected])
