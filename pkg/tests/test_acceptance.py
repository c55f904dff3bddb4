"""Acceptance criteria, one check per criterion.

Each check prints a single ``PASS``/``FAIL`` line with the measured numbers.
Run ``python tests/test_acceptance.py`` for the summary alone.
"""

from __future__ import annotations

import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from hypermin import bounds as B
from hypermin import verify
from hypermin.core import count_distinct
from hypermin.logreal import LogReal, within
from hypermin.minimize import is_antichain, minimize_naive, minimize_sorted, minimize_stream
from hypermin.oracle import enumerate_expected_min, exact_binomial_tail
from hypermin.sampler import ModelParams, sample_hypergraph
from hypermin.sweep import replicate_sizes

SLACK = 1e-9
# ratio E|min| / m at n=24, p=1/2 over the alpha grid 0, 0.025, ..., 0.5;
# observed range on first run was [0.40408, 1.0]
LINEAR_BAND = (0.40, 1.0)


def _timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


def criterion_1():
    worst = 0.0
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                oracle = enumerate_expected_min(n, p, m)
                worst = max(worst, abs(float(B.expected_min_exact(n, float(p), m)) - float(oracle)))
    anchor = enumerate_expected_min(2, Fraction(1, 2), 2)
    ok = worst <= 1e-12 and anchor == Fraction(9, 8) and abs(float(B.expected_min_exact(2, 0.5, 2)) - 1.125) <= 1e-12
    return ok, f"max |closed form - enumeration| = {worst:.2e}; E(n=2,m=2,p=1/2) = {anchor}"


def criterion_2():
    res = verify.check_expected_min_sandwich()
    worst = math.inf
    for n in (4, 8, 12, 16):
        for p in (0.25, 0.5, 0.75):
            for k in range(21):
                s = B.expected_min_sandwich(n, p, 2**k)
                e = B.expected_min_exact(n, p, 2**k)
                worst = min(worst, (e.log - s.lower.log), (s.upper.log - e.log))
    return res.ok, f"{res.checked} checks, {len(res.failures)} violations; smallest log margin {worst:.2e}"


def criterion_3():
    sharp = verify.check_chernoff_sharp()
    integral = verify.check_chernoff_integral()
    on_grid = 0
    bad = 0
    for n in verify.CHERNOFF_NS:
        for p in verify.CHERNOFF_PS:
            for tail in ("lower", "upper"):
                for x in verify.chernoff_xs(n, p, tail):
                    if abs(x * n - round(x * n)) <= 1e-9 * n and 0 < round(x * n) < n:
                        on_grid += 1
                        k = round(x * n)
                        if not B.chernoff_integral(n, p, k / n, tail).contains(
                            exact_binomial_tail(n, p, k, tail), SLACK
                        ):
                            bad += 1
    ok = sharp.ok and integral.ok and bad == 0
    return ok, (
        f"general: {sharp.checked} checks, {len(sharp.failures)} violations; "
        f"integral: {integral.checked} checks, {len(integral.failures)} violations "
        f"(+{on_grid} integral grid points, {bad} violations)"
    )


def criterion_4():
    res = verify.check_klar_ratio_bound()
    _, upper = B.klar_ratio_bound(10, 0.5, 3)
    ratio = verify._klar_exact_ratios(10, 0.5)[3]
    spot = math.isclose(upper, 1.6) and math.isclose(ratio, 176 / 120, rel_tol=1e-12)
    return res.ok and spot, (
        f"{res.checked} checks, {len(res.failures)} violations; n=10 p=0.5 k=3: "
        f"bound {upper:g}, ratio {ratio:.6f} (176/120 = {176 / 120:.6f})"
    )


def criterion_5():
    n, p, m = 60, 0.5, 2**30
    d = B.DerivedParams.from_m(n, p, m)
    i_star = round(d.i_star)
    w_lo = float(B.weighting_factor(n, p, i_star - 8, m))
    w_hi = float(B.weighting_factor(n, p, i_star + 8, m))
    fails = [
        i for i in range(1, n)
        if not within(*_corollary(n, p, i, m), SLACK)
    ]
    ok = i_star == 30 and w_lo >= 0.9 and w_hi <= 0.1 and not fails
    return ok, f"i*={d.i_star:g}; w(i*-8)={w_lo:.4f}, w(i*+8)={w_hi:.3e}; sandwich violations at i={fails}"


def _corollary(n, p, i, m):
    lo, hi = B.weighting_factor_bounds(n, p, i, m)
    return lo, B.weighting_factor(n, p, i, m), hi


def criterion_6():
    n, p = 200, 0.6
    top = 1.2 * n * -math.log1p(-p)
    grid = np.linspace(0.0, top, 200)
    values = [B.expected_min_exact(n, p, LogReal.from_log(lm)).log for lm in grid]
    best = grid[int(np.argmax(values))]
    alpha = best / (n * -math.log1p(-p))
    n2, p2 = 50, 0.5
    start = (n2 + 10 * math.log2(n2)) * math.log(2)
    excess = max(
        float(B.expected_min_exact(n2, p2, LogReal.from_log(start + extra))) - 1
        for extra in (0.0, math.log(2), 10 * math.log(2), 100.0)
    )
    ok = abs(alpha - 1 / 1.6) <= 0.05 and excess <= 1e-6
    return ok, f"argmax alpha = {alpha:.4f} (target {1 / 1.6:.4f}); collapse excess E-1 <= {excess:.2e}"


def criterion_7():
    n, p = 24, 0.5
    ratios = []
    for k in range(21):
        d = B.DerivedParams.from_alpha(n, p, 0.025 * k)
        ratios.append(math.exp(B.expected_min_exact(n, p, d.m).log - d.log_m.log))
    c1, c2 = LINEAR_BAND
    ok = all(c1 <= r <= c2 for r in ratios) and c2 / c1 <= 4
    return ok, f"E/m in [{min(ratios):.5f}, {max(ratios):.5f}] inside band [{c1}, {c2}], c2/c1 = {c2 / c1:.2f}"


def criterion_8():
    rng = random.Random(20240611)
    mismatches = non_antichains = 0
    for _ in range(1000):
        n = rng.randint(1, 64)
        m = rng.randint(1, 200)
        p = rng.choice([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
        H = sample_hypergraph(ModelParams(n, m, p, seed=rng.getrandbits(64)))
        ref = minimize_naive(H)
        if minimize_sorted(H) != ref or minimize_stream(H) != ref:
            mismatches += 1
        if not is_antichain(ref) or not 1 <= len(ref) <= count_distinct(H):
            non_antichains += 1
    return mismatches == 0 and non_antichains == 0, (
        f"1000 instances: {mismatches} mismatches, {non_antichains} invalid antichains"
    )


def criterion_9():
    res = verify.check_conditional_survival()
    return res.ok, f"{res.checked} exact (pA, pB, m) checks, {len(res.failures)} violations"


def criterion_10():
    n, p, m, reps = 12, 0.5, 256, 10_000
    sizes = replicate_sizes(n, m, p, seed=12345, replicates=reps)
    mean = sizes.mean()
    se = sizes.std(ddof=1) / math.sqrt(reps)
    exact = float(B.expected_min_exact(n, p, m))
    z = (mean - exact) / se
    return abs(z) <= 5, f"mean {mean:.4f} +- {se:.4f} vs exact {exact:.4f} (z = {z:+.2f})"


def criterion_11():
    minimize_sorted(sample_hypergraph(ModelParams(128, 200, 0.5, seed=0)))  # compile the kernel
    H = sample_hypergraph(ModelParams(128, 100_000, 0.5, seed=7))
    start = time.perf_counter()
    result = minimize_sorted(H)
    elapsed = time.perf_counter() - start
    regime = B.regime_classify(B.DerivedParams.from_m(128, 0.5, 100_000))
    ratio = len(result) / float(regime.magnitude)
    probe = random.Random(1).sample(list(result), 300)
    ok = elapsed < 5 and 1e-2 <= ratio <= 1e2 and is_antichain(probe)
    return ok, (
        f"{elapsed:.2f} s; |min| = {len(result)}, regime {regime.regime} magnitude "
        f"{float(regime.magnitude):.0f}, ratio {ratio:.3f}"
    )


CRITERIA = {
    1: ("oracle trust anchor", criterion_1, 1.0),
    2: ("expectation sandwich", criterion_2, 10.0),
    3: ("sharp Chernoff-Hoeffding bounds", criterion_3, 30.0),
    4: ("Klar ratio", criterion_4, None),
    5: ("weighting-factor threshold", criterion_5, None),
    6: ("phase-transition shape", criterion_6, None),
    7: ("linear regime band", criterion_7, None),
    8: ("algorithm equivalence", criterion_8, 20.0),
    9: ("conditional-survival inequality", criterion_9, None),
    10: ("Monte Carlo consistency", criterion_10, 10.0),
    11: ("performance smoke", criterion_11, None),
}


def evaluate(number: int) -> tuple[bool, str]:
    name, fn, budget = CRITERIA[number]
    ok, detail, elapsed = _timed(fn)
    timing = f"{elapsed:.2f} s" + (f" (limit {budget:g} s)" if budget else "")
    if budget is not None and elapsed >= budget:
        ok = False
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2} {name}: {detail}; {timing}"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
