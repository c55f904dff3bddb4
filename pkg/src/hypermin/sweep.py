"""Monte Carlo sweeps over m (or alpha) next to the analytic curves."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .bounds import (
    DEFAULT_EPS,
    DEFAULT_EPSP,
    DerivedParams,
    expected_min_exact,
    expected_min_sandwich,
    regime_classify,
)
from .errors import ResourceCapError, UsageError
from .logreal import LogReal
from .minimize import minimal_count
from .sampler import GENERATOR_VERSION, derive_seed, sample_words

DEFAULT_MAX_EDGES = 1_000_000

CSV_COLUMNS = (
    "n", "p", "alpha", "m", "seed", "replicates",
    "empirical_mean_min", "empirical_stderr",
    "lower_sign", "lower_log10", "exact_sign", "exact_log10", "upper_sign", "upper_log10",
    "regime", "flags", "wall_time_ms",
)


@dataclass
class SweepConfig:
    n: int
    p: float
    m_grid: Sequence[int] | None = None
    alpha_grid: Sequence[float] | None = None
    replicates: int = 100
    seed: int = 0
    threads: int = 1
    eps: float = DEFAULT_EPS
    epsp: float = DEFAULT_EPSP
    max_edges: int = DEFAULT_MAX_EDGES

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise UsageError(f"replicates must be >= 1, got {self.replicates}")
        if self.threads < 1:
            raise UsageError(f"threads must be >= 1, got {self.threads}")
        if self.n < 1:
            raise UsageError("n must be >= 1")
        if not 0 < self.p < 1:
            raise UsageError(f"sweeps need 0 < p < 1, got {self.p}")
        if (self.m_grid is None) == (self.alpha_grid is None):
            raise UsageError("give exactly one of an m grid or an alpha grid")

    def points(self) -> list[tuple[float, int]]:
        """``(alpha, m)`` per grid point, with ``m`` rounded to an integer >= 1."""
        lq = -math.log1p(-self.p)
        if self.m_grid is not None:
            return [(math.log(m) / (self.n * lq), int(m)) for m in self.m_grid]
        out = []
        for a in self.alpha_grid:
            m = max(1, round(math.exp(a * self.n * lq)))
            out.append((a, m))
        return out

    def resolved(self) -> dict:
        d = asdict(self)
        d["generator"] = GENERATOR_VERSION
        return d


@dataclass
class SweepRecord:
    n: int
    p: float
    alpha: float
    m: int
    seed: int
    replicates: int
    empirical_mean_min: float | None
    empirical_stderr: float | None
    lower: LogReal
    exact: LogReal
    upper: LogReal
    regime: str
    flags: list[str] = field(default_factory=list)
    wall_time_ms: float = 0.0

    def row(self) -> dict:
        out = {
            "n": self.n, "p": self.p, "alpha": self.alpha, "m": self.m, "seed": self.seed,
            "replicates": self.replicates,
            "empirical_mean_min": self.empirical_mean_min,
            "empirical_stderr": self.empirical_stderr,
            "regime": self.regime, "flags": ";".join(self.flags),
            "wall_time_ms": round(self.wall_time_ms, 3),
        }
        for name in ("lower", "exact", "upper"):
            v = getattr(self, name)
            out[f"{name}_sign"] = v.sign
            out[f"{name}_log10"] = v.log10 if v.sign else None
        return out

    def to_json(self) -> dict:
        d = self.row()
        for name in ("lower", "exact", "upper"):
            del d[f"{name}_sign"], d[f"{name}_log10"]
            d[name] = getattr(self, name).to_json()
        d["flags"] = list(self.flags)
        return d


def replicate_sizes(n: int, m: int, p: float, seed: int, replicates: int) -> np.ndarray:
    """``|min|`` of ``replicates`` independent draws, replicate ``r`` seeded by ``(seed, r)``."""
    out = np.empty(replicates, dtype=np.int64)
    for r in range(replicates):
        words = sample_words(n, m, p, derive_seed(seed, r))
        out[r] = minimal_count(words, n)
    return out


def _run_point(cfg: SweepConfig, g: int, alpha: float, m: int) -> SweepRecord:
    start = time.perf_counter()
    n, p = cfg.n, cfg.p
    sandwich = expected_min_sandwich(n, p, m)
    exact = expected_min_exact(n, p, m)
    regime = regime_classify(DerivedParams.from_m(n, p, m), cfg.eps, cfg.epsp)
    flags = []
    if regime.heuristic:
        flags.append("regime_heuristic")
    point_seed = derive_seed(cfg.seed, g)
    mean = stderr = None
    if m > cfg.max_edges:
        flags.append("sampling_skipped")
    else:
        try:
            sizes = replicate_sizes(n, m, p, point_seed, cfg.replicates)
        except ResourceCapError:
            flags.append("sampling_skipped")
        else:
            mean = float(sizes.mean())
            stderr = float(sizes.std(ddof=1) / math.sqrt(len(sizes))) if len(sizes) > 1 else 0.0
            lo = float(sandwich.lower) - 3 * stderr
            hi = float(sandwich.upper) + 3 * stderr
            if not lo <= mean <= hi:
                flags.append("outside_analytic_band")
    return SweepRecord(
        n=n, p=p, alpha=alpha, m=m, seed=point_seed, replicates=cfg.replicates,
        empirical_mean_min=mean, empirical_stderr=stderr,
        lower=sandwich.lower, exact=exact, upper=sandwich.upper,
        regime=regime.regime, flags=flags,
        wall_time_ms=(time.perf_counter() - start) * 1e3,
    )


def run_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    """One record per grid point; results do not depend on ``cfg.threads``."""
    points = cfg.points()
    if cfg.threads == 1:
        return [_run_point(cfg, g, a, m) for g, (a, m) in enumerate(points)]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        futures = [pool.submit(_run_point, cfg, g, a, m) for g, (a, m) in enumerate(points)]
        return [f.result() for f in futures]


def _header_lines(cfg: SweepConfig) -> list[str]:
    return [f"# {k}={v}" for k, v in cfg.resolved().items()]


def to_csv(cfg: SweepConfig, records: Sequence[SweepRecord]) -> str:
    buf = io.StringIO()
    for line in _header_lines(cfg):
        buf.write(line + "\n")
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def to_jsonl(cfg: SweepConfig, records: Sequence[SweepRecord]) -> str:
    lines = [json.dumps({"config": cfg.resolved()})]
    lines.extend(json.dumps(rec.to_json()) for rec in records)
    return "\n".join(lines) + "\n"
