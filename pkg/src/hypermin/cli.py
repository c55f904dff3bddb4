"""Command line: ``hypermin {sample,minimize,bounds,sweep,verify}``.

Settings resolve as command-line flag, then ``--config`` file (``key=value``
lines), then built-in default.  Exit codes: 0 success, 2 usage error,
3 verification failure, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import bounds
from .core import count_distinct, dumps, loads, read_hypergraph, write_hypergraph
from .errors import HyperminError, UsageError
from .logreal import LogReal
from .minimize import ALGORITHMS, minimize
from .sampler import GENERATOR_VERSION, ModelParams, sample_hypergraph
from .sweep import SweepConfig, run_sweep, to_csv, to_jsonl
from .validation import check_probability
from .verify import CHECKS, run_verify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3


# ---------------------------------------------------------------------------
# value parsers


def parse_count(text: str) -> int:
    """Integers, also written as ``2^k``, ``b**k`` or ``1e5``."""
    s = str(text).strip().replace("**", "^")
    try:
        if "^" in s:
            base, exp = s.split("^", 1)
            return int(base) ** int(exp)
        if any(c in s for c in ".eE"):
            v = float(s)
            if not v.is_integer():
                raise ValueError
            return int(v)
        return int(s)
    except ValueError:
        raise UsageError(f"not an integer count: {text!r}") from None


def parse_log_m(text: str) -> LogReal:
    """Like :func:`parse_count`, but keeps huge powers in log form."""
    s = str(text).strip().replace("**", "^")
    if "^" in s:
        base, exp = s.split("^", 1)
        try:
            b, e = float(base), float(exp)
        except ValueError:
            raise UsageError(f"not a count: {text!r}") from None
        if b <= 0:
            raise UsageError(f"m must be positive, got {text!r}")
        return LogReal.from_log(e * math.log(b))
    try:
        v = float(s)
    except ValueError:
        raise UsageError(f"not a count: {text!r}") from None
    if v <= 0:
        raise UsageError(f"m must be positive, got {text!r}")
    return LogReal.from_float(v)


def parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def parse_grid(text: str, log_spaced: bool) -> list[float]:
    """``a,b,c`` lists the points; ``start:stop:count`` spaces them evenly.

    Ranges are geometric for m grids and linear for alpha grids.
    """
    s = str(text).strip()
    if ":" in s:
        parts = s.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid range must be start:stop:count, got {text!r}")
        lo, hi = (float(parse_count(x)) if log_spaced else parse_float(x) for x in parts[:2])
        count = parse_count(parts[2])
        if count < 1:
            raise UsageError("grid count must be >= 1")
        if log_spaced:
            if lo <= 0 or hi <= 0:
                raise UsageError("m grid endpoints must be positive")
            return [float(v) for v in np.geomspace(lo, hi, count)]
        return [float(v) for v in np.linspace(lo, hi, count)]
    return [float(parse_count(x)) if log_spaced else parse_float(x) for x in s.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# settings resolution


def read_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (t.strip() for t in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


class Settings:
    """Flag value if given, else config file value, else the default."""

    def __init__(self, args: argparse.Namespace, config: dict[str, str]):
        self._args = args
        self._config = config
        self.resolved: dict[str, object] = {}

    def get(self, key: str, parse: Callable[[str], object], default=None, required: bool = False):
        flag = getattr(self._args, key, None)
        if flag is not None:
            value = parse(flag) if isinstance(flag, str) else flag
        elif key in self._config:
            value = parse(self._config[key])
        elif required:
            raise UsageError(f"--{key.replace('_', '-')} is required")
        else:
            value = default
        self.resolved[key] = value
        return value


def _probability(text: str) -> float:
    p = parse_float(text)
    if not 0 <= p <= 1:
        raise UsageError(f"p must lie in [0, 1], got {p}")
    return p


def _write_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_sample(args, cfg: Settings) -> int:
    params = ModelParams(
        n=cfg.get("n", parse_count, required=True),
        m=cfg.get("m", parse_count, required=True),
        p=cfg.get("p", _probability, required=True),
        seed=cfg.get("seed", parse_count, default=0),
    )
    H = sample_hypergraph(params)
    out = cfg.get("out", str)
    if out is None or out == "-":
        sys.stdout.write(dumps(H))
    else:
        write_hypergraph(H, out)
    return EXIT_OK


def cmd_minimize(args, cfg: Settings) -> int:
    algo = cfg.get("algo", str, default="sorted")
    if algo not in ALGORITHMS:
        raise UsageError(f"--algo must be one of {', '.join(ALGORITHMS)}")
    source = cfg.get("in_path", str)
    if source is None or source == "-":
        H = loads(sys.stdin.read())
    else:
        H = read_hypergraph(source)
    start = time.perf_counter()
    result = minimize(H, algo)
    wall_ms = (time.perf_counter() - start) * 1e3
    _write_text(dumps(result.to_hypergraph()), cfg.get("out", str))
    print(
        f"m={len(H)} distinct={count_distinct(H)} minimal={len(result)} "
        f"algo={algo} wall_ms={wall_ms:.3f}",
        file=sys.stderr,
    )
    return EXIT_OK


def bounds_report(n: int, p: float, log_m: LogReal | None, alpha: float | None,
                  eps: float, epsp: float) -> dict:
    """Everything the analytic side says about one ``(n, m, p)`` point."""
    if (log_m is None) == (alpha is None):
        raise UsageError("give exactly one of --m and --alpha")
    if n < 1:
        raise UsageError("n must be >= 1")
    check_probability(p)
    if 0 < p < 1:
        d = bounds.DerivedParams.from_alpha(n, p, alpha) if alpha is not None \
            else bounds.DerivedParams.from_m(n, p, log_m)
        m = d.m
        regime = bounds.regime_classify(d, eps, epsp)
        head = {
            "alpha": d.alpha, "i_star": d.i_star, "regime": regime.regime,
            "regime_heuristic": regime.heuristic, "regime_note": regime.note,
            "magnitude": regime.magnitude.to_json() if regime.magnitude else None,
        }
        distinct = bounds.expected_distinct_range(n, p, m, 0, n).exact
    else:
        if log_m is None:
            raise UsageError("alpha is undefined for p in {0, 1}; give --m")
        m = log_m
        head = {"alpha": None, "i_star": None, "regime": "deterministic",
                "regime_heuristic": False, "regime_note": "p in {0, 1}", "magnitude": LogReal.one().to_json()}
        distinct = LogReal.one()
    s = bounds.expected_min_sandwich(n, p, m)
    m_star, peak = bounds.argmax_m(n, p)
    return {
        "n": n, "p": p, "m": m.to_json(), "eps": eps, "epsp": epsp,
        **head,
        "sandwich": {
            "lower": s.lower.to_json(),
            "upper_shifted": s.upper_shifted.to_json(),
            "upper_scaled": s.upper_scaled.to_json(),
        },
        "exact": bounds.expected_min_exact(n, p, m).to_json(),
        "distinct_exact": distinct.to_json(),
        "m_star": m_star.to_json(),
        "max_value_estimate": peak.to_json(),
    }


def _fmt(v: dict | None) -> str:
    if v is None:
        return "n/a"
    if v["sign"] == 0:
        return "0"
    mag = v["log10_magnitude"]
    sign = "-" if v["sign"] < 0 else ""
    if abs(mag) < 15:
        return f"{sign}{10 ** mag:.6g}"
    return f"{sign}10^{mag:.6f}"


def cmd_bounds(args, cfg: Settings) -> int:
    n = cfg.get("n", parse_count, required=True)
    p = cfg.get("p", _probability, required=True)
    log_m = cfg.get("m", parse_log_m)
    alpha = cfg.get("alpha", parse_float)
    eps = cfg.get("eps", parse_float, default=bounds.DEFAULT_EPS)
    epsp = cfg.get("epsp", parse_float, default=bounds.DEFAULT_EPSP)
    report = bounds_report(n, p, log_m, alpha, eps, epsp)
    if args.json:
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = [
            f"n={n} p={p} m={_fmt(report['m'])} eps={eps} epsp={epsp}",
            f"alpha={report['alpha']} i_star={report['i_star']}",
            f"regime={report['regime']}" + (" (heuristic)" if report["regime_heuristic"] else ""),
            f"E|min| lower={_fmt(report['sandwich']['lower'])} "
            f"exact={_fmt(report['exact'])} "
            f"upper_shifted={_fmt(report['sandwich']['upper_shifted'])} "
            f"upper_scaled={_fmt(report['sandwich']['upper_scaled'])}",
            f"E||H|| exact={_fmt(report['distinct_exact'])}",
            f"argmax m*={_fmt(report['m_star'])} order of maximum={_fmt(report['max_value_estimate'])}",
        ]
        text = "\n".join(lines) + "\n"
    _write_text(text, cfg.get("out", str))
    return EXIT_OK


def cmd_sweep(args, cfg: Settings) -> int:
    m_grid = cfg.get("m", lambda s: parse_grid(s, log_spaced=True))
    alpha_grid = cfg.get("alpha", lambda s: parse_grid(s, log_spaced=False))
    fmt = cfg.get("format", str, default="csv")
    if fmt not in ("csv", "jsonl"):
        raise UsageError("--format must be csv or jsonl")
    config = SweepConfig(
        n=cfg.get("n", parse_count, required=True),
        p=cfg.get("p", _probability, required=True),
        m_grid=None if m_grid is None else [int(round(m)) for m in m_grid],
        alpha_grid=alpha_grid,
        replicates=cfg.get("replicates", parse_count, default=100),
        seed=cfg.get("seed", parse_count, default=0),
        threads=cfg.get("threads", parse_count, default=1),
        eps=cfg.get("eps", parse_float, default=bounds.DEFAULT_EPS),
        epsp=cfg.get("epsp", parse_float, default=bounds.DEFAULT_EPSP),
        max_edges=cfg.get("max_edges", parse_count, default=1_000_000),
    )
    records = run_sweep(config)
    text = to_csv(config, records) if fmt == "csv" else to_jsonl(config, records)
    _write_text(text, cfg.get("out", str))
    return EXIT_OK


def cmd_verify(args, cfg: Settings) -> int:
    names = args.only or None
    if names:
        unknown = [x for x in names if x not in CHECKS]
        if unknown:
            raise UsageError(f"unknown check families: {', '.join(unknown)}")
    report = run_verify(names)
    _write_text("\n".join(report.lines()) + "\n", cfg.get("out", str))
    return EXIT_OK if report.ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypermin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hypermin 0.1.0 ({GENERATOR_VERSION})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key=value file; flags override it")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("sample", help="draw B(n, m, p) in the text edge format")
    common(p)
    p.add_argument("--n")
    p.add_argument("--m")
    p.add_argument("--p")
    p.add_argument("--seed")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("minimize", help="inclusion-minimal edges of a hypergraph file")
    common(p)
    p.add_argument("--in", dest="in_path", help="input file (default stdin)")
    p.add_argument("--algo", choices=ALGORITHMS)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("bounds", help="analytic report for one (n, m, p) point")
    common(p)
    p.add_argument("--n")
    p.add_argument("--p")
    p.add_argument("--m", help="edge count; 2^k style exponents allowed")
    p.add_argument("--alpha")
    p.add_argument("--eps")
    p.add_argument("--epsp")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="Monte Carlo grid with analytic columns")
    common(p)
    p.add_argument("--n")
    p.add_argument("--p")
    p.add_argument("--m", help="m grid: a,b,c or start:stop:count (geometric)")
    p.add_argument("--alpha", help="alpha grid: a,b,c or start:stop:count (linear)")
    p.add_argument("--replicates")
    p.add_argument("--seed")
    p.add_argument("--threads")
    p.add_argument("--eps")
    p.add_argument("--epsp")
    p.add_argument("--max-edges", dest="max_edges")
    p.add_argument("--format", choices=("csv", "jsonl"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check every bound against the exact oracles")
    common(p)
    p.add_argument("--only", nargs="*", metavar="FAMILY", help=f"subset of: {', '.join(CHECKS)}")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, Settings(args, read_config(args.config)))
    except HyperminError as exc:
        print(f"hypermin: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"hypermin: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
