"""Minimization of maximum-entropy random multi-hypergraphs.

Sampling of ``B(n, m, p)``, inclusion-minimal edge filters, analytic bounds
on the expected size of the minimization, and exact oracles that check them.
"""

from .bounds import (
    DerivedParams,
    MinSandwich,
    RegimeClassification,
    TailBoundPair,
    argmax_m,
    binary_entropy,
    binom_coeff_bounds,
    chernoff_integral,
    chernoff_sharp,
    cramer_rate,
    expected_distinct_range,
    expected_min_exact,
    expected_min_sandwich,
    klar_ratio_bound,
    kl_divergence,
    perplexity,
    poly_prob_bounds,
    regime_classify,
    weighting_factor,
)
from .core import EdgeSet, MultiHypergraph, count_distinct
from .errors import DomainError, HyperminError, ResourceCapError, UsageError, VerificationError
from .estimators import MinimalEdgeFilter, MinimizationSizeModel
from .logreal import LogReal
from .minimize import (
    Antichain,
    StreamingMinimizer,
    is_antichain,
    minimize,
    minimize_naive,
    minimize_sorted,
    minimize_stream,
    streaming_insert,
)
from .oracle import enumerate_conditional_survival, enumerate_expected_min, exact_binomial_tail
from .sampler import GENERATOR_VERSION, ModelParams, TrialStream, sample_edge, sample_hypergraph
from .sweep import SweepConfig, SweepRecord, run_sweep
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "Antichain", "DerivedParams", "DomainError", "EdgeSet", "GENERATOR_VERSION",
    "HyperminError", "LogReal", "MinSandwich", "MinimalEdgeFilter", "MinimizationSizeModel",
    "ModelParams", "MultiHypergraph", "RegimeClassification", "ResourceCapError",
    "StreamingMinimizer", "SweepConfig", "SweepRecord", "TailBoundPair", "TrialStream",
    "UsageError", "VerificationError", "argmax_m", "binary_entropy", "binom_coeff_bounds",
    "chernoff_integral", "chernoff_sharp", "count_distinct", "cramer_rate",
    "enumerate_conditional_survival", "enumerate_expected_min", "exact_binomial_tail",
    "expected_distinct_range", "expected_min_exact", "expected_min_sandwich", "is_antichain",
    "kl_divergence", "klar_ratio_bound", "minimize", "minimize_naive", "minimize_sorted",
    "minimize_stream", "perplexity", "poly_prob_bounds", "regime_classify", "run_sweep",
    "run_verify", "sample_edge", "sample_hypergraph", "streaming_insert", "weighting_factor",
]
