"""Seeded Monte Carlo estimates of the scenario probabilities.

Trial ``k`` of an experiment draws everything it needs from
``trial_rng(master_seed, k)``. When a float-mode oracle returns a degenerate
verdict the trial is redrawn from ``trial_rng(master_seed, k, attempt)``
with the next attempt number, and the discard is counted. Counts are plain
integer sums over trials, so a report does not depend on how the trials were
split between worker processes.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Optional

import numpy as np

from . import geometry, games
from .exact import ExactProbability, Kind, Scenario, scenario_probability, step_distribution
from .geometry import DEGENERATE
from .lp import FLOAT, ArithmeticMode
from .sampler import CloudSpec, DistributionSpec, FixedPoint, StdNormal, sample_cloud, trial_rng

LEVELS = (0.95, 0.99, 0.999)
MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: Scenario
    trials: int
    master_seed: int = 0
    dist: DistributionSpec = StdNormal()
    mode: ArithmeticMode = FLOAT
    confidence_level: float = 0.999
    # first point for BocceFixedFirst; defaults to e_1
    fixed_first: Optional[tuple] = None
    # InhomogeneousPositive: draw b from ``dist`` instead of using e_1
    random_b: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.confidence_level not in LEVELS:
            raise ValueError(f"confidence level must be one of {LEVELS}")
        if self.fixed_first is not None:
            if self.scenario.kind is not Kind.BOCCE_FIXED_FIRST:
                raise ValueError("fixed_first only applies to bocce-fixed-first")
            FixedPoint(self.fixed_first)  # validates: nonzero
            if len(self.fixed_first) != self.scenario.d:
                raise ValueError("fixed_first has the wrong dimension")


def _matrix_from_columns(cloud):
    return [list(r) for r in zip(*cloud.points)]


def sample_trial(config: ExperimentConfig, rng):
    """The random object one trial looks at: a point cloud or ``(A, b)``."""
    s, dist = config.scenario, config.dist
    if s.kind is Kind.BOCCE:
        return sample_cloud(CloudSpec.iid(s.n, s.d, dist), rng)
    if s.kind is Kind.BOCCE_FIXED_FIRST:
        first = config.fixed_first or (1.0,) + (0.0,) * (s.d - 1)
        spec = CloudSpec(s.d, (FixedPoint(first),) + (dist,) * (s.n - 1))
        return sample_cloud(spec, rng)
    extra = 1 if s.kind is Kind.INHOMOGENEOUS_POSITIVE and config.random_b else 0
    cols = sample_cloud(CloudSpec.iid(s.n + extra, s.m, dist), rng)
    A = _matrix_from_columns(cols)
    if s.kind is Kind.INHOMOGENEOUS_POSITIVE:
        if extra:
            b = [r.pop() for r in A]
        else:
            b = [1.0] + [0.0] * (s.m - 1)
        return A, b
    return A


def judge(config: ExperimentConfig, obj):
    """Success verdict for one sampled object (True, False or DEGENERATE)."""
    kind, mode = config.scenario.kind, config.mode
    if kind in (Kind.BOCCE, Kind.BOCCE_FIXED_FIRST):
        inside = geometry.origin_in_hull(obj, mode)
        return DEGENERATE if inside is DEGENERATE else not inside
    if kind is Kind.HOMOGENEOUS_POSITIVE:
        return geometry.homogeneous_positive_solution(obj, mode)
    if kind is Kind.INHOMOGENEOUS_POSITIVE:
        A, b = obj
        return geometry.inhomogeneous_positive_solution(A, b, mode)
    if kind is Kind.SUBSPACE_POSITIVE:
        return geometry.subspace_contains_positive(obj, strict=False, mode=mode)
    if kind is Kind.GAME_ROW_FAVOR:
        return games.row_player_favored(obj, mode)
    if kind is Kind.POSITIVE_IO:
        return geometry.positive_io(obj, mode)
    raise ValueError(f"unsupported scenario {kind!r}")


def run_trial(config: ExperimentConfig, k: int):
    """``(success, discarded)`` for trial ``k``."""
    for attempt in range(MAX_ATTEMPTS):
        verdict = judge(config, sample_trial(config, trial_rng(config.master_seed, k, attempt)))
        if verdict is not DEGENERATE:
            return bool(verdict), attempt
    raise RuntimeError(f"trial {k}: {MAX_ATTEMPTS} degenerate draws in a row")


def _run_block(config, start, stop):
    hits = discards = 0
    for k in range(start, stop):
        ok, d = run_trial(config, k)
        hits += ok
        discards += d
    return hits, discards


def _blocks(total, workers):
    size = max(1, math.ceil(total / (4 * workers)))
    return [(a, min(a + size, total)) for a in range(0, total, size)]


def _map_blocks(fn, config, total, workers):
    if workers <= 1:
        return [fn(config, 0, total)]
    blocks = _blocks(total, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, config, a, b) for a, b in blocks]
        return [f.result() for f in futures]


def wilson_interval(successes: int, trials: int, level: float = 0.95):
    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError("need 0 <= successes <= trials and trials >= 1")
    z = NormalDist().inv_cdf(0.5 + level / 2)
    p = successes / trials
    z2n = z * z / trials
    center = (p + z2n / 2) / (1 + z2n)
    half = z / (1 + z2n) * math.sqrt(p * (1 - p) / trials + z2n / (4 * trials))
    low = 0.0 if successes == 0 else min(p, max(0.0, center - half))
    high = 1.0 if successes == trials else max(p, min(1.0, center + half))
    return low, high


CSV_FIELDS = (
    "scenario", "dims", "trials", "successes", "discarded", "estimate",
    "ci_low", "ci_high", "exact", "z", "seed", "mode", "level",
)


@dataclass
class ExperimentReport:
    scenario: Scenario
    successes: int
    trials_used: int
    discarded_degenerate: int
    estimate: float
    ci_low: float
    ci_high: float
    exact_reference: ExactProbability
    z_score: Optional[float]
    master_seed: int
    mode: str = "float"
    level: float = 0.999
    extra: dict = field(default_factory=dict)

    @property
    def covers_exact(self) -> bool:
        return self.ci_low <= self.exact_reference <= self.ci_high

    def to_dict(self):
        d = {
            "scenario": self.scenario.kind.value,
            "dims": self.scenario.dims,
            "trials": self.trials_used,
            "successes": self.successes,
            "discarded": self.discarded_degenerate,
            "estimate": self.estimate,
            "ci": [self.ci_low, self.ci_high],
            "exact": str(self.exact_reference),
            "z": self.z_score,
            "seed": self.master_seed,
            "mode": self.mode,
            "level": self.level,
        }
        d.update(self.extra)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def csv_row(self) -> str:
        d = self.to_dict()
        dims = ";".join(f"{k}={v}" for k, v in self.scenario.dims.items())
        values = [
            d["scenario"], dims, d["trials"], d["successes"], d["discarded"],
            repr(d["estimate"]), repr(self.ci_low), repr(self.ci_high), d["exact"],
            "" if d["z"] is None else repr(d["z"]), d["seed"], d["mode"], d["level"],
        ]
        return ",".join(str(v) for v in values)


def z_score(estimate: float, exact, trials: int) -> Optional[float]:
    p = float(exact)
    se = math.sqrt(p * (1 - p) / trials)
    if se == 0:
        return 0.0 if estimate == p else None
    return (estimate - p) / se


def estimate(config: ExperimentConfig, workers: int = 1) -> ExperimentReport:
    parts = _map_blocks(_run_block, config, config.trials, workers)
    hits = sum(h for h, _ in parts)
    discards = sum(d for _, d in parts)
    n = config.trials
    est = hits / n
    low, high = wilson_interval(hits, n, config.confidence_level)
    ref = scenario_probability(config.scenario)
    extra = {}
    if config.scenario.kind is Kind.INHOMOGENEOUS_POSITIVE:
        extra["b"] = "random" if config.random_b else "e1"
    return ExperimentReport(
        scenario=config.scenario,
        successes=hits,
        trials_used=n,
        discarded_degenerate=discards,
        estimate=est,
        ci_low=low,
        ci_high=high,
        exact_reference=ref,
        z_score=z_score(est, ref, n),
        master_seed=config.master_seed,
        mode=str(config.mode),
        level=config.confidence_level,
        extra=extra,
    )


def estimate_with_retry(config: ExperimentConfig, workers: int = 1):
    """Run once; if the interval misses the exact value, rerun once with the
    next seed. Returns the list of reports produced (one or two)."""
    first = estimate(config, workers)
    if first.covers_exact:
        return [first]
    again = ExperimentConfig(**{**config.__dict__, "master_seed": config.master_seed + 1})
    return [first, estimate(again, workers)]


@dataclass
class LeastMResult:
    n: int
    counts: list
    expected: list
    chi2: float
    p_value: float
    discarded: int
    seed: int

    def to_dict(self):
        return {
            "n": self.n,
            "counts": self.counts,
            "expected": [str(p) for p in self.expected],
            "chi2": self.chi2,
            "p_value": self.p_value,
            "discarded": self.discarded,
            "seed": self.seed,
        }


def least_m(vectors, mode=FLOAT):
    """Least m such that span(v_1..v_m) contains a positive vector, or
    DEGENERATE if some step could not be decided."""
    for m in range(1, len(vectors) + 1):
        verdict = geometry.subspace_contains_positive(vectors[:m], strict=False, mode=mode)
        if verdict is DEGENERATE:
            return DEGENERATE
        if verdict:
            return m
    raise AssertionError("the whole space always contains a positive vector")


def _least_m_block(args, start, stop):
    n, seed, mode = args
    counts = [0] * n
    discards = 0
    for k in range(start, stop):
        for attempt in range(MAX_ATTEMPTS):
            vectors = trial_rng(seed, k, attempt).standard_normal((n, n)).tolist()
            m = least_m(vectors, mode)
            if m is not DEGENERATE:
                counts[m - 1] += 1
                break
            discards += 1
        else:
            raise RuntimeError(f"trial {k}: {MAX_ATTEMPTS} degenerate draws in a row")
    return counts, discards


def least_m_histogram(n: int, trials: int, master_seed: int = 0, mode=FLOAT, workers: int = 1):
    """Histogram of the least m over ``trials`` random bases of R^n, with a
    chi-square goodness-of-fit test against :func:`step_distribution`."""
    from scipy.stats import chisquare

    if not 2 <= n <= 10:
        raise ValueError("least_m_histogram needs 2 <= n <= 10")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    parts = _map_blocks(_least_m_block, (n, master_seed, mode), trials, workers)
    counts = [sum(c[i] for c, _ in parts) for i in range(n)]
    discards = sum(d for _, d in parts)
    probs = step_distribution(n)
    expected = np.array([float(p) * trials for p in probs])
    stat, pval = chisquare(counts, expected)
    return LeastMResult(n, counts, probs, float(stat), float(pval), discards, master_seed)
