"""Experimental protocol: per-trial runs of each Max-Cut method, aggregation.

A trial of a trainable method draws initial parameters, trains them with
SPSA against the sample-mean cut of ``shots`` circuit executions, then
reports statistics of a fresh sample at the best parameters found.  Every
trial derives its own RNG stream from (master seed, method, trial index),
so results are reproducible and independent of which other methods run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pcircuit, qsim
from .errors import ResourceLimitError
from .graph import Graph, brute_force, cut_values
from .spsa import SpsaConfig, maximize
from .stats import SampleStats, lex_min_rows, ratio_of, stats_from_sample

__all__ = [
    "BruteForce",
    "Random",
    "PaoaFull",
    "PaoaReduced",
    "PaoaMin",
    "Qaoa",
    "Method",
    "RunConfig",
    "TrialResult",
    "AggregateRow",
    "ratio",
    "best_string",
    "run_trial",
    "run_trials",
    "trial_seed",
    "graph_seed",
    "aggregate",
]


@dataclass(frozen=True)
class BruteForce:
    label = "Brute force"
    token = "brute"
    stream_key = (0, 0)


@dataclass(frozen=True)
class Random:
    label = "Random"
    token = "random"
    stream_key = (1, 0)


@dataclass(frozen=True)
class PaoaFull:
    label = "PAOA"
    token = "full"
    stream_key = (2, 0)


@dataclass(frozen=True)
class PaoaReduced:
    label = "Reduced PAOA"
    token = "reduced"
    stream_key = (3, 0)


@dataclass(frozen=True)
class PaoaMin:
    layers: int = 1

    def __post_init__(self):
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")

    @property
    def label(self) -> str:
        return f"Min PAOA ({self.layers} layer{'s' if self.layers > 1 else ''})"

    @property
    def token(self) -> str:
        return f"min:{self.layers}"

    @property
    def stream_key(self) -> tuple[int, int]:
        return (4, self.layers)


@dataclass(frozen=True)
class Qaoa:
    depth: int = 1

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")

    @property
    def label(self) -> str:
        return f"QAOA ({self.depth} layer{'s' if self.depth > 1 else ''})"

    @property
    def token(self) -> str:
        return f"qaoa:{self.depth}"

    @property
    def stream_key(self) -> tuple[int, int]:
        return (5, self.depth)


Method = BruteForce | Random | PaoaFull | PaoaReduced | PaoaMin | Qaoa


@dataclass(frozen=True)
class RunConfig:
    iterations: int = 100
    shots: int = 100
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        for name in ("iterations", "shots", "trials"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class TrialResult:
    """Final-sample statistics plus the best string seen during the whole
    trial, training probes included."""

    stats: SampleStats
    best_seen: int
    best_seen_string: np.ndarray


@dataclass(frozen=True)
class AggregateRow:
    """Table row over trials: max of bests, means of the other metrics."""

    best: int
    average: float
    sd: float
    ratio: float


ratio = ratio_of


def best_string(g: Graph, strings) -> np.ndarray:
    """The string with the maximum cut among ``strings`` (lex-smallest on ties)."""
    arr = np.asarray(list(strings) if not isinstance(strings, np.ndarray) else strings)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.size == 0:
        raise ValueError("no strings given")
    cuts = cut_values(g, arr)
    return lex_min_rows(arr[cuts == cuts.max()])


def graph_seed(master_seed: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(master_seed, spawn_key=(0,))


def trial_seed(master_seed: int, method: Method, index: int) -> np.random.SeedSequence:
    kind, sub = method.stream_key
    return np.random.SeedSequence(master_seed, spawn_key=(1, kind, sub, index))


class _BestTracker:
    """Running (best cut, lex-smallest best string) over everything sampled."""

    def __init__(self):
        self.cut = -1
        self.string = None

    def update(self, best: int, string: np.ndarray) -> None:
        if best > self.cut or (
            best == self.cut and tuple(string) < tuple(self.string)
        ):
            self.cut = int(best)
            self.string = np.array(string, dtype=np.uint8)


def _paoa_space(method, g: Graph):
    """Flat SPSA vector dimension and vector->params constructor."""
    m = g.num_edges
    if isinstance(method, PaoaFull):
        return 4 * m, lambda v: pcircuit.FullParams(v.reshape(m, 4))
    if isinstance(method, PaoaReduced):
        return m, lambda v: pcircuit.ReducedParams(v)
    layers = method.layers
    return 2 * layers, lambda v: pcircuit.MinParams(v.reshape(layers, 2))


def _run_paoa_trial(method, g: Graph, cfg: RunConfig, rng) -> TrialResult:
    dim, make = _paoa_space(method, g)
    tracker = _BestTracker()

    def objective(vec: np.ndarray) -> float:
        s = pcircuit.estimate(g, make(vec), cfg.shots, rng)
        tracker.update(s.best, s.best_string)
        return s.mean

    spsa_cfg = SpsaConfig(lo=np.zeros(dim), hi=np.ones(dim), iterations=cfg.iterations)
    trace = maximize(objective, rng.random(dim), spsa_cfg, rng)
    final = pcircuit.estimate(g, make(trace.best_params), cfg.shots, rng)
    tracker.update(final.best, final.best_string)
    return TrialResult(final, tracker.cut, tracker.string)


def _run_qaoa_trial(method: Qaoa, g: Graph, cfg: RunConfig, rng) -> TrialResult:
    if g.n > qsim.DEFAULT_QUBIT_CAP:
        raise ResourceLimitError(
            f"QAOA simulation of n={g.n} exceeds cap {qsim.DEFAULT_QUBIT_CAP}"
        )
    p = method.depth
    lo = np.zeros(2 * p)
    hi = np.concatenate([np.full(p, qsim.TWO_PI), np.full(p, np.pi)])
    tracker = _BestTracker()

    def sample_stats(vec: np.ndarray) -> SampleStats:
        sv = qsim.run_qaoa(g, qsim.QaoaParams(vec[:p], vec[p:]))
        strings = qsim.sample_measurements(sv, cfg.shots, rng)
        s = stats_from_sample(cut_values(g, strings), strings)
        tracker.update(s.best, s.best_string)
        return s

    def objective(vec: np.ndarray) -> float:
        return sample_stats(vec).mean

    spsa_cfg = SpsaConfig(lo=lo, hi=hi, iterations=cfg.iterations)
    x0 = lo + rng.random(2 * p) * (hi - lo)
    trace = maximize(objective, x0, spsa_cfg, rng)
    final = sample_stats(trace.best_params)
    return TrialResult(final, tracker.cut, tracker.string)


def run_trial(method: Method, g: Graph, cfg: RunConfig, seed) -> TrialResult:
    """One trial of ``method`` on ``g``; ``seed`` feeds a fresh RNG stream."""
    rng = np.random.default_rng(seed)
    if isinstance(method, BruteForce):
        res = brute_force(g)
        hist = {c: int(k) for c, k in enumerate(res.histogram) if k}
        stats = SampleStats(
            best=res.best,
            mean=res.mean,
            sd=res.sd,
            ratio=res.mean / res.best if res.best > 0 else 1.0,
            histogram=hist,
            best_string=res.witness,
        )
        return TrialResult(stats, res.best, res.witness)
    if isinstance(method, Random):
        states = rng.integers(0, 2, size=(cfg.shots, g.n), dtype=np.uint8)
        stats = stats_from_sample(cut_values(g, states), states)
        return TrialResult(stats, stats.best, stats.best_string)
    if isinstance(method, (PaoaFull, PaoaReduced, PaoaMin)):
        return _run_paoa_trial(method, g, cfg, rng)
    if isinstance(method, Qaoa):
        return _run_qaoa_trial(method, g, cfg, rng)
    raise TypeError(f"unknown method {method!r}")


def run_trials(method: Method, g: Graph, cfg: RunConfig) -> list[TrialResult]:
    """cfg.trials independent trials, each on its own derived RNG stream."""
    return [
        run_trial(method, g, cfg, trial_seed(cfg.seed, method, i))
        for i in range(cfg.trials)
    ]


def aggregate(trials) -> AggregateRow:
    """Fold per-trial statistics into one table row."""
    stats = [t.stats if isinstance(t, TrialResult) else t for t in trials]
    if not stats:
        raise ValueError("nothing to aggregate")
    return AggregateRow(
        best=max(s.best for s in stats),
        average=float(np.mean([s.mean for s in stats])),
        sd=float(np.mean([s.sd for s in stats])),
        ratio=float(np.mean([s.ratio for s in stats])),
    )
