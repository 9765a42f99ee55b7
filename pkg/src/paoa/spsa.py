"""Simultaneous perturbation stochastic approximation, maximizing form.

Standard two-evaluation SPSA with Spall's canonical decay exponents and a
box constraint handled by clipping: perturbation points are clipped before
each objective call and every recorded iterate lies inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class NonFiniteObjectiveError(RuntimeError):
    """Objective returned NaN or infinity; carries the offending parameters."""

    def __init__(self, value: float, params: np.ndarray):
        super().__init__(f"objective returned non-finite value {value} at {params}")
        self.value = value
        self.params = np.array(params)


@dataclass(frozen=True)
class SpsaConfig:
    """Gain schedule and box for one optimization run.

    At iteration k (0-based) the step size is a/(k+1+A)^alpha and the
    perturbation size is c/(k+1)^gamma_exp, with A = ``stability``
    (default: 10% of the iteration count).
    """

    lo: np.ndarray
    hi: np.ndarray
    iterations: int = 100
    a: float = 0.2
    c: float = 0.1
    alpha: float = 0.602
    gamma_exp: float = 0.101
    stability: float | None = None

    def __post_init__(self):
        lo = np.atleast_1d(np.array(self.lo, dtype=np.float64))
        hi = np.atleast_1d(np.array(self.hi, dtype=np.float64))
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError(f"box bounds must be matching vectors, got {lo.shape}, {hi.shape}")
        if not (lo < hi).all():
            raise ValueError("each box must satisfy lo < hi")
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if self.a <= 0 or self.c <= 0:
            raise ValueError("gains a and c must be positive")
        if not (self.alpha > self.gamma_exp > 0):
            raise ValueError("need alpha > gamma_exp > 0")
        if self.stability is not None and self.stability <= 0:
            raise ValueError("stability must be positive")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def A(self) -> float:
        return self.stability if self.stability is not None else 0.1 * self.iterations

    @property
    def dim(self) -> int:
        return self.lo.size


def project(x: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Coordinatewise clamp into [lo, hi]."""
    return np.clip(np.asarray(x, dtype=np.float64), lo, hi)


@dataclass
class OptTrace:
    """Clipped iterates with their (noisy) objective values, plus the best."""

    params: list[np.ndarray] = field(default_factory=list)
    objectives: list[float] = field(default_factory=list)
    best_so_far: list[float] = field(default_factory=list)
    best_params: np.ndarray | None = None
    best_objective: float = -np.inf

    def record(self, x: np.ndarray, fx: float) -> None:
        self.params.append(x)
        self.objectives.append(fx)
        if fx > self.best_objective:
            self.best_objective = fx
            self.best_params = x
        self.best_so_far.append(self.best_objective)


def maximize(objective, x0, cfg: SpsaConfig, rng: np.random.Generator) -> OptTrace:
    """Run SPSA ascent from x0; returns the trace of iterates.

    Per iteration: draw a +-1 perturbation direction, evaluate the objective
    at the two clipped probe points, step along the gradient estimate, clip,
    then re-evaluate at the new iterate (that value feeds the best-so-far
    tracking and the trace).
    """
    x = np.array(x0, dtype=np.float64)
    if x.shape != cfg.lo.shape:
        raise ValueError(f"x0 has shape {x.shape}, box has {cfg.lo.shape}")
    if (x < cfg.lo).any() or (x > cfg.hi).any():
        raise ValueError("x0 must lie inside the box")

    def evaluate(point: np.ndarray) -> float:
        value = float(objective(point))
        if not np.isfinite(value):
            raise NonFiniteObjectiveError(value, point)
        return value

    trace = OptTrace()
    trace.record(x, evaluate(x))
    for k in range(cfg.iterations):
        a_k = cfg.a / (k + 1 + cfg.A) ** cfg.alpha
        c_k = cfg.c / (k + 1) ** cfg.gamma_exp
        delta = rng.integers(0, 2, size=cfg.dim).astype(np.float64) * 2.0 - 1.0
        f_plus = evaluate(project(x + c_k * delta, cfg.lo, cfg.hi))
        f_minus = evaluate(project(x - c_k * delta, cfg.lo, cfg.hi))
        grad = (f_plus - f_minus) / (2.0 * c_k) * delta  # delta^{-1} == delta
        x = project(x + a_k * grad, cfg.lo, cfg.hi)
        trace.record(x, evaluate(x))
    return trace
