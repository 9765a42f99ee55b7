"""Dense statevector simulator for QAOA on Max-Cut.

Basis index convention: amplitude index z encodes the string with bit i of z
equal to the label of vertex i.  The cost layer phases basis state |z> by
exp(i*gamma*cut(z)), which is exp(-i*gamma*c(z)) for the diagonal cost
eigenvalue c(z) = -cut(z); the mixer applies exp(-i*beta*X) to every qubit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ResourceLimitError
from .graph import Graph

DEFAULT_QUBIT_CAP = 24

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QaoaParams:
    """Depth-p angle schedule; gammas wrap mod 2*pi, betas mod pi."""

    gammas: np.ndarray
    betas: np.ndarray

    def __post_init__(self):
        g = np.atleast_1d(np.array(self.gammas, dtype=np.float64)) % TWO_PI
        b = np.atleast_1d(np.array(self.betas, dtype=np.float64)) % math.pi
        if g.shape != b.shape or g.ndim != 1 or g.size < 1:
            raise ValueError(
                f"gammas and betas must be equal-length vectors, "
                f"got {g.shape} and {b.shape}"
            )
        g.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "betas", b)

    @property
    def p(self) -> int:
        return self.gammas.size


def init_plus(n: int, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Uniform superposition |+>^n as a 2^n statevector."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    if n > cap:
        raise ResourceLimitError(f"n={n} qubits exceeds simulator cap {cap}")
    dim = 1 << n
    return np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128)


def _n_qubits(sv: np.ndarray) -> int:
    n = int(sv.size).bit_length() - 1
    if sv.ndim != 1 or sv.size != (1 << n):
        raise ValueError(f"statevector length {sv.size} is not a power of two")
    return n


@lru_cache(maxsize=16)
def cut_table(g: Graph) -> np.ndarray:
    """cut(z) for every basis index z, computed once per graph."""
    z = np.arange(1 << g.n, dtype=np.uint32)
    cuts = np.zeros(z.shape, dtype=np.int16)
    for k, l in g.edges:
        cuts += (((z >> k) ^ (z >> l)) & 1).astype(np.int16)
    cuts.setflags(write=False)
    return cuts


def apply_cost_phase(sv: np.ndarray, g: Graph, gamma: float) -> np.ndarray:
    """Diagonal cost layer: multiply amplitude of |z> by exp(i*gamma*cut(z))."""
    if sv.size != (1 << g.n):
        raise ValueError(f"statevector length {sv.size} does not match n={g.n}")
    return sv * np.exp(1j * gamma * cut_table(g))


def apply_mixer(sv: np.ndarray, beta: float) -> np.ndarray:
    """Product of single-qubit rotations exp(-i*beta*X) on every qubit."""
    n = _n_qubits(sv)
    c = math.cos(beta)
    ms = -1j * math.sin(beta)
    out = np.array(sv, dtype=np.complex128)
    for k in range(n):
        v = out.reshape(-1, 2, 1 << k)  # middle axis selects bit k
        a0 = v[:, 0, :].copy()
        a1 = v[:, 1, :]
        v[:, 0, :] = c * a0 + ms * a1
        v[:, 1, :] = c * a1 + ms * a0
    return out


def run_qaoa(g: Graph, params: QaoaParams, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Depth-p circuit on |+>^n: cost layer then mixer layer, p times."""
    sv = init_plus(g.n, cap=cap)
    for gamma, beta in zip(params.gammas, params.betas):
        sv = apply_cost_phase(sv, g, gamma)
        sv = apply_mixer(sv, beta)
    return sv


def expectation_cut(sv: np.ndarray, g: Graph) -> float:
    """Exact expected cut of the measurement distribution |amp|^2."""
    if sv.size != (1 << g.n):
        raise ValueError(f"statevector length {sv.size} does not match n={g.n}")
    probs = (sv.conj() * sv).real
    return float(probs @ cut_table(g))


def sample_measurements(
    sv: np.ndarray, shots: int, rng: np.random.Generator
) -> np.ndarray:
    """Measure the statevector ``shots`` times; returns bit arrays (shots, n)."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    n = _n_qubits(sv)
    cdf = np.cumsum((sv.conj() * sv).real)
    idx = np.searchsorted(cdf, rng.random(shots), side="right")
    idx = np.minimum(idx, sv.size - 1)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)


@dataclass(frozen=True)
class GridSearchResult:
    gamma: float
    beta: float
    expectation: float


def grid_search_p1(
    g: Graph, resolution: int = 100, cap: int = DEFAULT_QUBIT_CAP
) -> GridSearchResult:
    """Best exact expected cut of the depth-1 circuit over a uniform grid.

    The grid covers gamma in [0, 2*pi) and beta in [0, pi), ``resolution``
    points per axis, endpoints excluded.
    """
    if resolution < 1:
        raise ValueError(f"resolution must be >= 1, got {resolution}")
    base = init_plus(g.n, cap=cap)
    table = cut_table(g)
    best = GridSearchResult(0.0, 0.0, -math.inf)
    for gamma in np.linspace(0.0, TWO_PI, resolution, endpoint=False):
        phased = base * np.exp(1j * gamma * table)
        for beta in np.linspace(0.0, math.pi, resolution, endpoint=False):
            value = expectation_cut(apply_mixer(phased, beta), g)
            if value > best.expectation:
                best = GridSearchResult(float(gamma), float(beta), value)
    return best
