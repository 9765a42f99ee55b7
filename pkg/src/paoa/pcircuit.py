"""Probabilistic-bit circuits built from two-bit stochastic gates.

A gate is a 4x4 column-stochastic matrix acting on the ordered bit pair
(z_k, z_l) of an edge (k, l) with k < l, in the basis (00, 01, 10, 11),
i.e. pair state index 2*z_k + z_l.  A circuit applies one gate per edge,
in canonical edge order, to a uniformly random initial string; the three
ansatz variants differ only in how gate entries are parameterized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .graph import Graph, cut_values
from .stats import SampleStats, stats_from_sample

COLUMN_TOL = 1e-12


@dataclass(frozen=True)
class StochasticGate4:
    """4x4 column-stochastic transition matrix on one edge's bit pair."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.float64)
        if m.shape != (4, 4):
            raise ValueError(f"gate must be 4x4, got {m.shape}")
        if (m < 0).any() or (m > 1).any():
            raise ValueError("gate entries must lie in [0, 1]")
        colsums = m.sum(axis=0)
        if np.abs(colsums - 1.0).max() > COLUMN_TOL:
            raise ValueError(f"columns must sum to 1, got {colsums}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @cached_property
    def cdf(self) -> np.ndarray:
        """Column-wise cumulative probabilities, for inverse-CDF sampling."""
        c = np.cumsum(self.matrix, axis=0)
        c.setflags(write=False)
        return c


def _check_prob(value: float, name: str) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must be in [0, 1], got {value}")
    return value


def _pair_gate(row_01: np.ndarray) -> StochasticGate4:
    # Outputs 00 and 11 are forbidden: rows 1 and 4 are identically zero,
    # so every column splits its mass between 01 and 10.
    m = np.zeros((4, 4))
    m[1] = row_01
    m[2] = 1.0 - row_01
    return StochasticGate4(m)


def full_gate(p1: float, p2: float, p3: float, p4: float) -> StochasticGate4:
    """Four independent probabilities, one per input pair state."""
    row = np.array([_check_prob(p, f"p{i+1}") for i, p in enumerate((p1, p2, p3, p4))])
    return _pair_gate(row)


def reduced_gate(p: float) -> StochasticGate4:
    """Single probability shared by all four input states."""
    return _pair_gate(np.full(4, _check_prob(p, "p")))


def min_gate(p: float, q: float) -> StochasticGate4:
    """Two probabilities: p drives 00/11 inputs, q drives 01/10 inputs."""
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")
    return _pair_gate(np.array([p, q, 1.0 - q, 1.0 - p]))


def bit_flip_channel(q: float) -> np.ndarray:
    """2x2 single-bit channel: identity with probability 1-q, NOT with q."""
    q = _check_prob(q, "q")
    return np.array([[1.0 - q, q], [q, 1.0 - q]])


def pbit_state(p: float) -> np.ndarray:
    """Distribution vector (1-p, p) of a single probabilistic bit."""
    p = _check_prob(p, "p")
    return np.array([1.0 - p, p])


def compose(g1: StochasticGate4, g2: StochasticGate4) -> StochasticGate4:
    """Gate equal to applying g2 first, then g1 (matrix product g1 @ g2).

    Entries are correctly rounded sums of exact products, so algebraic
    identities of the ansatz families (e.g. that stacking two
    shared-probability gates collapses to the later one) hold machine-exactly
    instead of depending on the platform's matmul kernel.
    """
    a, b = g1.matrix, g2.matrix
    out = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            acc = Fraction(0)
            for k in range(4):
                acc += Fraction(a[i, k]) * Fraction(b[k, j])
            out[i, j] = float(acc)
    return StochasticGate4(out)


# ---------------------------------------------------------------------------
# Ansatz parameterizations
# ---------------------------------------------------------------------------


def _check_unit_array(values: np.ndarray, name: str) -> np.ndarray:
    values = np.array(values, dtype=np.float64)
    if values.size and ((values < 0).any() or (values > 1).any()):
        raise ValueError(f"{name} entries must lie in [0, 1]")
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class FullParams:
    """One (p1, p2, p3, p4) per edge; shape (|E|, 4)."""

    per_edge: np.ndarray

    def __post_init__(self):
        v = _check_unit_array(self.per_edge, "per_edge")
        if v.ndim != 2 or v.shape[1] != 4:
            raise ValueError(f"expected shape (E, 4), got {v.shape}")
        object.__setattr__(self, "per_edge", v)

    def gate_cdfs(self, g: Graph) -> np.ndarray:
        if self.per_edge.shape[0] != g.num_edges:
            raise ValueError(
                f"params cover {self.per_edge.shape[0]} edges, graph has {g.num_edges}"
            )
        if g.num_edges == 0:
            return np.zeros((1, 0, 4, 4))
        cdfs = np.stack([full_gate(*row).cdf for row in self.per_edge])
        return cdfs[np.newaxis]  # single layer


@dataclass(frozen=True)
class ReducedParams:
    """One shared probability per edge; shape (|E|,)."""

    per_edge: np.ndarray

    def __post_init__(self):
        v = _check_unit_array(self.per_edge, "per_edge")
        if v.ndim != 1:
            raise ValueError(f"expected a flat vector, got shape {v.shape}")
        object.__setattr__(self, "per_edge", v)

    def gate_cdfs(self, g: Graph) -> np.ndarray:
        if self.per_edge.shape[0] != g.num_edges:
            raise ValueError(
                f"params cover {self.per_edge.shape[0]} edges, graph has {g.num_edges}"
            )
        if g.num_edges == 0:
            return np.zeros((1, 0, 4, 4))
        cdfs = np.stack([reduced_gate(p).cdf for p in self.per_edge])
        return cdfs[np.newaxis]


@dataclass(frozen=True)
class MinParams:
    """One (p, q) pair per layer, shared by every edge; shape (L, 2)."""

    layers: np.ndarray

    def __post_init__(self):
        v = _check_unit_array(self.layers, "layers")
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 1:
            raise ValueError(f"expected shape (L, 2) with L >= 1, got {v.shape}")
        object.__setattr__(self, "layers", v)

    def gate_cdfs(self, g: Graph) -> np.ndarray:
        per_layer = [min_gate(p, q).cdf for p, q in self.layers]
        return np.stack([np.broadcast_to(c, (g.num_edges, 4, 4)) for c in per_layer])


AnsatzParams = FullParams | ReducedParams | MinParams


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def apply_gate(pair_state: int, gate: StochasticGate4, rng: np.random.Generator) -> int:
    """Sample the gate's output for one input pair state.

    Consumes exactly one uniform draw; inverse CDF walks the output states
    in order 00, 01, 10, 11.
    """
    if pair_state not in (0, 1, 2, 3):
        raise ValueError(f"pair state must be in 0..3, got {pair_state}")
    u = rng.random()
    return int(np.count_nonzero(gate.cdf[:3, pair_state] <= u))


def sample_shots(
    g: Graph, params: AnsatzParams, shots: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``shots`` output strings of the circuit, shape (shots, n).

    Each shot starts from a uniformly random string; every gate application
    consumes one uniform per shot.  Shots are advanced together edge by edge
    (same per-shot distribution as running them one at a time).
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    cdfs = params.gate_cdfs(g)
    state = rng.integers(0, 2, size=(shots, g.n), dtype=np.uint8)
    for layer in cdfs:
        for e, (k, l) in enumerate(g.edges):
            idx = (state[:, k] << 1) | state[:, l]
            u = rng.random(shots)
            out = (layer[e][:3, idx] <= u).sum(axis=0).astype(np.uint8)
            state[:, k] = out >> 1
            state[:, l] = out & 1
    return state


def sample_circuit(g: Graph, params: AnsatzParams, rng: np.random.Generator) -> np.ndarray:
    """Draw a single output string of the circuit."""
    return sample_shots(g, params, 1, rng)[0]


def estimate(
    g: Graph, params: AnsatzParams, shots: int, rng: np.random.Generator
) -> SampleStats:
    """Sample the circuit ``shots`` times and summarize the cut distribution."""
    states = sample_shots(g, params, shots, rng)
    return stats_from_sample(cut_values(g, states), states)
