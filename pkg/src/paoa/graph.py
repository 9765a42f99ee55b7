"""Graphs for Max-Cut: representation, generators, cut evaluation, brute force.

Vertices are labelled 0..n-1 and a partition is a bit string ``s`` with
``s[i]`` the label of vertex ``i``.  Edges are kept in canonical form
(``k < l``, lexicographically sorted) so that everything downstream that
iterates over edges does so in one fixed, reproducible order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GenerationError, ResourceLimitError

BRUTE_FORCE_MAX_N = 30


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus canonical edge list.

    Edges may be given in any order and orientation; the constructor
    normalizes each pair to (min, max) and sorts lexicographically.
    Self-loops and duplicate edges are rejected.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        canon = []
        for k, l in self.edges:
            if k == l:
                raise ValueError(f"self-loop ({k},{l}) not allowed")
            if k > l:
                k, l = l, k
            if not (0 <= k < l < self.n):
                raise ValueError(f"edge ({k},{l}) out of range for n={self.n}")
            canon.append((int(k), int(l)))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint index arrays (K, L), aligned with the canonical edge order."""
        if not self.edges:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty.copy()
        arr = np.asarray(self.edges, dtype=np.int64)
        return arr[:, 0], arr[:, 1]

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for k, l in self.edges:
            deg[k] += 1
            deg[l] += 1
        return deg


def parse_bits(text: str) -> np.ndarray:
    """Parse a string like '0101' into a bit array (s[i] = label of vertex i)."""
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"not a bit string: {text!r}")
    return np.array([int(c) for c in text], dtype=np.uint8)


def format_bits(bits: np.ndarray) -> str:
    return "".join(str(int(b)) for b in bits)


def cut_value(g: Graph, s: np.ndarray) -> int:
    """Number of edges of ``g`` whose endpoints carry different labels."""
    s = np.asarray(s)
    if s.shape != (g.n,):
        raise ValueError(f"bit string length {s.shape} does not match n={g.n}")
    k_idx, l_idx = g.edge_index
    return int(np.count_nonzero(s[k_idx] != s[l_idx]))


def cut_values(g: Graph, states: np.ndarray) -> np.ndarray:
    """Cut values for a batch of bit strings, shape (m, n) -> (m,)."""
    states = np.asarray(states)
    if states.ndim != 2 or states.shape[1] != g.n:
        raise ValueError(f"expected shape (m, {g.n}), got {states.shape}")
    k_idx, l_idx = g.edge_index
    if len(k_idx) == 0:
        return np.zeros(states.shape[0], dtype=np.int64)
    return (states[:, k_idx] != states[:, l_idx]).sum(axis=1)


@dataclass(frozen=True)
class BruteForceResult:
    """Exact Max-Cut data: optimum, a witness, and uniform-distribution moments."""

    best: int
    witness: np.ndarray
    mean: float
    sd: float
    histogram: np.ndarray  # histogram[c] = number of strings with cut c, all 2^n

    def __post_init__(self):
        object.__setattr__(self, "witness", np.asarray(self.witness, dtype=np.uint8))


def _bit_reverse(z: np.ndarray, n: int) -> np.ndarray:
    """Key whose numeric order equals lexicographic order of the bit tuples."""
    rev = np.zeros_like(z)
    for i in range(n):
        rev |= ((z >> np.uint64(i)) & np.uint64(1)) << np.uint64(n - 1 - i)
    return rev


def brute_force(g: Graph, max_n: int = BRUTE_FORCE_MAX_N) -> BruteForceResult:
    """Exhaustive Max-Cut over all 2^n labelings.

    Only strings with vertex 0 labelled 0 are enumerated; the complement of a
    labeling has the same cut, so this covers everything.  The mean is |E|/2
    analytically; the second moment is accumulated in exact integer
    arithmetic.  Ties on the optimum resolve to the lexicographically
    smallest witness.
    """
    if g.n > max_n:
        raise ResourceLimitError(f"brute force on n={g.n} exceeds guard {max_n}")
    m = g.num_edges
    k_idx, l_idx = g.edge_index
    half = 1 << (g.n - 1)
    best = -1
    best_rev = None
    best_z = 0
    sum_sq = 0
    hist = np.zeros(m + 1, dtype=np.int64)
    chunk = 1 << 18
    for lo in range(0, half, chunk):
        hi = min(lo + chunk, half)
        z = np.arange(lo, hi, dtype=np.uint64) << np.uint64(1)  # vertex 0 fixed to 0
        cuts = np.zeros(z.shape, dtype=np.int64)
        for k, l in zip(k_idx, l_idx):
            cuts += ((z >> np.uint64(k)) ^ (z >> np.uint64(l))).astype(np.int64) & 1
        hist += 2 * np.bincount(cuts, minlength=m + 1)
        sum_sq += int((cuts * cuts).sum())
        block_best = int(cuts.max())
        if block_best >= best:
            cand = z[cuts == block_best]
            rev = _bit_reverse(cand, g.n)
            j = int(np.argmin(rev))
            if block_best > best or rev[j] < best_rev:
                best, best_rev, best_z = block_best, rev[j], int(cand[j])
    mean = m / 2.0
    second = sum_sq / half
    sd = float(np.sqrt(max(second - mean * mean, 0.0)))
    witness = ((best_z >> np.arange(g.n)) & 1).astype(np.uint8)
    return BruteForceResult(best=best, witness=witness, mean=mean, sd=sd, histogram=hist)


# ---------------------------------------------------------------------------
# Generator families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    """Cycle graph on n >= 3 vertices (2-regular)."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"ring needs n >= 3, got {self.n}")

    def _build(self, rng: np.random.Generator) -> Graph:
        edges = [(i, i + 1) for i in range(self.n - 1)] + [(0, self.n - 1)]
        return Graph(self.n, tuple(edges))


@dataclass(frozen=True)
class Complete:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"complete graph needs n >= 1, got {self.n}")

    def _build(self, rng: np.random.Generator) -> Graph:
        edges = [(k, l) for k in range(self.n) for l in range(k + 1, self.n)]
        return Graph(self.n, tuple(edges))


@dataclass(frozen=True)
class RandomRegular:
    """k-regular graph via the configuration (stub pairing) model.

    A uniformly random perfect matching of the n*k stubs is drawn; any
    self-loop or multi-edge triggers a full restart.
    """

    n: int
    k: int

    def __post_init__(self):
        if self.k < 0 or self.k >= self.n:
            raise ValueError(f"need 0 <= k < n, got k={self.k}, n={self.n}")
        if (self.n * self.k) % 2 != 0:
            raise ValueError(f"n*k must be even, got n={self.n}, k={self.k}")

    def _build(self, rng: np.random.Generator, max_restarts: int = 10_000) -> Graph:
        if self.k == 0:
            return Graph(self.n, ())
        for _ in range(max_restarts):
            stubs = np.repeat(np.arange(self.n), self.k)
            rng.shuffle(stubs)
            pairs = {}
            ok = True
            for i in range(0, len(stubs), 2):
                a, b = int(stubs[i]), int(stubs[i + 1])
                if a == b:
                    ok = False
                    break
                e = (a, b) if a < b else (b, a)
                if e in pairs:
                    ok = False
                    break
                pairs[e] = True
            if ok:
                return Graph(self.n, tuple(pairs))
        raise GenerationError(
            f"no simple {self.k}-regular graph on {self.n} vertices "
            f"within {max_restarts} restarts"
        )


@dataclass(frozen=True)
class BarabasiAlbert:
    """Preferential-attachment graph.

    Starts from a path on ``seed_nodes`` vertices (a single vertex when
    seed_nodes=1, two connected vertices when seed_nodes=2).  Each later
    vertex attaches to ``m`` distinct existing vertices chosen with
    probability proportional to current degree; if every existing vertex
    still has degree zero, targets are chosen uniformly.
    """

    n: int
    m: int = 1
    seed_nodes: int = 2

    def __post_init__(self):
        if not (1 <= self.m <= self.seed_nodes <= self.n):
            raise ValueError(
                f"need 1 <= m <= seed_nodes <= n, got m={self.m}, "
                f"seed_nodes={self.seed_nodes}, n={self.n}"
            )

    def _build(self, rng: np.random.Generator) -> Graph:
        edges = [(i, i + 1) for i in range(self.seed_nodes - 1)]
        repeated = [v for e in edges for v in e]  # one entry per unit of degree
        for v in range(self.seed_nodes, self.n):
            targets: set[int] = set()
            if repeated:
                while len(targets) < self.m:
                    targets.add(repeated[int(rng.integers(len(repeated)))])
            else:
                targets.update(int(t) for t in rng.choice(v, size=self.m, replace=False))
            for t in sorted(targets):
                edges.append((t, v))
                repeated += [t, v]
        return Graph(self.n, tuple(edges))


@dataclass(frozen=True)
class ErdosRenyi:
    """Each of the C(n,2) potential edges is included independently."""

    n: int
    p_edge: float

    def __post_init__(self):
        if not (0.0 <= self.p_edge <= 1.0):
            raise ValueError(f"edge probability must be in [0,1], got {self.p_edge}")
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")

    def _build(self, rng: np.random.Generator) -> Graph:
        pairs = [(k, l) for k in range(self.n) for l in range(k + 1, self.n)]
        keep = rng.random(len(pairs)) < self.p_edge  # one draw per pair, lex order
        return Graph(self.n, tuple(e for e, kept in zip(pairs, keep) if kept))


GraphFamily = Ring | Complete | RandomRegular | BarabasiAlbert | ErdosRenyi


def generate(family: GraphFamily, seed, max_restarts: int = 10_000) -> Graph:
    """Sample a graph from ``family``; deterministic given (family, seed)."""
    rng = np.random.default_rng(seed)
    if isinstance(family, RandomRegular):
        return family._build(rng, max_restarts=max_restarts)
    return family._build(rng)


# ---------------------------------------------------------------------------
# Text format: first line "n m", then one "k l" line per edge, canonical order
# ---------------------------------------------------------------------------


def to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{k} {l}" for k, l in g.edges]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header line: {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise ValueError(f"header promises {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    g = Graph(n, tuple(edges))
    if list(g.edges) != edges:
        raise ValueError("edge list is not in canonical order (k < l, sorted)")
    return g


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_text(g))


def read_graph(path) -> Graph:
    with open(path) as fh:
        return from_text(fh.read())
