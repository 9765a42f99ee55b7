"""Per-run cut statistics shared by the samplers and the experiment protocol."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SampleStats:
    """Summary of one sample of cut values.

    ``ratio`` is mean/best with the best taken inside the same sample
    (degenerate all-zero samples get ratio 1).  ``sd`` is the population
    standard deviation, so a single shot reports 0.  ``best_string`` is the
    lexicographically smallest string attaining ``best``.
    """

    best: int
    mean: float
    sd: float
    ratio: float
    histogram: dict[int, int]
    best_string: np.ndarray = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "best_string", np.asarray(self.best_string, dtype=np.uint8))

    @property
    def shots(self) -> int:
        return sum(self.histogram.values())


def ratio_of(cuts) -> float:
    """mean/max of a non-empty cut sample; 1.0 when the max is zero."""
    cuts = np.asarray(cuts)
    if cuts.size == 0:
        raise ValueError("ratio of an empty sample is undefined")
    best = int(cuts.max())
    if best == 0:
        return 1.0
    return float(cuts.mean()) / best


def lex_min_rows(rows: np.ndarray) -> np.ndarray:
    """Lexicographically smallest row of a 2-D array (column 0 most significant)."""
    if rows.shape[0] == 1:
        return rows[0]
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


def stats_from_sample(cuts: np.ndarray, strings: np.ndarray) -> SampleStats:
    """Build SampleStats from per-shot cut values and the sampled strings."""
    cuts = np.asarray(cuts)
    if cuts.size == 0:
        raise ValueError("empty sample")
    best = int(cuts.max())
    mean = float(cuts.mean())
    counts = np.bincount(cuts)
    hist = {int(c): int(k) for c, k in enumerate(counts) if k > 0}
    return SampleStats(
        best=best,
        mean=mean,
        sd=float(cuts.std()),
        ratio=ratio_of(cuts),
        histogram=hist,
        best_string=lex_min_rows(strings[cuts == best]),
    )
