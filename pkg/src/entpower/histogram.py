"""Fixed-bin histograms with strict range handling and exact merging."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .errors import BinOverflow, EmptyReference


@dataclass
class Histogram:
    """Counts over `n_bins` uniform bins spanning [lo, hi].

    Samples outside the range by more than `slack` raise BinOverflow
    rather than being dropped; samples within the slack are folded into
    the boundary bins. `meta` records provenance (seed, experiment id,
    parameters).
    """

    lo: float
    hi: float
    n_bins: int
    counts: np.ndarray
    total: int = 0
    meta: dict = field(default_factory=dict)
    slack: float = tol.DELTA_E_RANGE_TOL

    @classmethod
    def empty(cls, lo: float, hi: float, n_bins: int, meta: dict | None = None,
              slack: float = tol.DELTA_E_RANGE_TOL) -> "Histogram":
        return cls(lo=float(lo), hi=float(hi), n_bins=int(n_bins),
                   counts=np.zeros(int(n_bins), dtype=np.int64),
                   total=0, meta=dict(meta or {}), slack=slack)

    @property
    def bin_width(self) -> float:
        return (self.hi - self.lo) / self.n_bins

    @property
    def bin_edges(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n_bins + 1)

    @property
    def bin_centers(self) -> np.ndarray:
        return self.bin_edges[:-1] + 0.5 * self.bin_width

    def add(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            return
        below = values.min() - self.lo
        above = self.hi - values.max()
        if below < -self.slack or above < -self.slack:
            raise BinOverflow(
                f"sample outside [{self.lo}, {self.hi}] beyond slack {self.slack}: "
                f"range [{values.min()!r}, {values.max()!r}]")
        idx = np.clip(((values - self.lo) / self.bin_width).astype(np.int64),
                      0, self.n_bins - 1)
        self.counts += np.bincount(idx, minlength=self.n_bins)
        self.total += values.size

    def densities(self) -> np.ndarray:
        if self.total == 0:
            return np.zeros(self.n_bins)
        return self.counts / (self.total * self.bin_width)

    def density_integral(self) -> float:
        return float(self.densities().sum() * self.bin_width)

    def merge(self, other: "Histogram") -> "Histogram":
        """Count-wise sum; bins and bounds must match exactly."""
        if (self.lo, self.hi, self.n_bins) != (other.lo, other.hi, other.n_bins):
            raise ValueError("cannot merge histograms with different binning")
        return Histogram(lo=self.lo, hi=self.hi, n_bins=self.n_bins,
                         counts=self.counts + other.counts,
                         total=self.total + other.total,
                         meta=dict(self.meta), slack=self.slack)

    def bin_of(self, x: float) -> int:
        return int(np.clip(int((x - self.lo) / self.bin_width), 0, self.n_bins - 1))


def width_half_height(h: Histogram, reference: float = 0.0) -> float:
    """Spread of a distribution at half the height of its reference bin.

    The reference height is the density of the bin containing
    `reference` (not the global mode). Scanning outward from that bin,
    the qualifying region is the contiguous run of bins whose density
    stays at or above half the reference; the width is the larger
    absolute bin-center offset of the two run ends, plus one bin width,
    so a single-bin spike reports exactly one bin width.
    """
    d = h.densities()
    ref_bin = h.bin_of(reference)
    if h.counts[ref_bin] == 0:
        raise EmptyReference(f"reference bin at {reference} holds no samples")
    half = d[ref_bin] / 2.0
    r = ref_bin
    while r + 1 < h.n_bins and d[r + 1] >= half:
        r += 1
    l = ref_bin
    while l - 1 >= 0 and d[l - 1] >= half:
        l -= 1
    centers = h.bin_centers
    return float(max(centers[r] - reference, reference - centers[l]) + h.bin_width)


def max_abs_density_diff(h1: Histogram, h2: Histogram) -> float:
    """Sup-norm difference between two density estimates on identical bins."""
    return float(np.max(np.abs(h1.densities() - h2.densities())))


def combined_sigma_max(h1: Histogram, h2: Histogram) -> float:
    """Largest per-bin combined Monte Carlo standard error of the density
    difference, using Poisson errors sqrt(k) / (n * bin_width)."""
    s1 = np.sqrt(h1.counts) / (h1.total * h1.bin_width)
    s2 = np.sqrt(h2.counts) / (h2.total * h2.bin_width)
    return float(np.max(np.sqrt(s1 ** 2 + s2 ** 2)))


def histograms_consistent(h1: Histogram, h2: Histogram, n_sigma: float = 3.0) -> bool:
    """Two-sample agreement check: the sup-density difference must stay
    below `n_sigma` times the largest combined per-bin standard error."""
    return max_abs_density_diff(h1, h2) <= n_sigma * combined_sigma_max(h1, h2)
