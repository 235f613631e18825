"""
Histogram: binned empirical density with a theoretical overlay column.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from services.exceptions import DomainError

OverlayFunction = Callable[[np.ndarray], np.ndarray]


@dataclass
class Histogram:
    """
    Empirical density of n samples. `overlay` is the theoretical curve sampled
    at the bin midpoints; `extra_overlays` holds further curves (NaN where undefined).
    `sample_mean` is the mean of the raw samples, unknown for histograms read back from CSV.
    """
    bin_edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    overlay: np.ndarray
    extra_overlays: dict[str, np.ndarray] = field(default_factory=dict)
    sample_mean: Optional[float] = None

    def __post_init__(self) -> None:
        self.bin_edges = np.asarray(self.bin_edges, dtype=float)
        self.counts = np.asarray(self.counts, dtype=np.int64)
        self.density = np.asarray(self.density, dtype=float)
        self.overlay = np.asarray(self.overlay, dtype=float)
        if self.bin_edges.ndim != 1 or len(self.bin_edges) < 2:
            raise DomainError("Histogram needs at least two bin edges", "bins")
        if not np.all(np.diff(self.bin_edges) > 0):
            raise DomainError("Histogram bin edges must be strictly increasing", "bins")
        size: int = len(self.bin_edges) - 1
        if not len(self.counts) == len(self.density) == len(self.overlay) == size:
            raise DomainError("Histogram columns do not match the number of bins", "bins")

    @classmethod
    def from_samples(cls, samples: np.ndarray, bin_edges: np.ndarray,
                     overlay: OverlayFunction) -> "Histogram":
        """
        Bin samples and attach the overlay curve evaluated at the midpoints.

        Args:
            samples (np.ndarray): Sample values, all inside the edge range.
            bin_edges (np.ndarray): Strictly increasing edges.
            overlay (OverlayFunction): Vectorised theoretical density.

        Returns:
            Histogram: The binned data.
        """
        edges: np.ndarray = np.asarray(bin_edges, dtype=float)
        counts, _ = np.histogram(samples, bins=edges)
        n: int = int(counts.sum())
        if n != len(samples):
            raise DomainError(f"{len(samples) - n} samples fall outside the histogram range", "samples")
        widths: np.ndarray = np.diff(edges)
        density: np.ndarray = counts / (n * widths) if n else np.zeros(len(widths))
        midpoints: np.ndarray = 0.5 * (edges[:-1] + edges[1:])
        mean: Optional[float] = float(np.mean(samples)) if n else None
        return cls(edges, counts, density, overlay(midpoints), sample_mean=mean)

    @property
    def n(self) -> int:
        """Total number of samples."""
        return int(self.counts.sum())

    @property
    def widths(self) -> np.ndarray:
        """Bin widths."""
        return np.diff(self.bin_edges)

    @property
    def midpoints(self) -> np.ndarray:
        """Bin midpoints."""
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    def density_std_err(self) -> np.ndarray:
        """Binomial standard error of each density value."""
        n: int = self.n
        p: np.ndarray = self.counts / n
        return np.sqrt(p * (1.0 - p) / n) / self.widths

    def get_all_data(self) -> dict[str, Any]:
        """Get all columns as a dictionary of lists"""
        return {
            "bin_edges": self.bin_edges.tolist(),
            "counts": self.counts.tolist(),
            "density": self.density.tolist(),
            "overlay": self.overlay.tolist(),
            "extra_overlays": {k: v.tolist() for k, v in self.extra_overlays.items()},
            "sample_mean": self.sample_mean,
        }
