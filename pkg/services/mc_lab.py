"""
Seeded Monte Carlo experiments on random tetrahedra: well-centeredness,
acute faces, the event E, histograms of theta_abc and theta_min with their
theoretical overlays, chi-square fits and the CSV export of histograms and of g.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional
import csv
import logging
import math

import numpy as np
from scipy import stats

import logManager

from services import bounds, quad_engine
from services.exceptions import DomainError, HistogramIOError
from services.geom_core import (FACES, acute_mask, circumcap_radius_array, points_on_circle,
                                spherical_triangle_area_array, well_centered_mask)
from services.min_cap import theta_min_array
from services.sampling import (DEFAULT_BATCH_SIZE, STREAM_TETRA, STREAM_THETA_ABC, STREAM_TRIANGLE,
                               collect_samples, run_batches, sample_quads, sample_theta_min)
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.estimate_object import Estimate
from sphere_objects.histogram_object import Histogram
from sphere_objects.quadrature_object import DEFAULT_SPEC, QuadratureSpec
from sphere_objects.report_object import FitReport, TetraReport

logger: logging.Logger = logManager.logger.get_logger(__name__)

HALF_PI: float = 0.5 * math.pi
CSV_HEADER: tuple[str, ...] = ("bin_left", "bin_right", "count", "density", "overlay")
G_TABLE_HEADER: tuple[str, ...] = ("theta", "g", "G")
MIN_EXPECTED: float = 5.0
FACE_IDENTITY_TOLERANCE: float = 1e-9
SPHERE_DENSITY_MAX: float = 8.0 / (3.0 * math.pi) * (3.0 * math.sqrt(3.0) / 8.0)


@dataclass
class TetraCounts:
    """Per-batch tallies of the tetrahedron experiment; merged by addition."""
    well_centered: int = 0
    acute_base: int = 0
    event_e: int = 0
    n_hist: list[int] = field(default_factory=lambda: [0] * 5)
    n_total: int = 0
    n_total_sq: int = 0
    min_n: Optional[int] = None
    implication_violations: int = 0
    all_acute: int = 0
    face_identity_mismatches: int = 0

    def __add__(self, other: "TetraCounts") -> "TetraCounts":
        mins: list[int] = [m for m in (self.min_n, other.min_n) if m is not None]
        return TetraCounts(
            self.well_centered + other.well_centered,
            self.acute_base + other.acute_base,
            self.event_e + other.event_e,
            [a + b for a, b in zip(self.n_hist, other.n_hist)],
            self.n_total + other.n_total,
            self.n_total_sq + other.n_total_sq,
            min(mins) if mins else None,
            self.implication_violations + other.implication_violations,
            self.all_acute + other.all_acute,
            self.face_identity_mismatches + other.face_identity_mismatches,
        )


def _tetra_batch(rng: np.random.Generator, size: int) -> TetraCounts:
    points: np.ndarray = sample_quads(rng, size)
    centered: np.ndarray = well_centered_mask(points)
    acute: np.ndarray = np.stack([acute_mask(points[:, i], points[:, j], points[:, k])
                                  for i, j, k, _ in FACES], axis=1)
    n_acute: np.ndarray = acute.sum(axis=1)
    n_centered: np.ndarray = n_acute[centered]

    thetas: np.ndarray = theta_min_array(points)
    implication: np.ndarray = (thetas > HALF_PI) & ~(centered & acute.any(axis=1))

    all_acute: np.ndarray = centered & acute.all(axis=1)
    mismatches: int = 0
    if np.any(all_acute):
        chosen: np.ndarray = points[all_acute]
        face_radii: np.ndarray = np.stack([circumcap_radius_array(chosen[:, i], chosen[:, j], chosen[:, k], chosen[:, d])
                                           for i, j, k, d in FACES], axis=1)
        mismatches = int(np.count_nonzero(np.abs(np.nanmin(face_radii, axis=1) - thetas[all_acute])
                                          > FACE_IDENTITY_TOLERANCE))

    return TetraCounts(
        well_centered=int(np.count_nonzero(centered)),
        acute_base=int(np.count_nonzero(acute[:, 0])),
        event_e=int(np.count_nonzero(centered & acute[:, 0])),
        n_hist=np.bincount(n_centered, minlength=5).tolist(),
        n_total=int(n_centered.sum()),
        n_total_sq=int((n_centered ** 2).sum()),
        min_n=int(n_centered.min()) if len(n_centered) else None,
        implication_violations=int(np.count_nonzero(implication)),
        all_acute=int(np.count_nonzero(all_acute)),
        face_identity_mismatches=mismatches,
    )


def run_tetra_experiment(n: int, seed: int, threads: int = 1,
                         batch_size: int = DEFAULT_BATCH_SIZE) -> TetraReport:
    """
    Simulate n random tetrahedra ABCD.

    Args:
        n (int): Number of quads.
        seed (int): Experiment seed.
        threads (int): Worker threads; does not change the report.
        batch_size (int): Quads per random substream.

    Returns:
        TetraReport: P(well-centered), P(ABC acute), kappa_hat, the distribution
            of the number N of acute faces of well-centered quads and the
            identity checks.
    """
    logger.info(f"Tetra experiment: n={n}, seed={seed}, threads={threads}")
    counts: TetraCounts = sum(run_batches(n, seed, STREAM_TETRA, _tetra_batch, threads, batch_size), TetraCounts())
    e_n_hat: Optional[Estimate] = (Estimate.from_moments(counts.n_total, counts.n_total_sq, counts.well_centered)
                                   if counts.well_centered else None)
    if counts.implication_violations:
        logger.warning(f"{counts.implication_violations} quads with theta_min > pi/2 are not "
                       "well-centered with an acute face")
    if counts.face_identity_mismatches:
        logger.warning(f"{counts.face_identity_mismatches} all-acute quads where theta_min differs "
                       "from the smallest face circumcap")
    return TetraReport(
        n=n,
        seed=seed,
        p_wc=Estimate.from_count(counts.well_centered, n),
        p_acute=Estimate.from_count(counts.acute_base, n),
        kappa_hat=Estimate.from_count(counts.event_e, n),
        n_counts=dict(enumerate(counts.n_hist)),
        e_n_hat=e_n_hat,
        min_n=counts.min_n,
        implication_violations=counts.implication_violations,
        all_acute_quads=counts.all_acute,
        face_identity_mismatches=counts.face_identity_mismatches,
    )


def _theta_abc_batch(rng: np.random.Generator, size: int) -> np.ndarray:
    points: np.ndarray = sample_quads(rng, size)
    event: np.ndarray = well_centered_mask(points) & acute_mask(points[:, 0], points[:, 1], points[:, 2])
    chosen: np.ndarray = points[event]
    radii: np.ndarray = circumcap_radius_array(chosen[:, 0], chosen[:, 1], chosen[:, 2], chosen[:, 3])
    return radii[np.isfinite(radii)]


def sample_theta_abc(n: int, seed: int, threads: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> np.ndarray:
    """
    theta_abc for the first n quads satisfying E.

    Args:
        n (int): Number of accepted quads.
        seed (int): Experiment seed.
        threads (int): Worker threads.
        batch_size (int): Proposed quads per random substream.

    Returns:
        np.ndarray: n values in (pi/2, pi].
    """
    return collect_samples(n, seed, STREAM_THETA_ABC, _theta_abc_batch, threads, batch_size)


def _check_bins(bins: int) -> None:
    if bins < 2:
        raise DomainError(f"bins must be >= 2, got {bins!r}", "bins")


def hist_theta_abc(n: int, bins: int, seed: int, spec: QuadratureSpec = DEFAULT_SPEC,
                   threads: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> Histogram:
    """
    Histogram of theta_abc given E over [pi/2, pi] with the density g as overlay.

    Args:
        n (int): Number of quads satisfying E.
        bins (int): Number of uniform bins.
        seed (int): Experiment seed.
        spec (QuadratureSpec): Quadrature settings of the g table.
        threads (int): Worker threads.
        batch_size (int): Proposed quads per random substream.

    Returns:
        Histogram: Counts, density and g at the bin midpoints.
    """
    _check_bins(bins)
    samples: np.ndarray = sample_theta_abc(n, seed, threads, batch_size)
    table: quad_engine.ConditionalTable = quad_engine.conditional_table(spec)
    histogram: Histogram = Histogram.from_samples(samples, np.linspace(HALF_PI, math.pi, bins + 1), table.g)
    logger.info(f"theta_abc histogram: n={n}, bins={bins}, mean {samples.mean():.6f}")
    return histogram


def hist_theta_min(n: int, bins: int, seed: int, spec: QuadratureSpec = DEFAULT_SPEC,
                   threads: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> Histogram:
    """
    Histogram of theta_min of n random quads over [0, pi] with psi as overlay
    and psi_lcv (NaN outside [pi/2, theta0]) as an extra overlay.

    Args:
        n (int): Number of quads.
        bins (int): Number of uniform bins.
        seed (int): Experiment seed.
        spec (QuadratureSpec): Quadrature settings of the g table.
        threads (int): Worker threads.
        batch_size (int): Quads per random substream.

    Returns:
        Histogram: Counts, density and psi at the bin midpoints.
    """
    _check_bins(bins)
    samples: np.ndarray = sample_theta_min(n, seed, threads, batch_size)
    histogram: Histogram = Histogram.from_samples(samples, np.linspace(0.0, math.pi, bins + 1),
                                                  lambda x: bounds.psi_array(x, spec))
    histogram.extra_overlays["psi_lcv"] = bounds.psi_lcv_array(histogram.midpoints)
    logger.info(f"theta_min histogram: n={n}, bins={bins}, "
                f"fraction <= pi/2 {np.count_nonzero(samples <= HALF_PI) / n:.6f}")
    return histogram


def overlay_excess(histogram: Histogram, lower: float = HALF_PI, sigmas: float = 3.0) -> list[int]:
    """
    Bins above `lower` where the empirical density exceeds the overlay by more
    than `sigmas` standard errors.
    """
    excess: np.ndarray = histogram.density - histogram.overlay - sigmas * histogram.density_std_err()
    selected: np.ndarray = (histogram.bin_edges[:-1] >= lower - 1e-12) & (excess > 0.0)
    return np.flatnonzero(selected).tolist()


def chi_square_fit(histogram: Histogram, cdf: Callable[[float], float], lower: Optional[float] = None,
                   upper: Optional[float] = None) -> FitReport:
    """
    Pearson chi-square test of a histogram against a distribution function.

    Bins inside [lower, upper] with expected count >= 5 are kept; every other
    bin and the mass outside the histogram range are lumped into one rest
    category.

    Args:
        histogram (Histogram): The binned samples.
        cdf (Callable[[float], float]): Distribution function defined on [lower, upper].
        lower (Optional[float]): Left end of the fitted range (default: first edge).
        upper (Optional[float]): Right end of the fitted range (default: last edge).

    Returns:
        FitReport: Statistic, degrees of freedom and p-value.
    """
    edges: np.ndarray = histogram.bin_edges
    lower = float(edges[0]) if lower is None else lower
    upper = float(edges[-1]) if upper is None else upper
    n: int = histogram.n
    observed: list[float] = []
    expected: list[float] = []
    for left, right, count in zip(edges[:-1], edges[1:], histogram.counts):
        if left < lower - 1e-12 or right > upper + 1e-12:
            continue
        mass: float = n * (cdf(float(right)) - cdf(float(left)))
        if mass >= MIN_EXPECTED:
            observed.append(float(count))
            expected.append(mass)
    rest_observed: float = n - sum(observed)
    rest_expected: float = n - sum(expected)
    if rest_expected > 1e-9 * n:
        observed.append(rest_observed)
        expected.append(rest_expected)
    if len(observed) < 2:
        raise DomainError("Too few bins with expected count >= 5 for a chi-square test", "bins")
    obs: np.ndarray = np.array(observed)
    exp: np.ndarray = np.array(expected)
    statistic: float = float(np.sum((obs - exp) ** 2 / exp))
    dof: int = len(obs) - 1
    return FitReport(statistic, dof, float(stats.chi2.sf(statistic, dof)), len(obs))


def fit_theta_abc(histogram: Histogram, spec: QuadratureSpec = DEFAULT_SPEC) -> FitReport:
    """Chi-square fit of a theta_abc histogram against G."""
    return chi_square_fit(histogram, lambda t: quad_engine.G_cdf(min(math.pi, max(HALF_PI, t)), spec),
                          HALF_PI, math.pi)


def fit_theta_min_left(histogram: Histogram) -> FitReport:
    """Chi-square fit of a theta_min histogram on [0, pi/2] against the closed-form distribution."""
    return chi_square_fit(histogram, lambda t: bounds.theta_min_cdf_left(min(HALF_PI, max(0.0, t))), 0.0, HALF_PI)


def _triangle_batch(theta: float) -> Callable[[np.random.Generator, int], np.ndarray]:
    """Batch of area(spherical triangle) * 1{acute} / 4pi for angle pairs drawn from the sphere density."""

    def batch(rng: np.random.Generator, size: int) -> np.ndarray:
        proposal: np.ndarray = rng.random((size, 3))
        alpha: np.ndarray = math.pi * proposal[:, 0]
        beta: np.ndarray = math.pi * proposal[:, 1]
        density: np.ndarray = (8.0 / (3.0 * math.pi)) * np.sin(alpha) * np.sin(beta) * np.sin(alpha + beta)
        keep: np.ndarray = (alpha + beta < math.pi) & (proposal[:, 2] * SPHERE_DENSITY_MAX < density)
        alpha, beta = alpha[keep], beta[keep]
        gamma: np.ndarray = math.pi - alpha - beta
        acute: np.ndarray = (alpha < HALF_PI) & (beta < HALF_PI) & (gamma < HALF_PI)
        vertex_a: np.ndarray = points_on_circle(theta, np.zeros_like(alpha))
        vertex_b: np.ndarray = points_on_circle(theta, 2.0 * gamma)
        vertex_c: np.ndarray = points_on_circle(theta, 2.0 * gamma + 2.0 * alpha)
        area: np.ndarray = np.where(acute, spherical_triangle_area_array(vertex_a, vertex_b, vertex_c), 0.0)
        return area / (4.0 * math.pi)

    return batch


def mc_prob_E_given_theta(theta: float, n: int, seed: int, threads: int = 1,
                          batch_size: int = DEFAULT_BATCH_SIZE) -> Estimate:
    """
    Monte Carlo estimate of P{E | theta}: embed n random inscribed triangles on
    the circle of radius theta and average their Girard areas over acute ones.

    Args:
        theta (float): Circumcap radius in (pi/2, pi].
        n (int): Number of triangles.
        seed (int): Experiment seed.
        threads (int): Worker threads.
        batch_size (int): Proposals per random substream.

    Returns:
        Estimate: Mean of area * 1{acute} / 4pi.
    """
    if not HALF_PI < theta <= math.pi:
        raise DomainError(f"theta={theta!r} outside (pi/2, pi]", "theta")
    values: np.ndarray = collect_samples(n, seed, STREAM_TRIANGLE, _triangle_batch(theta), threads, batch_size)
    return Estimate.from_moments(float(values.sum()), float((values ** 2).sum()), n)


def duality_cdf_check(n: int, seed: int, omegas_deg: tuple[float, ...] = (90.0, 100.0, 120.0, 150.0),
                      threads: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> list[tuple[float, Estimate]]:
    """
    1 - empirical CDF of theta_min at pi - omega, which should equal p(omega).

    Returns:
        list[tuple[float, Estimate]]: (omega in radians, estimate of 1 - Phi(pi - omega)).
    """
    samples: np.ndarray = sample_theta_min(n, seed, threads, batch_size)
    results: list[tuple[float, Estimate]] = []
    for degrees in omegas_deg:
        omega: float = math.radians(degrees)
        results.append((omega, Estimate.from_count(int(np.count_nonzero(samples > math.pi - omega)), n)))
    return results


def _format_real(value: float) -> str:
    return format(float(value), ".17g")


def _write_rows(path: str | Path, header: tuple[str, ...], rows: Iterable[tuple[object, ...]]) -> None:
    """UTF-8, LF line endings, header row first."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise HistogramIOError(f"Cannot write CSV ({e.strerror})", str(path)) from e


def emit_csv(histogram: Histogram, path: str | Path) -> None:
    """
    Write a histogram as CSV: UTF-8, LF line endings, header
    `bin_left,bin_right,count,density,overlay`, reals with 17 significant digits.

    Args:
        histogram (Histogram): The histogram.
        path (str | Path): Output file.
    """
    _write_rows(path, CSV_HEADER, (
        (_format_real(left), _format_real(right), int(count), _format_real(density), _format_real(overlay))
        for left, right, count, density, overlay in zip(histogram.bin_edges[:-1], histogram.bin_edges[1:],
                                                        histogram.counts, histogram.density, histogram.overlay)))
    logger.info(f"Histogram with {len(histogram.counts)} bins written to {path}")


def emit_g_table(path: str | Path, points: int, spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """
    Write g and G on an even grid of `points` values of theta over [pi/2, pi].

    Args:
        path (str | Path): Output file, header `theta,g,G`.
        points (int): Grid size, at least 2.
        spec (QuadratureSpec): Quadrature settings.

    Returns:
        np.ndarray: The grid.
    """
    if points < 2:
        raise DomainError(f"grid needs at least 2 points, got {points}", "grid")
    thetas: np.ndarray = np.linspace(HALF_PI, math.pi, points)
    table: quad_engine.ConditionalTable = quad_engine.conditional_table(spec)
    g_values: np.ndarray = table.g(thetas)
    G_values: np.ndarray = quad_engine.G_cdf_grid(thetas, spec)
    _write_rows(path, G_TABLE_HEADER, (
        (_format_real(t), _format_real(g), _format_real(G)) for t, g, G in zip(thetas, g_values, G_values)))
    logger.info(f"g and G on {points} points written to {path}")
    return thetas


def read_csv(path: str | Path) -> Histogram:
    """
    Read a histogram written by `emit_csv`.

    Args:
        path (str | Path): Input file.

    Returns:
        Histogram: The histogram with its overlay column.
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            rows: list[list[str]] = list(csv.reader(handle))
    except OSError as e:
        raise HistogramIOError(f"Cannot read histogram CSV ({e.strerror})", str(path)) from e
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise HistogramIOError("Missing or unexpected histogram CSV header", str(path))
    try:
        body: list[list[str]] = rows[1:]
        edges: list[float] = [float(row[0]) for row in body] + ([float(body[-1][1])] if body else [])
        return Histogram(np.array(edges), np.array([int(row[2]) for row in body]),
                         np.array([float(row[3]) for row in body]), np.array([float(row[4]) for row in body]))
    except (ValueError, IndexError, DomainError) as e:
        raise HistogramIOError(f"Malformed histogram CSV ({e})", str(path)) from e
