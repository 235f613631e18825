"""
Tests for the Monte Carlo experiments, histograms, fits and CSV export.
"""
import math

import numpy as np
import pytest

from services import coverage, mc_lab, quad_engine
from services.exceptions import DomainError, HistogramIOError
from services.sampling import DEFAULT_SEED
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.histogram_object import Histogram

HALF_PI: float = 0.5 * math.pi


def _toy_histogram() -> Histogram:
    return Histogram.from_samples(np.array([0.2, 0.6, 0.7, 0.8]), np.array([0.0, 0.5, 1.0]), np.ones_like)


def test_tetra_experiment():
    report = mc_lab.run_tetra_experiment(100_000, DEFAULT_SEED)
    assert report.p_wc.within(0.125, sigmas=4.0)
    assert report.p_acute.within(0.5, sigmas=4.0)
    assert report.kappa_hat.within(CONSTANTS.kappa_closed, sigmas=4.0)
    assert report.e_n_hat.within(CONSTANTS.e_n_closed, sigmas=4.0)
    assert report.well_centered == round(report.p_wc.value * report.n)
    assert set(report.n_counts) == {0, 1, 2, 3, 4}
    assert report.implication_violations == 0
    assert report.face_identity_mismatches == 0
    assert report.min_n is not None


def test_tetra_experiment_is_thread_invariant():
    single = mc_lab.run_tetra_experiment(6000, 21, threads=1, batch_size=1000)
    pooled = mc_lab.run_tetra_experiment(6000, 21, threads=4, batch_size=1000)
    assert single == pooled


@pytest.mark.slow
def test_tetra_experiment_full_size():
    report = mc_lab.run_tetra_experiment(1_000_000, DEFAULT_SEED, threads=4)
    assert abs(report.p_wc.value - 0.125) < 0.001
    assert abs(report.p_acute.value - 0.5) < 0.0015
    assert abs(report.kappa_hat.value - 0.1019) < 0.001
    assert abs(report.e_n_hat.value - 3.261) < 0.01


def test_sample_theta_abc_lies_above_right_angle():
    samples = mc_lab.sample_theta_abc(3000, 8)
    assert len(samples) == 3000
    assert np.all((samples > HALF_PI) & (samples <= math.pi))


def test_hist_theta_abc_fits_g(loose_spec):
    n = 20_000
    histogram = mc_lab.hist_theta_abc(n, 50, DEFAULT_SEED, loose_spec)
    assert histogram.n == n
    assert float(np.sum(histogram.density * histogram.widths)) == pytest.approx(1.0, abs=1e-12)
    assert mc_lab.fit_theta_abc(histogram, loose_spec).p_value > 0.001
    samples = mc_lab.sample_theta_abc(n, DEFAULT_SEED)
    first, _ = quad_engine.g_moments(loose_spec)
    assert abs(samples.mean() - first) < 4.0 * samples.std() / math.sqrt(n)


def test_hist_theta_min(loose_spec):
    n = 50_000
    histogram = mc_lab.hist_theta_min(n, 100, DEFAULT_SEED, loose_spec)
    left = histogram.bin_edges[1:] <= HALF_PI + 1e-12
    fraction = histogram.counts[left].sum() / n
    assert abs(fraction - 0.875) < 4.0 * math.sqrt(0.875 * 0.125 / n)
    assert mc_lab.fit_theta_min_left(histogram).p_value > 0.001
    assert mc_lab.overlay_excess(histogram, sigmas=4.0) == []
    lcv = histogram.extra_overlays["psi_lcv"]
    assert np.isnan(lcv[0])
    assert np.any(np.isfinite(lcv))


def test_hist_bins_validation(loose_spec):
    with pytest.raises(DomainError):
        mc_lab.hist_theta_min(100, 1, DEFAULT_SEED, loose_spec)


def test_chi_square_needs_enough_bins():
    with pytest.raises(DomainError):
        mc_lab.chi_square_fit(_toy_histogram(), lambda x: x)


def test_chi_square_accepts_a_matching_distribution():
    rng = np.random.Generator(np.random.Philox(2))
    histogram = Histogram.from_samples(rng.random(10_000), np.linspace(0.0, 1.0, 21), np.ones_like)
    report = mc_lab.chi_square_fit(histogram, lambda x: x)
    assert report.dof == 19
    assert report.p_value > 0.001


def test_duality_of_the_theta_min_distribution():
    for omega, estimate in mc_lab.duality_cdf_check(50_000, DEFAULT_SEED):
        assert estimate.within(coverage.p_exact(omega), sigmas=4.0)


def test_mc_prob_E_domain():
    with pytest.raises(DomainError):
        mc_lab.mc_prob_E_given_theta(1.0, 10, 1)


def test_toy_histogram():
    histogram = _toy_histogram()
    assert histogram.counts.tolist() == [1, 3]
    assert float(np.sum(histogram.density * histogram.widths)) == pytest.approx(1.0, abs=1e-15)


def test_emit_and_read_csv(tmp_path):
    path = tmp_path / "toy.csv"
    histogram = _toy_histogram()
    mc_lab.emit_csv(histogram, path)
    raw = path.read_bytes()
    assert raw.startswith(b"bin_left,bin_right,count,density,overlay\n")
    assert b"\r" not in raw
    assert len(raw.decode("utf-8").splitlines()) == 3
    again = mc_lab.read_csv(path)
    assert again.counts.tolist() == histogram.counts.tolist()
    assert np.array_equal(again.bin_edges, histogram.bin_edges)
    assert np.array_equal(again.density, histogram.density)
    assert again.sample_mean is None


def test_emit_csv_to_a_missing_directory(tmp_path):
    with pytest.raises(HistogramIOError) as caught:
        mc_lab.emit_csv(_toy_histogram(), tmp_path / "missing" / "out.csv")
    assert caught.value.path.endswith("out.csv")


def test_read_csv_rejects_a_foreign_header(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
    with pytest.raises(HistogramIOError):
        mc_lab.read_csv(path)


def test_emit_g_table(tmp_path, loose_spec):
    path = tmp_path / "g.csv"
    thetas = mc_lab.emit_g_table(path, 5, loose_spec)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "theta,g,G"
    assert len(lines) == 6
    assert thetas[0] == pytest.approx(HALF_PI) and thetas[-1] == pytest.approx(math.pi)
    first_g_cdf = float(lines[1].split(",")[2])
    last_g_cdf = float(lines[-1].split(",")[2])
    assert first_g_cdf == 0.0
    assert last_g_cdf == pytest.approx(1.0, abs=1e-5)
    with pytest.raises(DomainError):
        mc_lab.emit_g_table(path, 1, loose_spec)


def test_emitted_csv_is_identical_across_thread_counts(tmp_path, loose_spec):
    paths = []
    for threads in (1, 4):
        histogram = mc_lab.hist_theta_min(6000, 30, 5, loose_spec, threads=threads, batch_size=1000)
        path = tmp_path / f"theta_min_{threads}.csv"
        mc_lab.emit_csv(histogram, path)
        paths.append(path)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_hist_theta_abc_keeps_the_raw_sample_mean(loose_spec):
    histogram = mc_lab.hist_theta_abc(2000, 10, 9, loose_spec)
    assert histogram.sample_mean == pytest.approx(float(mc_lab.sample_theta_abc(2000, 9).mean()), abs=1e-15)
