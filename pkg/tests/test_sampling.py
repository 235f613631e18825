"""
Tests for the reproducible random substreams and the batch runners.
"""
import numpy as np
import pytest

from services import sampling
from services.exceptions import DomainError


def test_default_seed():
    assert sampling.DEFAULT_SEED == 1592642197


def test_streams_are_keyed_by_seed_experiment_and_batch():
    first = sampling.stream(5, 1, 0).random(4)
    assert np.array_equal(first, sampling.stream(5, 1, 0).random(4))
    assert not np.array_equal(first, sampling.stream(5, 1, 1).random(4))
    assert not np.array_equal(first, sampling.stream(5, 2, 0).random(4))
    assert not np.array_equal(first, sampling.stream(6, 1, 0).random(4))


def test_negative_seed_is_rejected():
    with pytest.raises(DomainError):
        sampling.stream(-1, 1, 0)


@pytest.mark.parametrize("n, batch_size, expected", [
    (10, 4, [4, 4, 2]),
    (8, 4, [4, 4]),
    (3, 65536, [3]),
])
def test_batch_sizes(n, batch_size, expected):
    assert sampling.batch_sizes(n, batch_size) == expected


def test_batch_sizes_errors():
    with pytest.raises(DomainError):
        sampling.batch_sizes(0)
    with pytest.raises(DomainError):
        sampling.batch_sizes(10, 0)


def test_run_batches_is_independent_of_thread_count():
    def batch_fn(rng, size):
        return rng.random(size)

    single = np.concatenate(sampling.run_batches(1000, 9, 1, batch_fn, threads=1, batch_size=64))
    pooled = np.concatenate(sampling.run_batches(1000, 9, 1, batch_fn, threads=4, batch_size=64))
    assert len(single) == 1000
    assert np.array_equal(single, pooled)


def test_run_batches_rejects_bad_threads():
    with pytest.raises(DomainError):
        sampling.run_batches(10, 1, 1, lambda rng, size: size, threads=0)


def test_collect_samples_returns_exactly_n():
    def half(rng, size):
        values = rng.random(size)
        return values[values < 0.5]

    single = sampling.collect_samples(777, 4, 3, half, threads=1, batch_size=100)
    pooled = sampling.collect_samples(777, 4, 3, half, threads=3, batch_size=100)
    assert len(single) == 777
    assert np.all(single < 0.5)
    assert np.array_equal(single, pooled)


def test_sample_theta_min_is_reproducible():
    first = sampling.sample_theta_min(5000, sampling.DEFAULT_SEED, threads=1, batch_size=1024)
    second = sampling.sample_theta_min(5000, sampling.DEFAULT_SEED, threads=2, batch_size=1024)
    assert np.array_equal(first, second)
    assert np.all((first >= 0.0) & (first <= np.pi))
