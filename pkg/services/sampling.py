"""
Reproducible Monte Carlo plumbing: counter-based random substreams and a
batch runner whose output does not depend on the number of worker threads.

Sample i of an experiment always lives in batch i // batch_size, and batch k
draws from the Philox stream keyed by (seed, experiment, k). Batches are
evaluated in any order but merged in batch order.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar
import logging
import time

import numpy as np

import logManager

from services.exceptions import DomainError
from services.geom_core import sample_uniform_array
from services.min_cap import theta_min_array

logger: logging.Logger = logManager.logger.get_logger(__name__)

T = TypeVar("T")

DEFAULT_SEED: int = 0x5EEDCA95
DEFAULT_BATCH_SIZE: int = 65536

# Stream keys keep experiments sharing a seed statistically independent.
STREAM_TETRA: int = 1
STREAM_THETA_MIN: int = 2
STREAM_THETA_ABC: int = 3
STREAM_COVERAGE: int = 4
STREAM_DUALITY: int = 5
STREAM_TRIANGLE: int = 6


def stream(seed: int, experiment: int, index: int) -> np.random.Generator:
    """
    Counter-based generator for one batch.

    Args:
        seed (int): Experiment seed (non-negative).
        experiment (int): Stream key of the experiment kind.
        index (int): Batch index.

    Returns:
        np.random.Generator: Philox generator keyed by (seed, experiment, index).
    """
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed!r}", "seed")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(experiment, index))))


def sample_quads(rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw `count` quads of independent uniform points, shape (count, 4, 3)."""
    return sample_uniform_array(rng, (count, 4))


def batch_sizes(n: int, batch_size: int = DEFAULT_BATCH_SIZE) -> list[int]:
    """Split n samples into fixed-size batches; the last one takes the remainder."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}", "n")
    if batch_size < 1:
        raise DomainError(f"batch_size must be >= 1, got {batch_size!r}", "batch_size")
    full, rest = divmod(n, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def run_batches(n: int, seed: int, experiment: int, batch_fn: Callable[[np.random.Generator, int], T],
                threads: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> list[T]:
    """
    Evaluate `batch_fn(rng, size)` over all batches of an n-sample experiment.

    Args:
        n (int): Total number of samples.
        seed (int): Experiment seed.
        experiment (int): Stream key.
        batch_fn (Callable[[np.random.Generator, int], T]): Work for one batch.
        threads (int): Worker threads; does not change the results.
        batch_size (int): Samples per batch.

    Returns:
        list[T]: Per-batch results in batch order.
    """
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads!r}", "threads")
    sizes: list[int] = batch_sizes(n, batch_size)
    started: float = time.perf_counter()

    def work(index: int) -> T:
        result: T = batch_fn(stream(seed, experiment, index), sizes[index])
        logger.debug(f"Batch {index + 1}/{len(sizes)} ({sizes[index]} samples) done")
        return result

    if threads == 1 or len(sizes) == 1:
        results: list[T] = [work(index) for index in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=min(threads, len(sizes))) as executor:
            results = list(executor.map(work, range(len(sizes))))
    logger.debug(f"{n} samples in {len(sizes)} batches on {threads} thread(s), "
                 f"{time.perf_counter() - started:.2f}s")
    return results


def collect_samples(n: int, seed: int, experiment: int, batch_fn: Callable[[np.random.Generator, int], np.ndarray],
                    threads: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> np.ndarray:
    """
    Gather the first n accepted values of a rejection experiment.

    Each batch proposes `batch_size` candidates and returns the accepted
    values; batches are taken in index order until n values exist, so the
    result is the same for any thread count.

    Args:
        n (int): Number of accepted values wanted.
        seed (int): Experiment seed.
        experiment (int): Stream key.
        batch_fn (Callable[[np.random.Generator, int], np.ndarray]): Proposals for one batch.
        threads (int): Worker threads.
        batch_size (int): Proposals per batch.

    Returns:
        np.ndarray: Exactly n accepted values.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}", "n")
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads!r}", "threads")
    chunks: list[np.ndarray] = []
    accepted: int = 0
    next_index: int = 0
    with ThreadPoolExecutor(max_workers=threads) as executor:
        while accepted < n:
            indices: range = range(next_index, next_index + threads)
            for chunk in executor.map(lambda index: batch_fn(stream(seed, experiment, index), batch_size), indices):
                chunks.append(chunk)
                accepted += len(chunk)
            next_index += threads
            logger.debug(f"{accepted}/{n} accepted after {next_index} batches")
    return np.concatenate(chunks)[:n]


def sample_theta_min(n: int, seed: int, threads: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> np.ndarray:
    """
    theta_min of n random quads.

    Args:
        n (int): Number of quads.
        seed (int): Experiment seed.
        threads (int): Worker threads.
        batch_size (int): Quads per batch.

    Returns:
        np.ndarray: theta_min values in sample order, shape (n,).
    """
    batches: list[np.ndarray] = run_batches(
        n, seed, STREAM_THETA_MIN, lambda rng, size: theta_min_array(sample_quads(rng, size)), threads, batch_size)
    return np.concatenate(batches)

