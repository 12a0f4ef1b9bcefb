'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

sampling.py
Monte Carlo oracles for the closed-form CDFs.

Streams are split into fixed-size chunks; chunk j draws from
SeedSequence(seed).spawn(n_chunks)[j]. The split depends only on
(seed, samples, chunk_size), so estimates are identical for any number
of workers and any completion order.
'''

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from loguru import logger

from Core.errors import DomainError
from Distributions.linalg import hermitian_sqrt
from Distributions.nakagami import NakagamiBivariate
from Distributions.wishart import WishartModel

log = logger.bind(component="oracles.sampling")

DEFAULT_CHUNK = 100_000
MIN_CDF_SAMPLES = 10_000


def standard_complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """CN(0, 1): real and imaginary parts each N(0, 1/2)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


@dataclass(frozen=True)
class SampleStream:
    """Re-iterable stream of sample batches, reproducible from (seed, samples)."""

    draw: Callable[[np.random.Generator, int], np.ndarray]
    samples: int
    seed: int
    chunk_size: int = DEFAULT_CHUNK

    def _chunks(self) -> list[tuple[np.random.SeedSequence, int]]:
        n_chunks = max(1, math.ceil(self.samples / self.chunk_size))
        children = np.random.SeedSequence(self.seed).spawn(n_chunks)
        sizes = [min(self.chunk_size, self.samples - j * self.chunk_size) for j in range(n_chunks)]
        return list(zip(children, sizes))

    def _draw_chunk(self, chunk) -> np.ndarray:
        seed_seq, size = chunk
        return self.draw(np.random.default_rng(seed_seq), size)

    def batches(self, workers: int = 1) -> Iterator[np.ndarray]:
        chunks = self._chunks()
        if workers <= 1:
            for chunk in chunks:
                yield self._draw_chunk(chunk)
            return
        # map() keeps chunk order regardless of completion order
        with ThreadPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(self._draw_chunk, chunks)

    def __iter__(self):
        return self.batches()

    def collect(self) -> np.ndarray:
        return np.concatenate(list(self.batches()))


@dataclass(frozen=True)
class McResult:
    estimate: float
    std_error: float
    samples: int
    seed: int

    @classmethod
    def from_counts(cls, hits: int, samples: int, seed: int) -> "McResult":
        p = hits / samples
        return cls(p, math.sqrt(p * (1.0 - p) / samples), samples, seed)

    def tolerance(self, n_se: float = 3.0) -> float:
        # one-sample floor so an estimate of exactly 0 or 1 is not a zero-width band
        return n_se * max(self.std_error, 1.0 / self.samples)

    def agrees_with(self, value: float, n_se: float = 3.0) -> bool:
        return abs(value - self.estimate) <= self.tolerance(n_se)


def _validate_count(n: int):
    if not (float(n).is_integer() and n >= 1):
        raise DomainError(f"sample count must be a positive integer, got {n}")


# --------------------------------------------------
# Samplers
# --------------------------------------------------
def sample_bivariate_nakagami(model: NakagamiBivariate, n: int, seed: int,
                              chunk_size: int = DEFAULT_CHUNK) -> SampleStream:
    """
    (R1, R2) pairs: R_j^2 = (1/m) sum_k |g_k|^2 with h_k = sqrt(rho) g_k + sqrt(1-rho) e_k,
    scaled by sqrt(omega_j). Marginals of R_j^2 / omega_j are Gamma(m, 1/m).
    """
    _validate_count(n)
    m, rho = model.m, model.rho
    s1, s2 = math.sqrt(model.omega1), math.sqrt(model.omega2)

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        g = standard_complex_normal(rng, (size, m))
        e = standard_complex_normal(rng, (size, m))
        h = math.sqrt(rho) * g + math.sqrt(1.0 - rho) * e
        r1 = np.sqrt(np.mean(np.abs(g) ** 2, axis=1)) * s1
        r2 = np.sqrt(np.mean(np.abs(h) ** 2, axis=1)) * s2
        return np.column_stack((r1, r2))

    return SampleStream(draw, int(n), int(seed), chunk_size)


def sample_wishart_min_eig(model: WishartModel, n: int, seed: int,
                           chunk_size: int = DEFAULT_CHUNK) -> SampleStream:
    """lambda_min of W = X^H X, X = Upsilon + G Sigma^(1/2), G with iid CN(0, 1) entries."""
    _validate_count(n)
    sigma_half = hermitian_sqrt(model.sigma)
    upsilon = model.upsilon
    m = model.m

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        x = upsilon + standard_complex_normal(rng, (size, m, m)) @ sigma_half
        w = np.conj(np.swapaxes(x, 1, 2)) @ x
        return np.linalg.eigvalsh(w)[:, 0]

    return SampleStream(draw, int(n), int(seed), chunk_size)


def sample_wishart_trace(model: WishartModel, n: int, seed: int,
                         chunk_size: int = DEFAULT_CHUNK) -> SampleStream:
    """tr(W) draws from the same construction; used for the first-moment sanity check."""
    _validate_count(n)
    sigma_half = hermitian_sqrt(model.sigma)
    upsilon = model.upsilon
    m = model.m

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        x = upsilon + standard_complex_normal(rng, (size, m, m)) @ sigma_half
        return np.sum(np.abs(x) ** 2, axis=(1, 2))

    return SampleStream(draw, int(n), int(seed), chunk_size)


# --------------------------------------------------
# Empirical CDF
# --------------------------------------------------
def empirical_cdf(stream: SampleStream, thresholds, workers: int = 1) -> McResult:
    """Fraction of samples with every coordinate <= its threshold."""
    if stream.samples < MIN_CDF_SAMPLES:
        raise DomainError(f"empirical_cdf needs at least {MIN_CDF_SAMPLES} samples, got {stream.samples}")
    limits = np.atleast_1d(np.asarray(thresholds, dtype=float))
    hits = 0
    for batch in stream.batches(workers):
        if batch.ndim == 1:
            hits += int(np.count_nonzero(batch <= limits[0]))
        else:
            hits += int(np.count_nonzero(np.all(batch <= limits, axis=1)))
    result = McResult.from_counts(hits, stream.samples, stream.seed)
    log.debug(f"empirical CDF at {limits.tolist()}: {result.estimate} +/- {result.std_error}")
    return result


def empirical_cdf_many(stream: SampleStream, thresholds, workers: int = 1) -> list[McResult]:
    """empirical_cdf for several threshold points from one pass over the stream."""
    if stream.samples < MIN_CDF_SAMPLES:
        raise DomainError(f"empirical_cdf needs at least {MIN_CDF_SAMPLES} samples, got {stream.samples}")
    limits = [np.atleast_1d(np.asarray(t, dtype=float)) for t in thresholds]
    hits = [0] * len(limits)
    for batch in stream.batches(workers):
        for j, limit in enumerate(limits):
            if batch.ndim == 1:
                hits[j] += int(np.count_nonzero(batch <= limit[0]))
            else:
                hits[j] += int(np.count_nonzero(np.all(batch <= limit, axis=1)))
    return [McResult.from_counts(h, stream.samples, stream.seed) for h in hits]


def sample_moments(stream: SampleStream, workers: int = 1,
                   transform: Callable[[np.ndarray], np.ndarray] | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Mean vector and covariance matrix of transform(sample), accumulated chunk by chunk."""
    total = None
    outer = None
    for batch in stream.batches(workers):
        x = transform(batch) if transform else batch
        x = x.reshape(len(x), -1).astype(float)
        total = x.sum(axis=0) if total is None else total + x.sum(axis=0)
        outer = x.T @ x if outer is None else outer + x.T @ x
    n = stream.samples
    mean = total / n
    cov = (outer - n * np.outer(mean, mean)) / max(n - 1, 1)
    return mean, cov
