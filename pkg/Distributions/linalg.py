'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.
'''
# Distributions/linalg.py
# Small dense Hermitian kernel used by the Wishart model and its sampler.

import numpy as np

from Core.errors import LinearAlgebraError

RANK_ONE_RATIO = 1e-10
HERMITIAN_RTOL = 1e-12


def as_square(matrix, name: str) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(matrix, dtype=complex))
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise LinearAlgebraError(f"{name} must be a square matrix, got shape {arr.shape}")
    return arr


def check_hermitian_pd(sigma: np.ndarray) -> np.ndarray:
    """Eigenvalues of sigma; raises unless sigma is Hermitian positive-definite."""
    scale = max(1.0, float(np.max(np.abs(sigma))))
    if not np.allclose(sigma, sigma.conj().T, rtol=0, atol=HERMITIAN_RTOL * scale):
        raise LinearAlgebraError("Sigma is not Hermitian")
    eigenvalues = np.linalg.eigvalsh(sigma)
    if not np.all(eigenvalues > 0):
        raise LinearAlgebraError(f"Sigma is not positive-definite (min eigenvalue {eigenvalues.min():.3e})")
    return eigenvalues


def hermitian_inverse(sigma: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(sigma)
    return (vectors / values) @ vectors.conj().T


def hermitian_sqrt(sigma: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(sigma)
    if not np.all(values > 0):
        raise LinearAlgebraError("Sigma^(1/2) needs a positive-definite Sigma")
    return (vectors * np.sqrt(values)) @ vectors.conj().T


def matrix_rank_le_one(upsilon: np.ndarray) -> bool:
    """True when sigma_2 / sigma_1 < RANK_ONE_RATIO (or the matrix is zero)."""
    singular = np.linalg.svd(upsilon, compute_uv=False)
    if singular.size < 2 or singular[0] == 0:
        return True
    return bool(singular[1] / singular[0] < RANK_ONE_RATIO)


def unit_vector(vec) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise LinearAlgebraError("Steering vector must be nonzero")
    return vec / norm
