'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

wishart.py
Minimum-eigenvalue CDF of a square (n = m) complex non-central Wishart
matrix W = X^H X with rank-one mean, plus the MIMO bounds built on it.

    F(lambda) = 1 - exp(-eta - lambda tr(Sigma^-1)) Phi3(m, m; eta, lambda mu)

eta = tr(Theta), mu = tr(Theta Sigma^-1), Theta = Sigma^-1 Upsilon^H Upsilon.
'''

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
from loguru import logger
from scipy import special as sc

from Core.config import EvalConfig
from Core.errors import DomainError, LinearAlgebraError, require
from Distributions.linalg import (
    as_square,
    check_hermitian_pd,
    hermitian_inverse,
    matrix_rank_le_one,
    unit_vector,
)
from Distributions.probability import checked_probability
from Special.phi3 import Phi3Args, phi3_tilde_series_log, phi3_tilde_via_marcum_log

log = logger.bind(component="wishart")


class MinEigParams(Protocol):
    m: int
    eta: float
    mu: float
    trace_sigma_inv: float


@dataclass(frozen=True)
class WishartScalars:
    """The four numbers the CDF actually depends on."""

    m: int
    eta: float
    mu: float
    trace_sigma_inv: float

    def __post_init__(self):
        require(float(self.m).is_integer() and self.m >= 1, f"m must be a positive integer, got {self.m}")
        require(self.eta >= 0, f"eta must be >= 0, got {self.eta}")
        require(self.mu >= 0, f"mu must be >= 0, got {self.mu}")
        require(self.trace_sigma_inv > 0, f"tr(Sigma^-1) must be > 0, got {self.trace_sigma_inv}")
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True, eq=False)
class WishartModel:
    sigma: np.ndarray
    upsilon: np.ndarray
    m: int = field(init=False)
    sigma_inv: np.ndarray = field(init=False, repr=False)
    theta: np.ndarray = field(init=False, repr=False)
    eta: float = field(init=False)
    mu: float = field(init=False)
    trace_sigma_inv: float = field(init=False)

    def __post_init__(self):
        sigma = as_square(self.sigma, "Sigma")
        upsilon = as_square(self.upsilon, "Upsilon")
        if sigma.shape != upsilon.shape:
            raise LinearAlgebraError(f"Sigma {sigma.shape} and Upsilon {upsilon.shape} must match (square case n = m)")
        check_hermitian_pd(sigma)
        if not matrix_rank_le_one(upsilon):
            raise LinearAlgebraError("Upsilon must have rank one")

        sigma_inv = hermitian_inverse(sigma)
        theta = sigma_inv @ upsilon.conj().T @ upsilon
        eta = max(float(np.trace(theta).real), 0.0)
        mu = max(float(np.trace(theta @ sigma_inv).real), 0.0)

        for name, value in (
            ("sigma", sigma), ("upsilon", upsilon), ("m", sigma.shape[0]),
            ("sigma_inv", sigma_inv), ("theta", theta), ("eta", eta), ("mu", mu),
            ("trace_sigma_inv", float(np.trace(sigma_inv).real)),
        ):
            object.__setattr__(self, name, value)

    # ------------------------------------------------------------------
    # FACTORIES
    # ------------------------------------------------------------------
    @classmethod
    def from_line_of_sight(cls, m: int, sigma=None, k_factor: float = 1.0,
                           steering_rx=None, steering_tx=None) -> "WishartModel":
        """
        Rician LoS mean Upsilon = sqrt(K * m * tr(Sigma)) a_rx a_tx^H with unit
        steering vectors, so ||Upsilon||_F^2 is K times the scattered power.
        """
        require(k_factor >= 0, f"k_factor must be >= 0, got {k_factor}")
        sigma = np.eye(m, dtype=complex) if sigma is None else as_square(sigma, "Sigma")
        a_rx = unit_vector(np.ones(m) if steering_rx is None else steering_rx)
        a_tx = unit_vector(np.ones(m) if steering_tx is None else steering_tx)
        scale = math.sqrt(k_factor * m * float(np.trace(sigma).real))
        return cls(sigma, scale * np.outer(a_rx, a_tx.conj()))

    @classmethod
    def random(cls, m: int, rng: np.random.Generator, k_range=(0.5, 3.0)) -> "WishartModel":
        """Seeded correlated Rician model with a random rank-one mean."""
        a = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(2)
        sigma = a @ a.conj().T / m + 0.5 * np.eye(m)
        sigma = (sigma + sigma.conj().T) / 2
        rx = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        tx = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        k_factor = float(rng.uniform(*k_range))
        return cls.from_line_of_sight(m, sigma, k_factor, rx, tx)

    def scalars(self) -> WishartScalars:
        return WishartScalars(self.m, self.eta, self.mu, self.trace_sigma_inv)


# --------------------------------------------------
# Minimum-eigenvalue CDF
# --------------------------------------------------
def _check_lambda(lam: float):
    if not lam >= 0:
        raise DomainError(f"lambda must be >= 0, got {lam}")


def wishart_min_eig_cdf_phi3(model: MinEigParams, lam: float, cfg: EvalConfig | None = None) -> float:
    cfg = cfg or EvalConfig()
    _check_lambda(lam)
    if lam == 0:
        return 0.0
    m = model.m
    sign, lg = phi3_tilde_series_log(Phi3Args(m, m, model.eta, lam * model.mu), cfg)
    survival = sign * math.exp(lg + float(sc.gammaln(m)) - model.eta - lam * model.trace_sigma_inv) if sign else 0.0
    return checked_probability(1.0 - survival, "Wishart min-eigenvalue CDF (Phi3 path)")


def wishart_min_eig_cdf_marcum(model: MinEigParams, lam: float, cfg: EvalConfig | None = None) -> float:
    """
    Finite Marcum-Q form. lambda = 0, eta = 0 or mu = 0 would put a zero
    argument into the Marcum expansion, so those go to the Phi3 path.
    """
    cfg = cfg or EvalConfig()
    _check_lambda(lam)
    if lam == 0 or model.eta == 0 or model.mu == 0:
        return wishart_min_eig_cdf_phi3(model, lam, cfg)
    m = model.m
    sign, lg = phi3_tilde_via_marcum_log(Phi3Args(m, m, model.eta, lam * model.mu), cfg)
    # Gamma(m) (lambda mu / eta)^(m-1) and exp(eta + lambda mu / eta) are already inside lg
    offset = float(sc.gammaln(m)) - model.eta - lam * model.trace_sigma_inv
    survival = sign * math.exp(lg + offset) if sign else 0.0
    return checked_probability(1.0 - survival, "Wishart min-eigenvalue CDF (Marcum path)")


# --------------------------------------------------
# MIMO bounds
# --------------------------------------------------
def mimo_min_distance_bound(lambda_min: float, d0: float) -> float:
    """d_min >= sqrt(lambda_min) * d0."""
    if not lambda_min >= 0:
        raise DomainError(f"lambda_min must be >= 0, got {lambda_min}")
    if not d0 > 0:
        raise DomainError(f"d0 must be > 0, got {d0}")
    return math.sqrt(lambda_min) * d0


def mimo_outage_upper_bound(model: MinEigParams, snr_per_symbol: float, nt: int,
                            sinr_threshold: float, cfg: EvalConfig | None = None) -> float:
    """
    SINR >= Es / (Nt sigma^2) * lambda_min, hence
    P(SINR < gamma) <= F_lambda_min(gamma * Nt / (Es / sigma^2)).
    """
    require(snr_per_symbol > 0, f"snr_per_symbol must be > 0, got {snr_per_symbol}")
    require(sinr_threshold > 0, f"sinr_threshold must be > 0, got {sinr_threshold}")
    require(float(nt).is_integer() and nt >= 1, f"nt must be a positive integer, got {nt}")
    require(int(nt) == model.m, f"nt={nt} must equal the Wishart dimension m={model.m} (square channel)")
    lam = sinr_threshold * nt / snr_per_symbol
    log.debug(f"Outage bound evaluated at lambda_min={lam}")
    return wishart_min_eig_cdf_marcum(model, lam, cfg)


def mimo_ml_distance_cdf_bound(model: MinEigParams, d: float, d0: float, cfg: EvalConfig | None = None) -> float:
    """P(d_min <= d) <= F_lambda_min((d / d0)^2)."""
    require(d >= 0, f"d must be >= 0, got {d}")
    require(d0 > 0, f"d0 must be > 0, got {d0}")
    return wishart_min_eig_cdf_marcum(model, (d / d0) ** 2, cfg)
