'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

nakagami.py
Joint CDF of two correlated Nakagami-m envelopes as a finite sum of
Marcum-Q terms, its Rayleigh (m = 1) special case, and the
dual-branch selection-combining outage built on it.

rho is the power correlation coefficient of R1^2 and R2^2.
'''

from __future__ import annotations

import math
from dataclasses import dataclass

from loguru import logger
from scipy import special as sc

from Core.config import EvalConfig
from Core.errors import DomainError, require
from Distributions.probability import checked_probability
from Special.marcum import MarcumArgs, marcum_q
from Special.phi3 import coeff_polynomial
from Special.special_fns import signed_logsumexp

log = logger.bind(component="nakagami")

# Below this correlation the closed form divides by ~0; use independence.
RHO_INDEPENDENT = 1e-6
# Above 1 - RHO_DEGENERATE the pair is (almost) perfectly correlated: no density.
RHO_DEGENERATE = 1e-6


def _check_rho(rho: float):
    if not 0 <= rho < 1:
        raise DomainError(f"rho must be in [0, 1), got {rho}")
    if rho > 1 - RHO_DEGENERATE:
        raise DomainError(f"rho={rho} is too close to 1 (degenerate, perfectly correlated)")


def _check_radii(r1: float, r2: float):
    if not (r1 >= 0 and r2 >= 0):
        raise DomainError(f"r1 and r2 must be >= 0, got r1={r1}, r2={r2}")


@dataclass(frozen=True)
class NakagamiBivariate:
    m: int
    omega1: float = 1.0
    omega2: float = 1.0
    rho: float = 0.5

    def __post_init__(self):
        require(float(self.m).is_integer() and self.m >= 1, f"fading index m must be a positive integer, got {self.m}")
        require(self.omega1 > 0 and self.omega2 > 0,
                f"omega1, omega2 must be > 0, got {self.omega1}, {self.omega2}")
        _check_rho(self.rho)
        object.__setattr__(self, "m", int(self.m))

    @property
    def alpha(self) -> float:
        return math.sqrt(2.0 * self.m / (1.0 - self.rho))

    @property
    def beta(self) -> float:
        return self.alpha * math.sqrt(self.rho)

    def normalized(self) -> "NakagamiBivariate":
        return NakagamiBivariate(self.m, 1.0, 1.0, self.rho)


# --------------------------------------------------
# Joint CDF
# --------------------------------------------------
def _marginal_power_cdf(m: int, r: float) -> float:
    return float(sc.gammainc(m, m * r * r))


def bivariate_nakagami_cdf_normalized(model: NakagamiBivariate, r1: float, r2: float,
                                      cfg: EvalConfig | None = None) -> float:
    """
    F(r1, r2) for unit-power envelopes:

      P(m, m r2^2)
      - exp(-m r1^2) sum_k (m r1^2)^k / k! Q_{1-k}(r2 alpha, r1 beta)
      + exp(-m r2^2) sum_{k,i,r} ((1-rho)/rho)^r / k! (m r1^2 / rho)^(k+i-r-1)
                                 A_r(i, k+i; (r1 r2 alpha beta)^2 / 4) Q_{2-k-i+r}(r2 beta, r1 alpha)

    The first Marcum term pairs alpha with r2, the second pairs beta with r2.
    """
    cfg = cfg or EvalConfig()
    _check_radii(r1, r2)
    if r1 == 0 or r2 == 0:
        return 0.0

    m, rho = model.m, model.rho
    if rho < RHO_INDEPENDENT:
        return _marginal_power_cdf(m, r1) * _marginal_power_cdf(m, r2)

    alpha, beta = model.alpha, model.beta
    x1 = m * r1 * r1
    x2 = m * r2 * r2
    log_x1 = math.log(x1)
    log_rho = math.log(rho)
    log_ratio = math.log1p(-rho) - log_rho
    z = (r1 * r2 * alpha * beta) ** 2 / 4.0

    first = _marginal_power_cdf(m, r2)

    second = 0.0
    for k in range(m):
        weight = math.exp(-x1 + k * log_x1 - math.lgamma(k + 1))
        second += weight * marcum_q(MarcumArgs(1 - k, r2 * alpha, r1 * beta), cfg)

    logs, signs = [], []
    for k in range(m):
        for i in range(1, m - k + 1):
            for r in range(2 * (i - 1) + 1):
                a_sign, a_log = coeff_polynomial(i, k + i, r).evaluate_log(z)
                if a_sign == 0:
                    continue
                q = marcum_q(MarcumArgs(2 - k - i + r, r2 * beta, r1 * alpha), cfg)
                if q <= 0:
                    continue
                logs.append(-x2 + r * log_ratio - math.lgamma(k + 1)
                            + (k + i - r - 1) * (log_x1 - log_rho) + a_log + math.log(q))
                signs.append(a_sign)
    t_sign, t_log = signed_logsumexp(logs, signs)
    third = t_sign * math.exp(t_log) if t_sign else 0.0

    value = first - second + third
    log.debug(f"F({r1}, {r2}; m={m}, rho={rho}) = {first} - {second} + {third}")
    return checked_probability(value, f"bivariate Nakagami CDF at ({r1}, {r2})")


def bivariate_nakagami_cdf(model: NakagamiBivariate, r1: float, r2: float,
                           cfg: EvalConfig | None = None) -> float:
    """F_{R1,R2}(r1, r2) = F(r1 / sqrt(omega1), r2 / sqrt(omega2))."""
    _check_radii(r1, r2)
    return bivariate_nakagami_cdf_normalized(
        model, r1 / math.sqrt(model.omega1), r2 / math.sqrt(model.omega2), cfg
    )


def bivariate_rayleigh_cdf(rho: float, r1: float, r2: float, cfg: EvalConfig | None = None) -> float:
    """1 - e^{-r2^2} - e^{-r1^2} Q1(r2 alpha, r1 beta) + e^{-r2^2} Q1(r2 beta, r1 alpha), alpha/beta at m = 1."""
    cfg = cfg or EvalConfig()
    _check_rho(rho)
    _check_radii(r1, r2)
    if r2 == 0:
        return 0.0
    if rho < RHO_INDEPENDENT:
        return -math.expm1(-r1 * r1) * -math.expm1(-r2 * r2)

    alpha = math.sqrt(2.0 / (1.0 - rho))
    beta = alpha * math.sqrt(rho)
    value = (
        -math.expm1(-r2 * r2)
        - math.exp(-r1 * r1) * marcum_q(MarcumArgs(1, r2 * alpha, r1 * beta), cfg)
        + math.exp(-r2 * r2) * marcum_q(MarcumArgs(1, r2 * beta, r1 * alpha), cfg)
    )
    return checked_probability(value, f"bivariate Rayleigh CDF at ({r1}, {r2})")


def selection_combining_outage(model: NakagamiBivariate, threshold: float,
                               cfg: EvalConfig | None = None) -> float:
    """P(max(R1, R2) <= threshold) for dual-branch selection diversity."""
    return bivariate_nakagami_cdf(model, threshold, threshold, cfg)
