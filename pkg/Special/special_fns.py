'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

special_fns.py
Building-block special functions shared by the Marcum-Q, Phi3 and
distribution code.

Products of Gammas, Pochhammers and powers are carried as
(sign, log|value|) pairs and exponentiated once by the caller.
'''

from __future__ import annotations

import math

import numpy as np
from loguru import logger
from scipy import special as sc

from Core.config import EvalConfig
from Core.errors import ConvergenceError, DomainError

__all__ = [
    "EvalConfig",
    "log_gamma",
    "log_rgamma",
    "regularized_lower_gamma",
    "regularized_upper_gamma",
    "bessel_i_scaled",
    "pochhammer_log",
    "pochhammer_log_table",
    "signed_logsumexp",
    "reg_confluent_1f1",
    "reg_confluent_1f1_log",
    "is_nonpositive_integer",
    "SMALL_TERMS_IN_A_ROW",
]

log = logger.bind(component="special_fns")

# Consecutive negligible terms required before a series is declared converged.
SMALL_TERMS_IN_A_ROW = 3

# Below this many factors the Pochhammer product is summed directly.
_PRODUCT_FORM_MAX_R = 64


def is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


# --------------------------------------------------
# Gamma family
# --------------------------------------------------
def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got x={x}")
    return float(sc.gammaln(x))


def log_rgamma(x: float) -> tuple[int, float]:
    """
    (sign, log|1/Gamma(x)|). 1/Gamma is entire, so the poles at
    x = 0, -1, -2, ... come back as (0, -inf).
    """
    if is_nonpositive_integer(x):
        return 0, -math.inf
    return int(sc.gammasgn(x)), -float(sc.gammaln(x))


def regularized_lower_gamma(s: float, x: float) -> float:
    """gamma(s, x) / Gamma(s)."""
    if not s > 0:
        raise DomainError(f"regularized_lower_gamma needs s > 0, got s={s}")
    if not x >= 0:
        raise DomainError(f"regularized_lower_gamma needs x >= 0, got x={x}")
    return float(sc.gammainc(s, x))


def regularized_upper_gamma(s: float, x: float) -> float:
    """Gamma(s, x) / Gamma(s), computed directly (no 1 - P cancellation)."""
    if not s > 0:
        raise DomainError(f"regularized_upper_gamma needs s > 0, got s={s}")
    if not x >= 0:
        raise DomainError(f"regularized_upper_gamma needs x >= 0, got x={x}")
    return float(sc.gammaincc(s, x))


# --------------------------------------------------
# Bessel
# --------------------------------------------------
def bessel_i_scaled(nu: float, x: float) -> float:
    """exp(-x) I_nu(x); multiply by exp(x) for the unscaled value."""
    if not x >= 0:
        raise DomainError(f"bessel_i_scaled needs x >= 0, got x={x}")
    if not nu >= 0:
        raise DomainError(f"bessel_i_scaled needs nu >= 0, got nu={nu} (use I_-n = I_n at the call site)")
    return float(sc.ive(nu, x))


# --------------------------------------------------
# Pochhammer
# --------------------------------------------------
def pochhammer_log(t: float, r: int) -> tuple[int, float]:
    """
    (t)_r = Gamma(t + r) / Gamma(t) as (sign, log|value|).

    (t)_0 = 1 for every t. A zero factor (nonpositive integer t with
    t + r > 0) gives (0, -inf).
    """
    r = int(r)
    if r < 0:
        raise DomainError(f"pochhammer_log needs r >= 0, got r={r}")
    if r == 0:
        return 1, 0.0

    if r <= _PRODUCT_FORM_MAX_R or is_nonpositive_integer(t):
        factors = [t + j for j in range(r)]
        if any(f == 0 for f in factors):
            return 0, -math.inf
        negatives = sum(1 for f in factors if f < 0)
        return (-1 if negatives % 2 else 1), math.fsum(math.log(abs(f)) for f in factors)

    if is_nonpositive_integer(t + r):
        # Gamma(t + r) has a pole but Gamma(t) does not; unreachable for
        # non-integer t, kept for clarity.
        return 0, -math.inf
    sign = int(sc.gammasgn(t + r) * sc.gammasgn(t))
    return sign, float(sc.gammaln(t + r) - sc.gammaln(t))


def pochhammer_log_table(t: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Signs and log-magnitudes of (t)_k for k = 0..n, vectorised."""
    factors = t + np.arange(n, dtype=float)
    with np.errstate(divide="ignore"):
        logs = np.concatenate(([0.0], np.cumsum(np.log(np.abs(factors)))))
    signs = np.concatenate(([1.0], np.cumprod(np.sign(factors))))
    return signs, logs


def signed_logsumexp(logs, signs) -> tuple[int, float]:
    """
    log|sum(sign_i * exp(log_i))| and its sign; (0, -inf) only for an exact zero.

    Shifted by the largest log and summed with fsum: largest terms that tie
    with opposite signs cancel exactly and the smaller ones survive.
    """
    logs = np.asarray(logs, dtype=float)
    signs = np.asarray(signs, dtype=float)
    keep = (signs != 0) & (logs > -np.inf)
    if not np.any(keep):
        return 0, -math.inf
    logs, signs = logs[keep], signs[keep]
    if not np.all(np.isfinite(logs)):
        raise ConvergenceError(f"signed log-sum-exp got a non-finite term ({logs[~np.isfinite(logs)][0]})")
    shift = float(np.max(logs))
    total = math.fsum(signs * np.exp(logs - shift))
    if total == 0:
        return 0, -math.inf
    return (1 if total > 0 else -1), math.log(abs(total)) + shift


# --------------------------------------------------
# Regularized 1F1
# --------------------------------------------------
def reg_confluent_1f1_log(b: float, c: float, w: float, cfg: EvalConfig | None = None) -> tuple[int, float]:
    """
    (sign, log|1F1~(b, c; w)|), 1F1~(b, c; w) = sum_k (b)_k w^k / (Gamma(c + k) k!).

    Poles of 1/Gamma(c + k) contribute zero terms, so any real c is allowed.
    """
    cfg = cfg or EvalConfig()
    if w == 0:
        return log_rgamma(c)

    log_w = math.log(abs(w))
    w_negative = w < 0
    log_rel = math.log(cfg.rel_tol)
    # Terms may vanish up to here (poles of 1/Gamma); don't trust smallness before.
    min_k = max(abs(w), -c, 0.0)

    logs, signs = [], []
    poch_sign, poch_log = 1, 0.0
    peak = -math.inf
    small = 0
    for k in range(cfg.max_terms):
        if k > 0:
            factor = b + k - 1
            if factor == 0:
                poch_sign = 0
            else:
                poch_sign *= 1 if factor > 0 else -1
                poch_log += math.log(abs(factor))
        rg_sign, rg_log = log_rgamma(c + k)
        sign = poch_sign * rg_sign * (-1 if (w_negative and k % 2) else 1)
        lg = poch_log + k * log_w - math.lgamma(k + 1) + rg_log if sign else -math.inf
        if sign:
            logs.append(lg)
            signs.append(sign)
            peak = max(peak, lg)

        # measured against the largest term so far: alternating sums can cancel below it
        if k > min_k and (sign == 0 or lg <= peak + log_rel):
            small += 1
            if small >= SMALL_TERMS_IN_A_ROW:
                log.debug(f"1F1~({b}, {c}; {w}) converged after {k + 1} terms")
                return signed_logsumexp(logs, signs)
        else:
            small = 0
        if poch_sign == 0 and k > min_k:
            # (b)_k vanished: the series is a polynomial and has ended.
            return signed_logsumexp(logs, signs)

    s, lg_total = signed_logsumexp(logs, signs)
    raise ConvergenceError(
        f"1F1~({b}, {c}; {w}) did not converge in {cfg.max_terms} terms",
        terms=cfg.max_terms,
        partial=s * math.exp(lg_total) if s and lg_total < 709 else None,
    )


def reg_confluent_1f1(b: float, c: float, w: float, cfg: EvalConfig | None = None) -> float:
    sign, lg = reg_confluent_1f1_log(b, c, w, cfg)
    if sign == 0:
        return 0.0
    if lg > 709.78:
        raise DomainError(f"1F1~({b}, {c}; {w}) = exp({lg:.3f}) overflows float64")
    return sign * math.exp(lg)
