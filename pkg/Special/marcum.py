'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

marcum.py
Generalized Marcum-Q function Q_m(a, b) for every integer order.

Production path: Poisson-weighted incomplete-gamma series
    Q_m(a, b) = sum_k Pois(k; a^2/2) * Gamma~(m + k, b^2/2)        (m >= 1)
Negative and zero orders use Q_m(a, b) = 1 - Q_{1-m}(b, a); the right-hand
side is summed as the complementary lower-gamma series so tiny values keep
their relative accuracy.

The Phi3-based forms are kept as cross-validation paths only.
'''

from __future__ import annotations

import math
from dataclasses import dataclass

from loguru import logger
from scipy import special as sc

from Core.config import EvalConfig
from Core.errors import ConvergenceError, DomainError
from Special.special_fns import SMALL_TERMS_IN_A_ROW

log = logger.bind(component="marcum")


@dataclass(frozen=True)
class MarcumArgs:
    m: int
    a: float
    b: float

    def __post_init__(self):
        if not float(self.m).is_integer():
            raise DomainError(f"Marcum order must be an integer, got m={self.m}")
        if not self.a > 0:
            raise DomainError(f"Marcum argument a must be > 0, got a={self.a}")
        if not self.b >= 0:
            raise DomainError(f"Marcum argument b must be >= 0, got b={self.b}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    def swapped(self) -> "MarcumArgs":
        """Arguments of the companion term Q_{1-m}(b, a)."""
        return MarcumArgs(1 - self.m, self.b, self.a)


# --------------------------------------------------
# Series core
# --------------------------------------------------
def _poisson_gamma_series(lam: float, x: float, order: int, upper: bool, cfg: EvalConfig) -> float:
    """
    sum_{k>=0} exp(-lam) lam^k / k! * G(order + k, x)
    with G the regularized upper (upper=True) or lower incomplete gamma.

    Every term is nonnegative. The summand can peak after the Poisson mode
    when x >> lam, so convergence also needs the terms to be falling.
    """
    gamma_fn = sc.gammaincc if upper else sc.gammainc
    if lam == 0:
        return float(gamma_fn(order, x))

    log_lam = math.log(lam)
    total = 0.0
    prev = math.inf
    small = 0
    for k in range(cfg.max_terms):
        log_weight = -lam + k * log_lam - math.lgamma(k + 1)
        term = math.exp(log_weight) * float(gamma_fn(order + k, x)) if log_weight > -745.0 else 0.0
        total += term

        past_mode = k > lam and term <= prev
        if past_mode and term <= cfg.rel_tol * total + cfg.abs_tol:
            small += 1
            if small >= SMALL_TERMS_IN_A_ROW:
                log.debug(f"Poisson-gamma series (lam={lam}, x={x}, order={order}, upper={upper}) "
                          f"stopped at k={k}")
                # Poisson weights sum to 1; rounding can push the total an ulp past it
                return min(total, 1.0)
        else:
            small = 0
        prev = term

    raise ConvergenceError(
        f"Marcum series (lam={lam}, x={x}, order={order}) did not converge in {cfg.max_terms} terms",
        terms=cfg.max_terms,
        partial=total,
    )


# --------------------------------------------------
# Public API
# --------------------------------------------------
def marcum_q(args: MarcumArgs, cfg: EvalConfig | None = None) -> float:
    """Q_m(a, b); in [0, 1] for m >= 1, nonincreasing in b."""
    cfg = cfg or EvalConfig()
    if args.m <= 0:
        return marcum_q_negative_order(args, cfg)
    if args.b == 0:
        return 1.0
    return _poisson_gamma_series(args.a ** 2 / 2.0, args.b ** 2 / 2.0, args.m, upper=True, cfg=cfg)


def marcum_q_negative_order(args: MarcumArgs, cfg: EvalConfig | None = None) -> float:
    """
    Q_m(a, b) = 1 - Q_{1-m}(b, a) for m <= 0.

    The swapped call needs a positive first argument, so b = 0 is rejected
    rather than guessing a limit.
    """
    cfg = cfg or EvalConfig()
    if args.m > 0:
        raise DomainError(f"marcum_q_negative_order needs m <= 0, got m={args.m}")
    if args.b == 0:
        raise DomainError(f"Q_{args.m}(a, 0) is indeterminate for m <= 0 (swapped first argument is 0)")
    # 1 - Q_{1-m}(b, a) summed as its complementary (lower-gamma) series
    return _poisson_gamma_series(args.b ** 2 / 2.0, args.a ** 2 / 2.0, 1 - args.m, upper=False, cfg=cfg)


def marcum_q_via_phi3(args: MarcumArgs, cfg: EvalConfig | None = None, form: str = "complement") -> float:
    """
    Cross-validation path through the regularized Phi3 function.

    form="complement":
        Q_m(a,b) = 1 - (b^2/2)^m exp(-(a^2+b^2)/2) Phi3~(1, m+1; b^2/2, a^2 b^2/4)
    form="direct":
        Q_m(a,b) = (a^2/2)^(1-m) exp(-(a^2+b^2)/2) Phi3~(1, 2-m; a^2/2, a^2 b^2/4)

    The complement form is a subtraction, so its relative accuracy drops
    when Q_m << 1; the direct form is a pure product.
    """
    if form == "direct":
        return marcum_q_direct(args, cfg)
    if form != "complement":
        raise DomainError(f"Unknown Marcum Phi3 form: {form!r}")

    from Special.phi3 import Phi3Args, phi3_tilde_series_log

    cfg = cfg or EvalConfig()
    a, b, m = args.a, args.b, args.m
    if b == 0:
        if m >= 1:
            return 1.0
        raise DomainError(f"(b^2/2)^m is undefined at b=0 for m={m}")

    half_b2 = b * b / 2.0
    sign, lg = phi3_tilde_series_log(Phi3Args(1, m + 1, half_b2, a * a * b * b / 4.0), cfg)
    if sign == 0:
        return 1.0
    lg += m * math.log(half_b2) - (a * a + b * b) / 2.0
    return 1.0 - sign * math.exp(lg)


def marcum_q_direct(args: MarcumArgs, cfg: EvalConfig | None = None) -> float:
    from Special.phi3 import Phi3Args, phi3_tilde_series_log

    cfg = cfg or EvalConfig()
    a, b, m = args.a, args.b, args.m
    half_a2 = a * a / 2.0
    sign, lg = phi3_tilde_series_log(Phi3Args(1, 2 - m, half_a2, a * a * b * b / 4.0), cfg)
    if sign == 0:
        return 0.0
    lg += (1 - m) * math.log(half_a2) - (a * a + b * b) / 2.0
    return sign * math.exp(lg)
