'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.
'''
# Oracles/quadrature.py
# Direct-integral Marcum-Q, independent of the series in Special/marcum.py.

import math

from loguru import logger
from scipy import integrate
from scipy import special as sc

from Core.config import EvalConfig
from Core.errors import DomainError, QuadratureError
from Special.marcum import MarcumArgs

log = logger.bind(component="oracles.quadrature")

QUAD_EPSABS = 1e-12
QUAD_EPSREL = 1e-10
QUAD_MAX_ERROR = 1e-10
GAUSSIAN_TAIL = 40.0


def adaptive_quad(func, lower: float, upper: float, cfg: EvalConfig, points=None,
                  epsabs: float = QUAD_EPSABS, what: str = "integral") -> float:
    """
    QUADPACK adaptive Gauss-Kronrod on [lower, upper]; raises QuadratureError
    when the error estimate exceeds QUAD_MAX_ERROR.
    """
    if upper <= lower:
        return 0.0
    inner = [p for p in (points or []) if lower < p < upper]
    result = integrate.quad(
        func, lower, upper,
        epsabs=epsabs, epsrel=QUAD_EPSREL,
        limit=cfg.quad_points,
        points=inner or None,
        full_output=1,
    )
    value, abserr = result[0], result[1]
    if len(result) > 3:
        log.debug(f"{what}: quad reported: {result[3]}")
    if not math.isfinite(value) or abserr > QUAD_MAX_ERROR:
        raise QuadratureError(f"{what}: error estimate {abserr:.3e} exceeds {QUAD_MAX_ERROR:.0e}")
    return float(value)


def marcum_quadrature(args: MarcumArgs, cfg: EvalConfig | None = None) -> float:
    """
    Q_m(a, b) = int_b^inf x^m / a^(m-1) exp(-(x - a)^2 / 2) [exp(-a x) I_{m-1}(a x)] dx,
    cut at a + 40 where the Gaussian factor is far below double precision.
    """
    cfg = cfg or EvalConfig()
    m, a, b = args.m, args.a, args.b
    if m < 1:
        raise DomainError(f"marcum_quadrature needs m >= 1, got m={m}")

    log_a = math.log(a)

    def integrand(x: float) -> float:
        if x <= 0:
            return 0.0
        scaled = sc.ive(m - 1, a * x)
        if scaled == 0:
            return 0.0
        return math.exp(m * math.log(x) - (m - 1) * log_a - (x - a) ** 2 / 2.0) * scaled

    # epsabs=0 keeps the relative target meaningful for tiny tail values
    return adaptive_quad(integrand, b, a + GAUSSIAN_TAIL, cfg, points=[a], epsabs=0.0,
                         what=f"Q_{m}({a}, {b}) quadrature")
