# Oracles/laplace.py
# Numerical Laplace transform of t^(c-1) Phi3~(b, c; x t, y t) against its closed form.

import math

from Core.config import EvalConfig
from Core.errors import DomainError
from Oracles.quadrature import adaptive_quad
from Special.phi3 import Phi3Args, phi3_tilde_series_log

MAX_DOUBLINGS = 16


def laplace_closed_form(b: float, c: float, x: float, y: float, s: float) -> float:
    """s^(-c) (1 - x/s)^(-b) exp(y/s)."""
    return math.exp(-c * math.log(s) - b * math.log1p(-x / s) + y / s)


def laplace_transform_check(b: float, c: float, x: float, y: float, s: float,
                            cfg: EvalConfig | None = None) -> tuple[float, float]:
    cfg = cfg or EvalConfig()
    if not s > x:
        raise DomainError(f"Laplace transform needs s > x, got s={s}, x={x}")
    if not c > 0:
        raise DomainError(f"Laplace check needs c > 0, got c={c}")
    if not (x >= 0 and y >= 0):
        raise DomainError(f"Laplace check needs x, y >= 0, got x={x}, y={y}")

    def integrand(t: float) -> float:
        if t <= 0:
            return 1.0 if c == 1 else 0.0
        sign, lg = phi3_tilde_series_log(Phi3Args(b, c, x * t, y * t), cfg)
        if sign == 0:
            return 0.0
        exponent = (c - 1.0) * math.log(t) - s * t + lg
        return sign * math.exp(exponent) if exponent > -745.0 else 0.0

    # Grow T until the integrand is below abs_tol.
    decay = s - x
    upper = max(1.0, 1.0 / decay)
    for _ in range(MAX_DOUBLINGS):
        if abs(integrand(upper)) < cfg.abs_tol:
            break
        upper *= 2.0

    numeric = adaptive_quad(
        integrand, 0.0, upper, cfg,
        points=[1.0 / decay, 10.0 / decay, 50.0 / decay],
        what=f"Laplace transform (b={b}, c={c}, x={x}, y={y}, s={s})",
    )
    return numeric, laplace_closed_form(b, c, x, y, s)
