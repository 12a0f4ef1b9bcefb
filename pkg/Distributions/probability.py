# Distributions/probability.py

from loguru import logger

from Core.errors import ConvergenceError

CLAMP_TOLERANCE = 1e-9


def checked_probability(value: float, what: str) -> float:
    """Clamp to [0, 1], but only after the overshoot is within CLAMP_TOLERANCE."""
    violation = max(-value, value - 1.0, 0.0)
    if violation >= CLAMP_TOLERANCE:
        raise ConvergenceError(f"{what} left [0, 1] by {violation:.3e}; series cancellation too large")
    if violation > 0:
        logger.bind(component="probability").debug(f"{what}: clamped overshoot {violation:.3e}")
    return min(max(value, 0.0), 1.0)
