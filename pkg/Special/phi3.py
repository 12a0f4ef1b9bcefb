'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

phi3.py
Humbert Phi3 and its regularized form Phi3~ = Phi3 / Gamma(c).

Three evaluation paths:
- series:    the defining double series, summed over anti-diagonals k + m = n
- recursive: Phi3~(b, c) as a finite combination of Phi3~(1, c - i), i = 0..2(b-1),
             weighted by the A_i polynomials
- marcum:    the same combination with each Phi3~(1, .) written as a Marcum-Q term

All three return (sign, log|value|) internally; the float wrappers
exponentiate once at the end.
'''

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from loguru import logger
from scipy import special as sc

from Core.config import EvalConfig
from Core.errors import ConvergenceError, DomainError
from Special.marcum import MarcumArgs, marcum_q
from Special.special_fns import (
    SMALL_TERMS_IN_A_ROW,
    is_nonpositive_integer,
    log_rgamma,
    pochhammer_log,
    pochhammer_log_table,
    reg_confluent_1f1_log,
    signed_logsumexp,
)

log = logger.bind(component="phi3")

SignedLog = tuple[int, float]
_ZERO: SignedLog = (0, -math.inf)


@dataclass(frozen=True)
class Phi3Args:
    b: float
    c: float
    w: float
    z: float

    @property
    def integer_b(self) -> bool:
        return float(self.b).is_integer() and self.b > 0

    @property
    def integer_c(self) -> bool:
        return float(self.c).is_integer()


def _to_float(signed: SignedLog) -> float:
    sign, lg = signed
    if sign == 0:
        return 0.0
    if lg > 709.78:
        raise DomainError(f"Phi3 value exp({lg:.3f}) overflows float64")
    return sign * math.exp(lg)


def _add_log(signed: SignedLog, offset: float) -> SignedLog:
    return (signed[0], signed[1] + offset) if signed[0] else _ZERO


# --------------------------------------------------
# Series path
# --------------------------------------------------
def _bessel_closed_form_log(c: float, z: float) -> SignedLog:
    """Phi3~(b, c; 0, z) = z^((1-c)/2) I_{c-1}(2 sqrt z), z > 0."""
    x = 2.0 * math.sqrt(z)
    scaled = float(sc.ive(abs(c - 1.0), x))     # I_{-n} = I_n for integer n
    if scaled == 0:
        return _ZERO
    return 1, (1.0 - c) / 2.0 * math.log(z) + math.log(scaled) + x


def _double_series_log(b: float, c: float, w: float, z: float, cfg: EvalConfig) -> SignedLog:
    """
    sum_n 1/Gamma(c + n) * sum_{k=0..n} (b)_k w^k z^(n-k) / (k! (n-k)!)

    1/Gamma(c + k + m) is constant along an anti-diagonal, so each one is a
    single vectorised signed log-sum-exp.
    """
    log_w = math.log(abs(w)) if w else -math.inf
    log_z = math.log(abs(z)) if z else -math.inf
    sign_w = -1.0 if w < 0 else 1.0
    sign_z = -1.0 if z < 0 else 1.0
    # z-direction peaks near sqrt|z| (two factorials), w-direction near |w|
    n_min = max(2.0 * (math.sqrt(abs(w)) + math.sqrt(abs(z))), abs(w) + 2.0 * math.sqrt(abs(z)), -c)

    cap = 64
    poch_signs, poch_logs = pochhammer_log_table(b, cap)
    total: SignedLog = _ZERO
    prev_log = math.inf
    small = 0
    for n in range(cfg.max_terms):
        if n > cap:
            cap *= 2
            poch_signs, poch_logs = pochhammer_log_table(b, cap)

        rg_sign, rg_log = log_rgamma(c + n)
        if rg_sign == 0:
            diag = _ZERO
        else:
            # w = 0 keeps only k = 0, z = 0 keeps only k = n
            k_lo = n if z == 0 else 0
            k_hi = 0 if w == 0 else n
            k = np.arange(k_lo, k_hi + 1)
            m = n - k
            with np.errstate(invalid="ignore"):     # 0 * -inf in the masked branch
                logs = (poch_logs[k]
                        + np.where(k > 0, k * log_w, 0.0)
                        + np.where(m > 0, m * log_z, 0.0)
                        - sc.gammaln(k + 1) - sc.gammaln(m + 1))
            signs = poch_signs[k] * sign_w ** k * sign_z ** m
            diag = _add_log(signed_logsumexp(logs, signs), rg_log)
            diag = (diag[0] * rg_sign, diag[1]) if diag[0] else _ZERO

        if diag[0]:
            total = signed_logsumexp([total[1], diag[1]], [total[0], diag[0]])

        negligible = diag[0] == 0 or (
            total[0] != 0 and diag[1] <= math.log(cfg.rel_tol) + total[1] and diag[1] <= prev_log
        )
        if negligible and n > n_min:
            small += 1
            if small >= SMALL_TERMS_IN_A_ROW:
                log.debug(f"Phi3~({b}, {c}; {w}, {z}) converged after {n + 1} anti-diagonals")
                return total
        else:
            small = 0
        prev_log = diag[1]

    raise ConvergenceError(
        f"Phi3~({b}, {c}; {w}, {z}) double series did not converge in {cfg.max_terms} anti-diagonals",
        terms=cfg.max_terms,
        partial=_to_float(total) if total[1] < 709 else math.inf,
    )


def phi3_tilde_series_log(args: Phi3Args, cfg: EvalConfig | None = None) -> SignedLog:
    """(sign, log|Phi3~|) from the double series, with the w = 0 / z = 0 closed forms."""
    cfg = cfg or EvalConfig()
    b, c, w, z = args.b, args.c, args.w, args.z

    if w == 0 and z == 0:
        return log_rgamma(c)
    if w == 0 and z > 0 and (c >= 1 or float(c).is_integer()):
        return _bessel_closed_form_log(c, z)
    if z == 0:
        return reg_confluent_1f1_log(b, c, w, cfg)
    return _double_series_log(b, c, w, z, cfg)


def phi3_tilde_series(args: Phi3Args, cfg: EvalConfig | None = None) -> float:
    return _to_float(phi3_tilde_series_log(args, cfg))


def phi3_series(args: Phi3Args, cfg: EvalConfig | None = None) -> float:
    """Unregularized Phi3 = Gamma(c) * Phi3~; undefined for c = 0, -1, -2, ..."""
    if is_nonpositive_integer(args.c):
        raise DomainError(f"Phi3 does not exist for nonpositive integer c, got c={args.c}")
    sign, lg = phi3_tilde_series_log(args, cfg)
    if sign == 0:
        return 0.0
    return _to_float((sign * int(sc.gammasgn(args.c)), lg + float(sc.gammaln(args.c))))


# --------------------------------------------------
# A_i coefficient polynomials
# --------------------------------------------------
@dataclass(frozen=True)
class CoeffPolynomial:
    """
    A_i(b, c; z) = sum_k coefficients[k] z^k, k = 0..floor(i/2).

    coefficients holds (sign, log|coef|); exact holds the rational values
    when b and c are integers.
    """

    b: int
    c: float
    i: int
    coefficients: tuple[SignedLog, ...]
    exact: tuple[Fraction, ...] | None = None

    @property
    def degree(self) -> int:
        return self.i // 2

    def evaluate_log(self, z: float) -> SignedLog:
        if z == 0:
            return self.coefficients[0]
        log_z = math.log(abs(z))
        sign_z = -1 if z < 0 else 1
        logs = [lg + k * log_z for k, (_, lg) in enumerate(self.coefficients)]
        signs = [s * sign_z ** k for k, (s, _) in enumerate(self.coefficients)]
        return signed_logsumexp(logs, signs)

    def evaluate(self, z: float) -> float:
        return _to_float(self.evaluate_log(z))


def _int_poch(t: int, r: int) -> int:
    return math.prod(t + j for j in range(r))


def _fraction_to_signed_log(q: Fraction) -> SignedLog:
    if q == 0:
        return _ZERO
    # math.log accepts arbitrary-size ints
    return (1 if q > 0 else -1), math.log(abs(q.numerator)) - math.log(q.denominator)


@lru_cache(maxsize=4096)
def _exact_coefficients(b: int, c: int, i: int) -> tuple[Fraction, ...]:
    out = []
    for k in range(i // 2 + 1):
        numerator = (-1) ** (b - 1 + k) * _int_poch(b - i + k, i - k) * _int_poch(c - i - 1 + k, i - 2 * k)
        denominator = math.factorial(b - 1) * math.factorial(i - 2 * k) * math.factorial(k)
        out.append(Fraction(numerator, denominator))
    return tuple(out)


def _log_coefficients(b: int, c: float, i: int) -> tuple[SignedLog, ...]:
    out = []
    for k in range(i // 2 + 1):
        s1, l1 = pochhammer_log(b - i + k, i - k)
        s2, l2 = pochhammer_log(c - i - 1 + k, i - 2 * k)
        sign = (-1) ** (b - 1 + k) * s1 * s2
        if sign == 0:
            out.append(_ZERO)
            continue
        lg = l1 + l2 - math.lgamma(b) - math.lgamma(i - 2 * k + 1) - math.lgamma(k + 1)
        out.append((sign, lg))
    return tuple(out)


def coeff_polynomial(b: int, c: float, i: int) -> CoeffPolynomial:
    if not (float(b).is_integer() and b >= 1):
        raise DomainError(f"coeff_polynomial needs a positive integer b, got b={b}")
    b = int(b)
    if not 0 <= i <= 2 * (b - 1):
        raise IndexError(f"A_i index i={i} out of range 0..{2 * (b - 1)} for b={b}")
    if float(c).is_integer():
        exact = _exact_coefficients(b, int(c), int(i))
        return CoeffPolynomial(b, int(c), int(i), tuple(_fraction_to_signed_log(q) for q in exact), exact)
    return CoeffPolynomial(b, c, int(i), _log_coefficients(b, c, int(i)))


def recursion_weights(b: int, c: float, w: float, z: float) -> list[SignedLog]:
    """alpha_i = (z/w)^(b-1) z^(-i) A_i(b, c; z), i = 0..2(b-1); needs w, z != 0."""
    if w == 0 or z == 0:
        raise DomainError(f"recursion weights need w != 0 and z != 0, got w={w}, z={z}")
    b = int(b)
    log_w, log_z = math.log(abs(w)), math.log(abs(z))
    sign_w = -1 if w < 0 else 1
    sign_z = -1 if z < 0 else 1
    weights = []
    for i in range(2 * (b - 1) + 1):
        a_sign, a_log = coeff_polynomial(b, c, i).evaluate_log(z)
        if a_sign == 0:
            weights.append(_ZERO)
            continue
        sign = a_sign * (sign_z * sign_w) ** (b - 1) * sign_z ** i
        weights.append((sign, a_log + (b - 1) * (log_z - log_w) - i * log_z))
    return weights


# --------------------------------------------------
# Recursive path
# --------------------------------------------------
def _check_recursive_args(args: Phi3Args, who: str):
    if not args.integer_b:
        raise DomainError(f"{who} needs a positive integer b, got b={args.b}")
    if args.w == 0:
        raise DomainError(f"{who} needs w != 0")


def phi3_tilde_recursive(args: Phi3Args, cfg: EvalConfig | None = None) -> float:
    cfg = cfg or EvalConfig()
    _check_recursive_args(args, "phi3_tilde_recursive")
    if args.z == 0:
        return phi3_tilde_series(args, cfg)

    weights = recursion_weights(int(args.b), args.c, args.w, args.z)
    logs, signs = [], []
    for i, (ws, wl) in enumerate(weights):
        if ws == 0:
            continue
        s, lg = phi3_tilde_series_log(Phi3Args(1, args.c - i, args.w, args.z), cfg)
        logs.append(wl + lg)
        signs.append(ws * s)
    return _to_float(signed_logsumexp(logs, signs))


def phi3_tilde_one_step(args: Phi3Args, cfg: EvalConfig | None = None) -> float:
    """
    Lowers b by one:
    Phi3~(b,c) = [Phi3~(b-1,c-2) - (c-2) Phi3~(b-1,c-1) - z Phi3~(b-1,c)] / ((b-1) w)
    """
    cfg = cfg or EvalConfig()
    b, c, w, z = args.b, args.c, args.w, args.z
    if not b >= 2:
        raise DomainError(f"phi3_tilde_one_step needs b >= 2, got b={b}")
    if w == 0:
        raise DomainError("phi3_tilde_one_step needs w != 0")
    lower = [phi3_tilde_series(Phi3Args(b - 1, c - shift, w, z), cfg) for shift in (2, 1, 0)]
    return (lower[0] - (c - 2) * lower[1] - z * lower[2]) / ((b - 1) * w)


# --------------------------------------------------
# Marcum-Q path
# --------------------------------------------------
def phi3_tilde_via_marcum_log(args: Phi3Args, cfg: EvalConfig | None = None) -> SignedLog:
    """
    sum_i (z/w)^(b-1) A_i(b,c;z) / (w^(c-i-1) z^i) * exp(w + z/w) * Q_{2-c+i}(sqrt(2w), sqrt(2z/w))

    Restricted to integer b > 0, integer c and w, z > 0 (real Marcum arguments).
    """
    cfg = cfg or EvalConfig()
    if not args.integer_b:
        raise DomainError(f"Marcum path needs a positive integer b, got b={args.b}")
    if not args.integer_c:
        raise DomainError(f"Marcum path needs an integer c, got c={args.c}")
    if not (args.w > 0 and args.z > 0):
        raise DomainError(f"Marcum path needs w > 0 and z > 0, got w={args.w}, z={args.z}")

    b, c, w, z = int(args.b), int(args.c), float(args.w), float(args.z)
    log_w = math.log(w)
    exp_arg = w + z / w
    marcum_a, marcum_b = math.sqrt(2.0 * w), math.sqrt(2.0 * z / w)

    logs, signs = [], []
    for i, (ws, wl) in enumerate(recursion_weights(b, c, w, z)):
        if ws == 0:
            continue
        q = marcum_q(MarcumArgs(2 - c + i, marcum_a, marcum_b), cfg)
        if q <= 0:
            continue
        power = c - i - 1
        w_part = 0.0 if power == 0 else -power * log_w
        logs.append(wl + w_part + exp_arg + math.log(q))
        signs.append(ws)
    return signed_logsumexp(logs, signs)


def phi3_tilde_via_marcum(args: Phi3Args, cfg: EvalConfig | None = None) -> float:
    return _to_float(phi3_tilde_via_marcum_log(args, cfg))
