'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

Eval Bridge: converts CLI key=value parameters into library calls.
Shared by the `eval` and `table` commands.
'''

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

from Core.config import EvalConfig
from Core.errors import DomainError, UsageError
from Distributions.nakagami import (
    NakagamiBivariate,
    bivariate_nakagami_cdf,
    bivariate_rayleigh_cdf,
)
from Distributions.wishart import (
    WishartModel,
    WishartScalars,
    wishart_min_eig_cdf_marcum,
    wishart_min_eig_cdf_phi3,
)
from Oracles.quadrature import marcum_quadrature
from Special.marcum import MarcumArgs, marcum_q, marcum_q_via_phi3
from Special.phi3 import (
    Phi3Args,
    phi3_series,
    phi3_tilde_recursive,
    phi3_tilde_series,
    phi3_tilde_via_marcum,
)


@dataclass(frozen=True)
class FunctionSpec:
    required: Tuple[str, ...]
    optional: Dict[str, Any]
    evaluate: Callable[[Dict[str, Any], EvalConfig], float]


# --------------------------------------------------
# Evaluators
# --------------------------------------------------
def _as_int(params: Dict[str, Any], name: str) -> int:
    value = params[name]
    if not float(value).is_integer():
        raise DomainError(f"{name} must be an integer, got {value}")
    return int(value)


def _eval_marcum(p: Dict[str, Any], cfg: EvalConfig) -> float:
    args = MarcumArgs(_as_int(p, "m"), p["a"], p["b"])
    path = p["path"]
    if path == "series":
        return marcum_q(args, cfg)
    if path in ("phi3", "complement"):
        return marcum_q_via_phi3(args, cfg, form="complement")
    if path == "direct":
        return marcum_q_via_phi3(args, cfg, form="direct")
    if path == "quadrature":
        return marcum_quadrature(args, cfg)
    raise UsageError(f"unknown marcum path: {path}")


def _eval_phi3(p: Dict[str, Any], cfg: EvalConfig) -> float:
    return phi3_series(Phi3Args(p["b"], p["c"], p["w"], p["z"]), cfg)


def _eval_phi3_tilde(p: Dict[str, Any], cfg: EvalConfig) -> float:
    args = Phi3Args(p["b"], p["c"], p["w"], p["z"])
    path = p["path"]
    if path == "series":
        return phi3_tilde_series(args, cfg)
    if path == "recursive":
        return phi3_tilde_recursive(args, cfg)
    if path == "marcum":
        return phi3_tilde_via_marcum(args, cfg)
    raise UsageError(f"unknown phi3-tilde path: {path}")


def _eval_nakagami(p: Dict[str, Any], cfg: EvalConfig) -> float:
    model = NakagamiBivariate(_as_int(p, "m"), p["omega1"], p["omega2"], p["rho"])
    return bivariate_nakagami_cdf(model, p["r1"], p["r2"], cfg)


def _eval_rayleigh(p: Dict[str, Any], cfg: EvalConfig) -> float:
    return bivariate_rayleigh_cdf(p["rho"], p["r1"], p["r2"], cfg)


def wishart_params_model(p: Dict[str, Any]):
    m = _as_int(p, "m")
    scalars = [p.get(k) for k in ("eta", "mu", "trace_sigma_inv")]
    if all(v is not None for v in scalars):
        return WishartScalars(m, *scalars)
    if p.get("k_factor") is not None:
        return WishartModel.from_line_of_sight(m, k_factor=p["k_factor"])
    raise UsageError("wishart-cdf needs either eta, mu, trace_sigma_inv or k_factor")


def _eval_wishart(p: Dict[str, Any], cfg: EvalConfig) -> float:
    model = wishart_params_model(p)
    path = p["path"]
    if path == "phi3":
        return wishart_min_eig_cdf_phi3(model, p["lambda"], cfg)
    if path == "marcum":
        return wishart_min_eig_cdf_marcum(model, p["lambda"], cfg)
    raise UsageError(f"unknown wishart-cdf path: {path}")


FUNCTIONS: Dict[str, FunctionSpec] = {
    "marcum": FunctionSpec(("m", "a", "b"), {"path": "series"}, _eval_marcum),
    "phi3": FunctionSpec(("b", "c", "w", "z"), {}, _eval_phi3),
    "phi3-tilde": FunctionSpec(("b", "c", "w", "z"), {"path": "series"}, _eval_phi3_tilde),
    "nakagami-cdf": FunctionSpec(("m", "rho", "r1", "r2"), {"omega1": 1.0, "omega2": 1.0}, _eval_nakagami),
    "rayleigh-cdf": FunctionSpec(("rho", "r1", "r2"), {}, _eval_rayleigh),
    "wishart-cdf": FunctionSpec(
        ("m", "lambda"),
        {"eta": None, "mu": None, "trace_sigma_inv": None, "k_factor": None, "path": "marcum"},
        _eval_wishart,
    ),
}

STRING_PARAMS = {"path"}


# --------------------------------------------------
# Parameter handling
# --------------------------------------------------
def parse_value(name: str, text: str) -> Any:
    if name in STRING_PARAMS:
        return text
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"parameter {name} must be a number, got {text!r}") from None


def parse_params(tokens) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for token in tokens:
        if "=" not in token:
            raise UsageError(f"expected key=value, got {token!r}")
        key, text = token.split("=", 1)
        params[key.strip()] = parse_value(key.strip(), text.strip())
    return params


def resolve_params(function: str, params: Dict[str, Any]) -> Dict[str, Any]:
    spec = lookup(function)
    missing = [name for name in spec.required if name not in params]
    if missing:
        raise UsageError(f"{function} is missing parameter(s): {', '.join(missing)}")
    unknown = [name for name in params if name not in spec.required and name not in spec.optional]
    if unknown:
        raise UsageError(f"{function} does not accept parameter(s): {', '.join(unknown)}")
    resolved = dict(spec.optional)
    resolved.update(params)
    return resolved


def lookup(function: str) -> FunctionSpec:
    spec = FUNCTIONS.get(function)
    if spec is None:
        raise UsageError(f"unknown function {function!r}; choose from {', '.join(FUNCTIONS)}")
    return spec


def evaluate(function: str, params: Dict[str, Any], cfg: Optional[EvalConfig] = None) -> float:
    cfg = cfg or EvalConfig()
    resolved = resolve_params(function, params)
    return float(lookup(function).evaluate(resolved, cfg))
