import pytest

from Core.config import DEFAULT_SEED, MAX_QUAD_PANELS, EvalConfig
from Core.errors import (
    EXIT_CONVERGENCE,
    EXIT_DOMAIN,
    EXIT_USAGE,
    ConvergenceError,
    DomainError,
    LinearAlgebraError,
    QuadratureError,
    UsageError,
    exit_code_for,
)


def test_defaults():
    cfg = EvalConfig()
    assert cfg.rel_tol == 1e-12
    assert cfg.abs_tol == 1e-300
    assert cfg.max_terms == 10000
    assert cfg.quad_points == 2048
    assert cfg.mc_samples == 1_000_000
    assert cfg.seed == DEFAULT_SEED


@pytest.mark.parametrize("field, value", [
    ("rel_tol", 0.0),
    ("abs_tol", -1.0),
    ("max_terms", 0),
    ("quad_points", MAX_QUAD_PANELS + 1),
    ("mc_samples", 0),
    ("seed", -1),
    ("seed", 2 ** 64),
])
def test_invalid_fields(field, value):
    with pytest.raises(DomainError):
        EvalConfig(**{field: value})


def test_with_overrides_ignores_none():
    cfg = EvalConfig().with_overrides(rel_tol=1e-10, seed=None)
    assert cfg.rel_tol == 1e-10
    assert cfg.seed == DEFAULT_SEED


def test_preset_round_trip(tmp_path):
    cfg = EvalConfig(rel_tol=1e-11, seed=42, mc_samples=5000)
    path = tmp_path / "preset.json"
    cfg.save_preset(path)
    assert EvalConfig.from_preset(path) == cfg


@pytest.mark.parametrize("exc, code", [
    (DomainError("x"), EXIT_DOMAIN),
    (LinearAlgebraError("x"), EXIT_DOMAIN),
    (ConvergenceError("x"), EXIT_CONVERGENCE),
    (QuadratureError("x"), EXIT_CONVERGENCE),
    (IndexError("x"), EXIT_DOMAIN),
    (UsageError("x"), EXIT_USAGE),
])
def test_exit_codes(exc, code):
    assert exit_code_for(exc) == code


def test_domain_error_is_value_error():
    assert issubclass(DomainError, ValueError)
    assert issubclass(ConvergenceError, ArithmeticError)
