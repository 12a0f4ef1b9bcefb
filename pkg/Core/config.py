'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

config.py
Numeric evaluation settings shared by every package.

EvalConfig is immutable; derive variants with with_overrides().
Identical config + identical inputs must give bit-identical outputs, so
nothing in here reads the clock or the environment.
'''

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from Core.errors import DomainError

DEFAULT_SEED = 20240601
MAX_QUAD_PANELS = 2 ** 15


@dataclass(frozen=True)
class EvalConfig:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-300     # underflow guard
    max_terms: int = 10000
    quad_points: int = 2048
    mc_samples: int = 1_000_000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if not self.abs_tol >= 0:
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if int(self.max_terms) < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        if not 1 <= int(self.quad_points) <= MAX_QUAD_PANELS:
            raise DomainError(f"quad_points must be in [1, {MAX_QUAD_PANELS}], got {self.quad_points}")
        if int(self.mc_samples) < 1:
            raise DomainError(f"mc_samples must be >= 1, got {self.mc_samples}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    # ------------------------------------------------------------------
    # FACTORIES
    # ------------------------------------------------------------------
    def with_overrides(self, **overrides) -> "EvalConfig":
        """Copy with the given fields replaced; None values are ignored."""
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean)

    @classmethod
    def from_preset(cls, preset_path: str | Path) -> "EvalConfig":
        with open(preset_path, "r", encoding="utf-8") as f:
            data = json.load(f)
        return cls(**data)

    # ------------------------------------------------------------------
    # SERIALIZATION
    # ------------------------------------------------------------------
    def to_dict(self) -> dict:
        return asdict(self)

    def save_preset(self, out_path: str | Path):
        with open(out_path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)
