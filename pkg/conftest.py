'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.
'''
import numpy as np
import pytest
from loguru import logger

from Core.config import EvalConfig
from Distributions.wishart import WishartModel

FAST_SAMPLES = 100_000


@pytest.fixture(autouse=True)
def _quiet_logging():
    # no sinks during tests
    logger.remove()
    yield


@pytest.fixture
def cfg() -> EvalConfig:
    return EvalConfig()


@pytest.fixture
def fast_cfg() -> EvalConfig:
    return EvalConfig(mc_samples=FAST_SAMPLES)


@pytest.fixture
def wishart_models(cfg):
    rng = np.random.default_rng(cfg.seed)
    return [WishartModel.random(m, rng) for m in (2, 2, 3, 3)]
