'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

Verify Pipeline: runs the cross-validation suites behind `main.py verify`.

Every suite walks a fixed grid in a fixed order and appends CheckRecords;
a failing point is recorded and the run continues. Random inputs come from
cfg.seed only, so the same flags always give the same Report.
'''

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger
from scipy import stats
from tqdm import tqdm

from Core.config import EvalConfig
from Core.errors import MarcumPhiError, UsageError
from Core.report import METRIC_ABSOLUTE, METRIC_RELATIVE, CheckRecord, Report
from Distributions.nakagami import NakagamiBivariate, bivariate_nakagami_cdf, bivariate_rayleigh_cdf
from Distributions.wishart import WishartModel, wishart_min_eig_cdf_marcum, wishart_min_eig_cdf_phi3
from Oracles.laplace import laplace_transform_check
from Oracles.quadrature import marcum_quadrature
from Oracles.sampling import (
    McResult,
    empirical_cdf_many,
    sample_bivariate_nakagami,
    sample_moments,
    sample_wishart_min_eig,
    sample_wishart_trace,
)
from Special.marcum import MarcumArgs, marcum_q, marcum_q_via_phi3
from Special.phi3 import (
    Phi3Args,
    phi3_tilde_one_step,
    phi3_tilde_recursive,
    phi3_tilde_series,
    phi3_tilde_via_marcum,
)

log = logger.bind(component="verify")

SUITES = ("marcum-cross", "phi3-paths", "recursion", "laplace", "nakagami-mc", "wishart-mc")

# Acceptance tolerances
PATH_TOL = 1e-8
IDENTITY_TOL = 1e-12
COMPLEMENT_ABS_TOL = 1e-10
ONE_STEP_TOL = 1e-9
LAPLACE_TOL = 1e-6
RAYLEIGH_TOL = 1e-10
CDF_AXIOM_TOL = 1e-9
WISHART_PATH_TOL = 1e-8
CENTRAL_TOL = 1e-9
MC_SE = 3.0
MC_WARN_SE = 2.0
# familywise false-failure rate for one suite's Monte Carlo points
MC_FAMILY_ALPHA = 0.01

MARCUM_ORDERS = tuple(range(-3, 7))
MARCUM_GRID = 7
PHI3_B = (1, 2, 3, 4)
PHI3_C = (-2, -1, 0, 1, 2, 3, 4)
PHI3_WZ = (0.1, 0.5, 1.0, 2.0, 5.0)
LAPLACE_POINTS = (
    # (b, c, x, y, s), s >= 2(x + 1)
    (1, 1.0, 0.0, 0.0, 2.0),
    (1, 2.0, 0.5, 0.0, 4.0),
    (2, 3.0, 0.5, 1.0, 4.0),
    (1, 1.0, 0.25, 0.5, 3.0),
    (2, 1.0, 0.5, 0.5, 4.0),
    (3, 2.0, 0.25, 1.0, 3.0),
    (1, 3.0, 1.0, 0.0, 4.0),
    (2, 2.0, 1.0, 1.0, 5.0),
    (1, 1.5, 0.5, 0.25, 3.5),
    (3, 3.0, 0.5, 2.0, 4.0),
    (4, 2.0, 0.25, 0.5, 3.0),
    (1, 4.0, 0.0, 2.0, 2.0),
)
NAKAGAMI_M = (1, 2, 4)
NAKAGAMI_RHO = (0.1, 0.5, 0.9)
NAKAGAMI_MC_RADII = (0.6, 1.0, 1.4)
AXIOM_RADII = (0.25, 0.6, 0.95, 1.3, 1.65, 2.0)
RAYLEIGH_GRID = 10
WISHART_M = (2, 3)
WISHART_MODELS_PER_M = 2
WISHART_LAMBDAS = (0.1, 0.5, 1.0, 2.0)


@dataclass(frozen=True)
class VerifyContext:
    cfg: EvalConfig
    grid: Optional[int] = None
    workers: int = 1
    progress: bool = False

    def points(self, default: int) -> int:
        return self.grid or default


@dataclass
class SuiteRun:
    suite: str
    records: List[CheckRecord] = field(default_factory=list)

    def check(self, name: str, inputs: Dict, tolerance: float,
              compute: Callable[[], tuple], metric: str = METRIC_RELATIVE) -> CheckRecord:
        """compute() returns (production, oracle); library errors become failed records."""
        try:
            production, oracle = compute()
        except (MarcumPhiError, ArithmeticError, IndexError) as e:
            log.warning(f"[{self.suite}] {name} at {inputs}: {type(e).__name__}: {e}")
            self.records.append(CheckRecord.failed(self.suite, name, inputs, tolerance, e, metric))
            return self.records[-1]
        record = CheckRecord.compare(self.suite, name, inputs, production, oracle, tolerance, metric)
        if not record.passed:
            log.warning(f"[{self.suite}] {name} at {inputs}: error {record.error:.3e} > {tolerance:.0e}")
        self.records.append(record)
        return record


def _floats(values) -> list[float]:
    return [float(v) for v in values]


# --------------------------------------------------
# Special-function suites
# --------------------------------------------------
def _suite_marcum_cross(ctx: VerifyContext) -> SuiteRun:
    run = SuiteRun("marcum-cross")
    cfg = ctx.cfg
    axis = _floats(np.geomspace(0.1, 10.0, ctx.points(MARCUM_GRID)))
    grid = [(m, a, b) for m in MARCUM_ORDERS for a in axis for b in axis]

    for m, a, b in tqdm(grid, desc="marcum-cross", disable=not ctx.progress):
        args = MarcumArgs(m, a, b)
        inputs = {"m": m, "a": a, "b": b}
        # the quadrature oracle needs order >= 1, so m <= 0 checks the companion term
        partner = args if m >= 1 else args.swapped()
        run.check("series-vs-quadrature", {**inputs, "order_checked": partner.m}, PATH_TOL,
                  lambda: (marcum_q(partner, cfg), marcum_quadrature(partner, cfg)))
        run.check("series-vs-phi3-direct", inputs, PATH_TOL,
                  lambda: (marcum_q(args, cfg), marcum_q_via_phi3(args, cfg, form="direct")))
        run.check("series-vs-phi3-complement", inputs, COMPLEMENT_ABS_TOL,
                  lambda: (marcum_q(args, cfg), marcum_q_via_phi3(args, cfg, form="complement")),
                  metric=METRIC_ABSOLUTE)
        run.check("complement-identity", inputs, IDENTITY_TOL,
                  lambda: (marcum_q(args, cfg) + marcum_q(args.swapped(), cfg), 1.0),
                  metric=METRIC_ABSOLUTE)
    return run


def _phi3_grid():
    return [(b, c, w, z) for b in PHI3_B for c in PHI3_C for w in PHI3_WZ for z in PHI3_WZ]


def _suite_phi3_paths(ctx: VerifyContext) -> SuiteRun:
    run = SuiteRun("phi3-paths")
    cfg = ctx.cfg
    for b, c, w, z in tqdm(_phi3_grid(), desc="phi3-paths", disable=not ctx.progress):
        args = Phi3Args(b, c, w, z)
        inputs = {"b": b, "c": c, "w": w, "z": z}
        run.check("marcum-vs-series", inputs, PATH_TOL,
                  lambda: (phi3_tilde_via_marcum(args, cfg), phi3_tilde_series(args, cfg)))
        run.check("recursive-vs-series", inputs, PATH_TOL,
                  lambda: (phi3_tilde_recursive(args, cfg), phi3_tilde_series(args, cfg)))
    return run


def _suite_recursion(ctx: VerifyContext) -> SuiteRun:
    run = SuiteRun("recursion")
    cfg = ctx.cfg
    grid = [p for p in _phi3_grid() if p[0] >= 2]
    for b, c, w, z in tqdm(grid, desc="recursion", disable=not ctx.progress):
        args = Phi3Args(b, c, w, z)
        run.check("one-step-vs-series", {"b": b, "c": c, "w": w, "z": z}, ONE_STEP_TOL,
                  lambda: (phi3_tilde_one_step(args, cfg), phi3_tilde_series(args, cfg)))
    return run


def _suite_laplace(ctx: VerifyContext) -> SuiteRun:
    run = SuiteRun("laplace")
    for b, c, x, y, s in tqdm(LAPLACE_POINTS, desc="laplace", disable=not ctx.progress):
        run.check("quadrature-vs-closed-form", {"b": b, "c": c, "x": x, "y": y, "s": s}, LAPLACE_TOL,
                  lambda: laplace_transform_check(b, c, x, y, s, ctx.cfg))
    return run


# --------------------------------------------------
# Distribution suites
# --------------------------------------------------
def monte_carlo_band(points: int) -> float:
    """Standard errors per point so `points` comparisons together stay within MC_FAMILY_ALPHA."""
    return max(MC_SE, float(stats.norm.isf(MC_FAMILY_ALPHA / (2 * points))))


def allowed_outside(points: int) -> int:
    """Points that may sit outside MC_SE before the suite is suspect."""
    return int(stats.binom.isf(MC_FAMILY_ALPHA, points, 2 * stats.norm.sf(MC_SE)))


@dataclass
class MonteCarloTally:
    run: SuiteRun
    points: int
    outside: int = 0

    @property
    def band(self) -> float:
        return monte_carlo_band(self.points)

    def check(self, inputs: Dict, closed_form: Callable[[], float], mc: McResult):
        record = self.run.check("cdf-vs-monte-carlo", inputs, mc.tolerance(self.band),
                                lambda: (closed_form(), mc.estimate), metric=METRIC_ABSOLUTE)
        deviation = math.inf if record.abs_error is None else record.abs_error / mc.tolerance(1.0)
        if deviation > MC_SE:
            self.outside += 1
        if record.passed and deviation > MC_WARN_SE:
            log.warning(f"[{self.run.suite}] Monte Carlo at {inputs} is {deviation:.2f} SE from the closed form")

    def finish(self):
        self.run.check("monte-carlo-outside-3se", {"points": self.points}, float(allowed_outside(self.points)),
                       lambda: (float(self.outside), 0.0), metric=METRIC_ABSOLUTE)


def _min_increment(values: np.ndarray) -> float:
    """Smallest forward difference along both axes and smallest rectangle mass."""
    steps = [np.diff(values, axis=0).min(), np.diff(values, axis=1).min(),
             np.diff(np.diff(values, axis=0), axis=1).min()]
    return float(min(0.0, *steps))


def _suite_nakagami_mc(ctx: VerifyContext) -> SuiteRun:
    run = SuiteRun("nakagami-mc")
    cfg = ctx.cfg

    # m = 1 reduces to the Rayleigh closed form
    radii = _floats(np.linspace(0.2, 2.0, ctx.points(RAYLEIGH_GRID)))
    rayleigh = [(rho, r1, r2) for rho in NAKAGAMI_RHO for r1 in radii for r2 in radii]
    for rho, r1, r2 in tqdm(rayleigh, desc="nakagami-rayleigh", disable=not ctx.progress):
        model = NakagamiBivariate(1, 1.0, 1.0, rho)
        run.check("m1-vs-rayleigh", {"rho": rho, "r1": r1, "r2": r2}, RAYLEIGH_TOL,
                  lambda: (bivariate_nakagami_cdf(model, r1, r2, cfg), bivariate_rayleigh_cdf(rho, r1, r2, cfg)),
                  metric=METRIC_ABSOLUTE)

    cases = [(m, rho) for m in NAKAGAMI_M for rho in NAKAGAMI_RHO]
    points = [(r1, r2) for r1 in NAKAGAMI_MC_RADII for r2 in NAKAGAMI_MC_RADII]
    tally = MonteCarloTally(run, len(cases) * len(points))
    for index, (m, rho) in enumerate(tqdm(cases, desc="nakagami-mc", disable=not ctx.progress)):
        model = NakagamiBivariate(m, 1.0, 1.0, rho)
        base = {"m": m, "rho": rho}

        def axiom_values():
            values = np.array([[bivariate_nakagami_cdf(model, r1, r2, cfg) for r2 in AXIOM_RADII]
                               for r1 in AXIOM_RADII])
            return _min_increment(values), 0.0

        run.check("cdf-monotone-rectangle", {**base, "radii": list(AXIOM_RADII)}, CDF_AXIOM_TOL,
                  axiom_values, metric=METRIC_ABSOLUTE)

        seed = cfg.seed + index
        stream = sample_bivariate_nakagami(model, cfg.mc_samples, seed)
        n = stream.samples
        mean, cov = sample_moments(stream, ctx.workers, transform=lambda batch: batch ** 2)
        corr = float(cov[0, 1] / math.sqrt(cov[0, 0] * cov[1, 1]))
        sanity = {**base, "seed": seed, "samples": n}
        run.check("sampler-unit-power-r1", sanity, 3.0 / math.sqrt(n), lambda: (float(mean[0]), 1.0),
                  metric=METRIC_ABSOLUTE)
        run.check("sampler-unit-power-r2", sanity, 3.0 / math.sqrt(n), lambda: (float(mean[1]), 1.0),
                  metric=METRIC_ABSOLUTE)
        run.check("sampler-power-correlation", sanity, 5.0 / math.sqrt(n), lambda: (corr, rho),
                  metric=METRIC_ABSOLUTE)

        estimates = empirical_cdf_many(stream, points, ctx.workers)
        for (r1, r2), mc in zip(points, estimates):
            tally.check({**sanity, "r1": r1, "r2": r2}, lambda: bivariate_nakagami_cdf(model, r1, r2, cfg), mc)
    tally.finish()
    return run


def _suite_wishart_mc(ctx: VerifyContext) -> SuiteRun:
    run = SuiteRun("wishart-mc")
    cfg = ctx.cfg
    rng = np.random.default_rng(cfg.seed)
    models = [(m, j, WishartModel.random(m, rng)) for m in WISHART_M for j in range(WISHART_MODELS_PER_M)]
    tally = MonteCarloTally(run, len(models) * len(WISHART_LAMBDAS))

    for index, (m, j, model) in enumerate(tqdm(models, desc="wishart-mc", disable=not ctx.progress)):
        base = {"m": m, "model": j, "eta": model.eta, "mu": model.mu, "trace_sigma_inv": model.trace_sigma_inv}
        for lam in WISHART_LAMBDAS:
            run.check("phi3-vs-marcum", {**base, "lambda": lam}, WISHART_PATH_TOL,
                      lambda: (wishart_min_eig_cdf_marcum(model, lam, cfg), wishart_min_eig_cdf_phi3(model, lam, cfg)))

        def lambda_monotone():
            values = [wishart_min_eig_cdf_marcum(model, lam, cfg) for lam in WISHART_LAMBDAS]
            return float(min(0.0, *np.diff(values))), 0.0

        run.check("cdf-monotone", {**base, "lambdas": list(WISHART_LAMBDAS)}, CDF_AXIOM_TOL,
                  lambda_monotone, metric=METRIC_ABSOLUTE)

        seed = cfg.seed + 1000 + index
        sanity = {**base, "seed": seed, "samples": cfg.mc_samples}
        trace_stream = sample_wishart_trace(model, cfg.mc_samples, seed)
        mean, cov = sample_moments(trace_stream, ctx.workers)
        expected = float(np.sum(np.abs(model.upsilon) ** 2) + m * np.trace(model.sigma).real)
        run.check("sampler-trace-mean", sanity, 5.0 * math.sqrt(float(cov[0, 0]) / trace_stream.samples),
                  lambda: (float(mean[0]), expected), metric=METRIC_ABSOLUTE)

        stream = sample_wishart_min_eig(model, cfg.mc_samples, seed)
        estimates = empirical_cdf_many(stream, WISHART_LAMBDAS, ctx.workers)
        for lam, mc in zip(WISHART_LAMBDAS, estimates):
            tally.check({**sanity, "lambda": lam}, lambda: wishart_min_eig_cdf_marcum(model, lam, cfg), mc)
    tally.finish()

    # eta = 0, Sigma = I: F(lambda) = 1 - exp(-lambda m)
    for m in WISHART_M:
        central = WishartModel(np.eye(m, dtype=complex), np.zeros((m, m), dtype=complex))
        for lam in WISHART_LAMBDAS:
            run.check("central-closed-form", {"m": m, "lambda": lam}, CENTRAL_TOL,
                      lambda: (wishart_min_eig_cdf_phi3(central, lam, cfg), -math.expm1(-lam * m)),
                      metric=METRIC_ABSOLUTE)
    return run


SUITE_RUNNERS: Dict[str, Callable[[VerifyContext], SuiteRun]] = {
    "marcum-cross": _suite_marcum_cross,
    "phi3-paths": _suite_phi3_paths,
    "recursion": _suite_recursion,
    "laplace": _suite_laplace,
    "nakagami-mc": _suite_nakagami_mc,
    "wishart-mc": _suite_wishart_mc,
}


def resolve_suites(requested: Sequence[str]) -> list[str]:
    """Canonical order, duplicates dropped; empty means every suite."""
    unknown = [s for s in requested if s not in SUITE_RUNNERS]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    wanted = set(requested) or set(SUITES)
    return [s for s in SUITES if s in wanted]


def verify_runner(
    suites: Sequence[str],
    cfg: EvalConfig,
    grid: Optional[int] = None,
    workers: int = 1,
    progress: bool = False,
    report: Optional[Callable[[int, str], None]] = None,
) -> Report:
    """Runs the suites in canonical order and assembles one Report."""

    def emit(percent: int, message: str):
        if report:
            try:
                report(percent, message)
                return
            except Exception as e:
                log.warning(f"Report callback failed: {e}")
        log.info(message)

    names = resolve_suites(suites)
    ctx = VerifyContext(cfg, grid, max(1, int(workers)), progress)
    config = {**cfg.to_dict(), "grid": grid, "suites": names}
    result = Report(suite=",".join(names), config=config)

    emit(0, f"Running {len(names)} suite(s): {', '.join(names)}")
    for idx, name in enumerate(names, start=1):
        run = SUITE_RUNNERS[name](ctx)
        result.checks.extend(run.records)
        failed = sum(1 for r in run.records if not r.passed)
        mark = "✓" if failed == 0 else "✗"
        emit(int(idx / len(names) * 100), f"[{idx}/{len(names)}] {mark} {name}: {len(run.records) - failed}/{len(run.records)} passed")

    summary = result.summary
    emit(100, f"Verification complete: {summary['passed']}/{summary['total']} passed")
    return result
