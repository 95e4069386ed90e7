"""Acceptance criteria, one test per criterion.

Each test records a single ``criterion N: PASS|FAIL ...`` line. The lines
are printed in the pytest terminal summary and, when this file is run as
a script, on stdout.
"""

import json
import math
import pathlib
import statistics
import subprocess
import sys
import time

import numpy as np
import pytest

from betaroc.analysis import (empirical_auc, empirical_roc, extremal_analysis, roc_slope,
                              theoretical_auc)
from betaroc.beta import BetaPair, BetaParams, CoarseShape, FineShape, classify_shape, sample
from betaroc.fitting import FitConfig, fit_mle, log_likelihood
from betaroc.reference_fits import (COLUMNS, IMPOSTER_ROWS, ROWS, reference_pairs,
                                    reference_params)
from betaroc.special import digamma, log_gamma, reg_inc_beta, trigamma

import conftest
from oracles import monte_carlo_auc, numeric_roc_slope

DATA = pathlib.Path(__file__).parent / "data"


def verdict(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    conftest.ACCEPTANCE[number] = line
    print(line)
    assert ok, line


def test_criterion_01_reference_shapes():
    start = time.perf_counter()
    problems = []
    for col in COLUMNS:
        for row in ROWS:
            s = classify_shape(reference_params(row, col))
            if s.coarse not in (CoarseShape.U, CoarseShape.J_FAMILY):
                problems.append(f"{col}/{row} is {s.fine.value}")
            if row == "client":
                want = CoarseShape.U if col.endswith("cross") else CoarseShape.J_FAMILY
                if s.coarse is not want:
                    problems.append(f"{col}/client is {s.coarse.value}, expected {want.value}")
            else:
                u_expected = col == "slr-cross" and row in ("imp5", "imp50")
                want = FineShape.U if u_expected else FineShape.J
                if s.fine is not want:
                    problems.append(f"{col}/{row} is {s.fine.value}, expected {want.value}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 1.0
    verdict(1, ok, f"20 reference shapes, {len(problems)} mismatches, {elapsed * 1e3:.1f} ms"
            + (f" ({'; '.join(problems)})" if problems else ""))


def test_criterion_02_reference_extremal_pattern():
    problems = []
    for (col, row), pair in reference_pairs():
        e = extremal_analysis(pair)
        want0 = not (col == "slr-cross" and row in ("imp0", "imp1"))
        if not e.above_diagonal_near_1:
            problems.append(f"{col}/{row} below diagonal near 1")
        if e.above_diagonal_near_0 != want0:
            problems.append(f"{col}/{row} near 0: got {e.above_diagonal_near_0}")
    verdict(2, not problems, f"16 reference pairs, {len(problems)} mismatches"
            + (f" ({'; '.join(problems)})" if problems else ""))


def test_criterion_03_imposter_alpha_strictly_decreasing():
    problems = []
    for col in COLUMNS:
        alphas = [reference_params(row, col).alpha for row in IMPOSTER_ROWS]
        for (r0, a0), (r1, a1) in zip(zip(IMPOSTER_ROWS, alphas), zip(IMPOSTER_ROWS[1:], alphas[1:])):
            if not a1 < a0:
                problems.append(f"{col}: {r0}={a0} -> {r1}={a1}")
    verdict(3, not problems, "imposter alpha strictly decreasing down every column"
            + (f"; violations: {'; '.join(problems)}" if problems else ""))


def test_criterion_04_mle_recovery():
    rng = np.random.default_rng(2024)
    truths = rng.uniform(0.1, 20.0, size=(50, 2))
    start = time.perf_counter()
    good = 0
    for k, (a, b) in enumerate(truths):
        fit = fit_mle(sample(BetaParams(a, b), 50_000, 1000 + k), FitConfig())
        good += abs(fit.alpha / a - 1) < 0.05 and abs(fit.beta / b - 1) < 0.05
    elapsed = time.perf_counter() - start
    verdict(4, good >= 48 and elapsed < 60.0,
            f"{good}/50 fits within 5% (need 48), {elapsed:.1f} s total")


def test_criterion_05_grid_oracle(fifty_point):
    eps = fifty_point["clamp_epsilon"]
    worst = math.inf
    for d in fifty_point["datasets"]:
        fit = fit_mle(d["sample"], FitConfig(clamp_epsilon=eps))
        worst = min(worst, fit.log_likelihood - d["grid_loglik"])
    verdict(5, worst >= -1e-4, f"min(l_fit - l_grid) over 10 datasets = {worst:.3e} (need >= -1e-4)")


def test_criterion_06_slope_vs_finite_differences():
    # Shapes are kept in (0.2, 5) so the slope stays within the range where
    # an absolute tolerance on a finite-difference oracle is meaningful.
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(20):
        pair = BetaPair.from_values(*rng.uniform(0.2, 5.0, 4))
        for x in rng.uniform(0.0, 1.0, 100):
            worst = max(worst, abs(roc_slope(pair, x) - numeric_roc_slope(pair, x)))
    verdict(6, worst <= 1e-4, f"max |slope - FD| over 20 pairs x 100 points = {worst:.2e}")


def test_criterion_07_auc_consistency():
    rng = np.random.default_rng(7)
    worst_mc = 0.0
    for k in range(10):
        pair = BetaPair.from_values(*rng.uniform(0.1, 20.0, 4))
        worst_mc = max(worst_mc, abs(theoretical_auc(pair) - monte_carlo_auc(pair, 1_000_000, 500 + k)))
    worst_trap = 0.0
    for _ in range(100):
        c = np.round(rng.uniform(size=rng.integers(1, 40)), 2)
        i = np.round(rng.uniform(size=rng.integers(1, 40)), 2)
        worst_trap = max(worst_trap, abs(empirical_roc(c, i).area() - empirical_auc(c, i)))
    verdict(7, worst_mc <= 0.003 and worst_trap <= 1e-12,
            f"max |quad - MC| = {worst_mc:.2e} (<= 3e-3), max |trapezoid - AUC| = {worst_trap:.1e}")


def test_criterion_08_special_functions():
    from scipy import integrate

    g = 0.5772156649015329
    checks = [
        (log_gamma(1.0), 0.0, 1e-12),
        (log_gamma(0.5), 0.5 * math.log(math.pi), 1e-12),
        (log_gamma(5.0), math.log(24.0), 1e-12),
        (digamma(1.0), -g, 1e-10),
        (digamma(2.0), 1.0 - g, 1e-10),
        (digamma(0.5), -g - 2 * math.log(2.0), 1e-10),
        (trigamma(1.0), math.pi ** 2 / 6, 1e-8),
        (trigamma(0.5), math.pi ** 2 / 2, 1e-8),
        (trigamma(2.0), math.pi ** 2 / 6 - 1, 1e-8),
        (reg_inc_beta(0.3, 1, 1), 0.3, 1e-10 * 0.3),
        (reg_inc_beta(0.25, 2, 1), 0.0625, 1e-10 * 0.0625),
        (reg_inc_beta(0.5, 3.7, 3.7), 0.5, 1e-10 * 0.5),
    ]
    a, b = 0.47, 0.36
    norm = math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))
    quad = integrate.quad(lambda t: t ** (a - 1) * (1 - t) ** (b - 1), 0.0, 0.4,
                          epsabs=1e-14, epsrel=1e-13, limit=200)[0] / norm
    checks.append((reg_inc_beta(0.4, a, b), quad, 1e-9))
    failures = sum(abs(got - want) > tol for got, want, tol in checks)

    rng = np.random.default_rng(8)
    worst_reflect = 0.0
    for x, a, b in zip(rng.uniform(0, 1, 1000), rng.uniform(0.1, 20, 1000), rng.uniform(0.1, 20, 1000)):
        worst_reflect = max(worst_reflect, abs(reg_inc_beta(x, a, b) - (1 - reg_inc_beta(1 - x, b, a))))
    verdict(8, failures == 0 and worst_reflect <= 1e-12,
            f"{len(checks) - failures}/{len(checks)} reference values, "
            f"max reflection error {worst_reflect:.1e} over 1000 triples")


def test_criterion_09_fit_speed():
    x = sample(BetaParams(2.0, 5.0), 1000, 9)
    fit_mle(x)
    times = []
    for _ in range(20):
        t0 = time.perf_counter()
        fit_mle(x)
        times.append(time.perf_counter() - t0)
    med = statistics.median(times)
    verdict(9, med < 0.050, f"median fit time for 1000 responses {med * 1e3:.2f} ms (< 50 ms)")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "betaroc.cli", *argv],
                          capture_output=True, check=True).stdout


def test_criterion_10_determinism(tmp_path):
    scores = tmp_path / "scores.csv"
    scores.write_bytes(_cli("synth", "--reference", "slr-cross:imp1", "--n-client", "5000",
                            "--n-imposter", "5000", "--seed", "10"))
    analyze = [_cli("analyze", str(scores), "--thresholds", "0.2,0.5,0.8") for _ in range(2)]
    sweep_args = ("sweep", "--alpha1", "0.3,1.5", "--beta1", "0.5:1.5:0.5", "--alpha2", "0.4,3",
                  "--beta2", "2", "--seed", "10", "--n-per-cell", "2000")
    sweep = [_cli(*sweep_args) for _ in range(2)]
    ok = analyze[0] == analyze[1] and sweep[0] == sweep[1] and json.loads(analyze[0])
    verdict(10, bool(ok), f"analyze identical: {analyze[0] == analyze[1]}, "
            f"sweep identical: {sweep[0] == sweep[1]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
