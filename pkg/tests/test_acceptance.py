"""The eleven acceptance criteria at their stated tolerances and budgets.

Each test records one line for the summary printed at the end of the run
(see ``conftest.py``) before asserting.
"""

import random
import time
from fractions import Fraction as F

import pytest

from translates.dyadic import rademacher_moment_exact, rademacher_moment_mc
from translates.experiments import ExperimentConfig, run_experiment
from translates.stepfn import StepFunction, lp_norm_p
from translates.systems import (
    TranslateSystem,
    dilworth_g,
    even_subsequence_sum,
    minimality_distance_sq_l2,
    telescope_base,
    telescope_sum,
)


def run(name, **kw):
    return run_experiment(ExperimentConfig(experiment=name, **kw))


def test_01_alternating_combination_norms(record_acceptance):
    t0 = time.time()
    bad = [(p, n) for p in (1, 2, 3) for n in range(1, 51)
           if lp_norm_p(dilworth_g(n), p) != F(4, n ** p)]
    dt = time.time() - t0
    ok = not bad and dt < 5
    record_acceptance(1, ok, f"||g_n||_p^p == 4/n^p exactly for 150 cases, "
                             f"mismatches={bad[:3]}, {dt:.2f}s")
    assert not bad
    assert dt < 5


def test_02_telescoping_sums(record_acceptance):
    t0 = time.time()
    full_bad, even_bad, claimed = [], [], 0
    for p in (1, 2, 3):
        for n in range(1, 21):
            if lp_norm_p(telescope_sum(n), p) != 2:
                full_bad.append((p, n))
            even = lp_norm_p(even_subsequence_sum(n), p)
            if even != 2 * (2 * n + 1):
                even_bad.append((p, n))
            claimed += even == 2 * n + 2
    dt = time.time() - t0
    ok = not full_bad and not even_bad and dt < 5
    record_acceptance(2, ok, f"full sums == 2, even sums == 2(2n+1); stated 2n+2 matched "
                             f"{claimed}/60 (flagged), {dt:.2f}s")
    assert not full_bad and not even_bad
    assert dt < 5


def test_03_non_minimality_witness(record_acceptance):
    t0 = time.time()
    prev, mono, d2 = None, True, None
    for n in range(1, 51):
        sys = TranslateSystem(telescope_base(), range(-n, n + 1), 2)
        d2 = minimality_distance_sq_l2(sys, n)
        mono = mono and (prev is None or d2 <= prev)
        prev = d2
    dist = float(d2) ** 0.5
    dt = time.time() - t0
    ok = mono and dist < 0.2 and dt < 30
    record_acceptance(3, ok, f"nonincreasing={mono}, dist(n=50)={dist:.4f} "
                             f"(squared {d2}), {dt:.2f}s")
    assert mono and dist < 0.2
    assert dt < 30


def test_04_tail_mass_bound(record_acceptance):
    t0 = time.time()
    res = run("tailmass", trials=100, seed=0)
    dt = time.time() - t0
    exact = all(isinstance(r[5], F) and isinstance(r[6], F) for r in res.rows)
    ok = res.ok and exact and len(res.rows) == 100 and dt < 10
    record_acceptance(4, ok, f"100 instances, bound holds={res.ok}, exact={exact}, {dt:.2f}s")
    assert res.ok and exact and len(res.rows) == 100
    assert dt < 10


def test_05_moment_oracle(record_acceptance):
    t0 = time.time()
    rng = random.Random(20240501)
    bad = 0
    for _ in range(1000):
        k = rng.randint(1, 12)
        c = [F(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(k)]
        s2 = sum(x * x for x in c)
        s4 = sum(x ** 4 for x in c)
        if rademacher_moment_exact(c, 2) != s2:
            bad += 1
        if rademacher_moment_exact(c, 4) != 3 * s2 ** 2 - 2 * s4:
            bad += 1
    c18 = [F(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(18)]
    z = {}
    for p in (3, 4):
        exact = float(rademacher_moment_exact(c18, p))
        mc = rademacher_moment_mc(c18, p, samples=10 ** 5, seed=p)
        z[p] = abs(mc.value - exact) / mc.stderr
    dt = time.time() - t0
    ok = bad == 0 and all(v <= 3 for v in z.values()) and dt < 60
    record_acceptance(5, ok, f"1000 vectors, mismatches={bad}; 18-term Monte Carlo "
                             f"|z| p=3: {z[3]:.2f}, p=4: {z[4]:.2f}; {dt:.2f}s")
    assert bad == 0
    assert all(v <= 3 for v in z.values())
    assert dt < 60


@pytest.mark.slow
def test_06_rademacher_tail_growth(record_acceptance):
    t0 = time.time()
    res = run("ex216", p=3, n=512, N=1024, samples=10 ** 5, seed=0)
    dt = time.time() - t0
    fit = res.report["fit_full_norm"]
    inside = res.report["fit_in_range_windows"]
    beta_ok = 0.85 <= fit["beta"] <= 1.15
    alpha_ok = 1.1 <= fit["alpha"] <= 1.9
    ok = beta_ok and alpha_ok and dt < 300
    record_acceptance(6, ok, f"full-norm fit beta={fit['beta']:.3f} alpha={fit['alpha']:.3f} "
                             f"(in-range windows only: beta={inside['beta']:.3f} "
                             f"alpha={inside['alpha']:.3f}), {dt:.1f}s")
    assert beta_ok, fit
    assert alpha_ok, fit
    assert dt < 300


@pytest.mark.slow
def test_07_telescoping_rademacher_dichotomy(record_acceptance):
    t0 = time.time()
    res = run("ex217", p=5, depth=33, samples=10 ** 5, seed=0)
    dt = time.time() - t0
    lbs = res.report["unconditional_lower_bounds"]
    ratios = [r[6] for r in res.rows]
    ok = res.ok and dt < 120
    record_acceptance(7, ok, f"checks={res.checks}, alt/sqrt(H_n)="
                             f"{[round(r, 3) for r in ratios]}, lower bounds="
                             f"{[round(v, 3) for v in lbs]}, {dt:.1f}s")
    assert res.checks["plain_norm_within_band"]
    assert res.checks["alternating_over_sqrtH_in_window"]
    assert res.checks["unconditional_lb_strictly_increasing"]
    assert dt < 120


@pytest.mark.slow
def test_08_lacunary_block_equivalence(record_acceptance):
    t0 = time.time()
    res = run("thm213", p=5, trials=50, samples=10 ** 5, seed=0)
    dt = time.time() - t0
    rep = res.report
    ok = res.ok and dt < 300
    record_acceptance(8, ok, f"K(coefficients)={rep['K_coefficients']:.3f}, "
                             f"K(blocks)={rep['K_blocks']:.3f} (limit 8), "
                             f"sum eps^5={rep['eps_p_sum_total']}, {dt:.1f}s")
    assert rep["K_coefficients"] <= 8
    assert rep["K_blocks"] <= 8
    assert dt < 300


def test_09_partition_embedding(record_acceptance):
    t0 = time.time()
    res = run("embed", p=1, n=10, epsilon=F(1, 10), trials=100, seed=0,
              base="0 1 1", lambdas=[F(k) for k in range(10)])
    dt = time.time() - t0
    certs = res.report["certificates"]
    exact = all(isinstance(c[key], F) for c in certs for key in ("c21", "c22", "c23"))
    samples = len(res.rows)
    ok = res.ok and exact and samples == 100 and dt < 60
    record_acceptance(9, ok, f"{len(certs)} certificates exact={exact}, ratios in "
                             f"[{res.report['min_ratio']}, {res.report['max_ratio']}], "
                             f"1-8C eps={res.report['lower_target']:.3f}, {dt:.2f}s")
    assert res.ok and exact and samples == 100
    assert dt < 60


def test_10_discrete_witnesses(record_acceptance):
    t0 = time.time()
    res = run("discrete-witness", N=100, trials=100, seed=0)
    dt = time.time() - t0
    ok = res.ok and dt < 10
    record_acceptance(10, ok, f"checks={res.checks}, {dt:.2f}s")
    assert res.checks["parseval_exact"]
    assert res.checks["witness_orthogonal_to_even_modulations"]
    assert res.checks["span_distance_examples_exact"]
    assert dt < 10


def test_11_fourier_consistency(record_acceptance):
    t0 = time.time()
    res = run("dilworth-fourier", n=10 ** 4)
    dt = time.time() - t0
    ok = res.ok and dt < 10
    record_acceptance(11, ok, f"max |diff|={res.report['max_abs_diff']:.2e}, "
                              f"{len(res.report['near_zeros'])} isolated near-zeros, "
                              f"checks={res.checks}, {dt:.2f}s")
    assert res.checks["closed_form_1e-9"]
    assert res.checks["no_interval_of_zeros"]
    assert res.checks["zeros_at_nonzero_multiples_of_pi"]
    assert dt < 10
