"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they complete.  Criterion 9 needs externally supplied benchmark CSVs
(see the README) and is skipped with a notice when they are absent.
"""

import math
import os
import time
from pathlib import Path

import numpy as np
import pytest

from linkequiv import (
    Classifier,
    Dataset,
    Equispaced,
    Gaussian,
    GenConfig,
    LinkKind,
    ModelSpec,
    SplitPlan,
    UnivariateSample,
    beta_cf_cauchit,
    beta_cf_logit,
    beta_cf_probit,
    cdf,
    concordance_rate,
    fit_mle,
    log_likelihood,
    predictive_sim,
    quantile,
    score,
    sign_disagreement_grid,
    structural_sim,
    substream,
)
from linkequiv.cli import main as cli_main

ALL_LINKS = list(LinkKind)
C1 = 0.797885
C2 = 0.31831


def report(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {number:2d}: {status} - {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_01_closed_form_ratio_identities():
    """Probit/logit and cauchit/logit closed forms are exactly
    proportional on every sample with a nonzero kernel."""
    start = time.perf_counter()
    expected_probit = C1 / (4.0 * C2)
    expected_cauchit = math.pi / 4.0
    worst = 0.0
    checked = 0
    trial = 0
    while checked < 1000:
        stream = substream(1001, trial)
        trial += 1
        n = int(stream.integers(1, 40))
        x = stream.uniform(-10.0, 10.0, n)
        y = (stream.random(n) < 0.5).astype(float)
        s = UnivariateSample(x, y)
        logit = beta_cf_logit(s)
        if abs(logit) < 1e-9:
            continue
        checked += 1
        worst = max(
            worst,
            abs(beta_cf_probit(s) / logit - expected_probit),
            abs(beta_cf_cauchit(s) / logit - expected_cauchit),
        )
    elapsed = time.perf_counter() - start
    # the computed constant is ~0.62666; the conventional quote rounds
    # it to 0.625 (a gap below 0.002), and both facts are pinned here
    rounding_gap = abs(expected_probit - 0.625)
    ok = worst <= 1e-12 and elapsed < 1.0 and rounding_gap < 0.002 \
        and abs(expected_probit - 0.62666) < 1e-5
    report(1, ok, f"1000 samples, worst ratio error {worst:.2e}, "
                  f"c1/(4c2)={expected_probit:.5f} (quoted 0.625), {elapsed:.2f}s")


def test_criterion_02_structural_equivalence_desk_scale():
    """R=30, S=100 rerun of the equispaced cauchit-truth experiment:
    the probit-on-logit slope concentrates near 0.6 with R^2 near 1."""
    start = time.perf_counter()
    cfg = GenConfig(design=Equispaced(0.0, 1.0), truth_link=LinkKind.CAUCHIT,
                    beta0=0.0, beta1=0.5, n=199)
    rep = structural_sim(cfg, R=30, S=100, seed=11)
    elapsed = time.perf_counter() - start
    med_theta = float(np.median(rep.theta_hats[np.isfinite(rep.theta_hats)]))
    med_r2 = float(np.median(rep.r_squared[np.isfinite(rep.r_squared)]))
    ok = 0.55 <= med_theta <= 0.70 and med_r2 >= 0.95 and elapsed < 180.0
    report(2, ok, f"median theta {med_theta:.4f} in [0.55, 0.70], "
                  f"median R^2 {med_r2:.4f} >= 0.95, {elapsed:.1f}s")


def test_criterion_03_perfect_predictive_concordance():
    """Logit and probit classifiers with positively proportional
    coefficients agree on every one of 100 x 1e5 random points."""
    start = time.perf_counter()
    disagreements = 0
    for trial in range(100):
        stream = substream(303, trial)
        p = int(stream.integers(1, 5))
        beta = stream.normal(size=p + 1)
        lam = float(stream.uniform(0.05, 20.0))
        points = stream.normal(scale=3.0, size=(100_000, p))
        a = Classifier(ModelSpec(LinkKind.LOGIT), beta)
        b = Classifier(ModelSpec(LinkKind.PROBIT), lam * beta)
        rate = concordance_rate(a, b, points)
        disagreements += int(round(rate * points.shape[0]))
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 30.0
    report(3, ok, f"total disagreements {disagreements} over 10^7 points, {elapsed:.1f}s")


def test_criterion_04_sign_disagreement_grid():
    """On the 10000-point equispaced grid of [-15, 15] the symmetric
    links never disagree, and the compit rows equal the exact count of
    grid points between log(log 2) and 0.  (0.004 has been quoted for
    this table; the grid arithmetic forces 0.0122.)"""
    links = ALL_LINKS
    first = sign_disagreement_grid(links, -15.0, 15.0, 10000)
    second = sign_disagreement_grid(links, -15.0, 15.0, 10000)
    bit_exact = np.array_equal(first.rates, second.rates)
    grid = np.linspace(-15.0, 15.0, 10000)
    expected = np.sum((grid > math.log(math.log(2.0))) & (grid < 0.0)) / 10000.0
    idx = {link: i for i, link in enumerate(first.links)}
    symmetric = [LinkKind.PROBIT, LinkKind.CAUCHIT, LinkKind.LOGIT]
    sym_ok = all(
        first.rates[idx[a], idx[b]] == 0.0 for a in symmetric for b in symmetric
    )
    compit_ok = all(
        first.rates[idx[LinkKind.COMPIT], idx[s]] == expected for s in symmetric
    )
    ok = bit_exact and sym_ok and compit_ok
    report(4, ok, f"symmetric pairs all 0, compit rows {expected:.4f} "
                  f"(exact grid count, quoted value 0.004), bit-exact rerun {bit_exact}")


def test_criterion_05_predictive_equivalence_desk_scale():
    """n=500 cauchy-model data, R=200 paired splits: the four links'
    mean test errors sit within 0.02 of one another."""
    start = time.perf_counter()
    cfg = GenConfig(design=Gaussian(0.0, 2.0), truth_link=LinkKind.CAUCHIT,
                    beta0=1.0, beta1=2.0, n=500)
    from linkequiv import generate_dataset

    data = generate_dataset(cfg, seed=5, replicate=0)
    plan = SplitPlan(replications=200, seed=5)
    reports = predictive_sim(data, ALL_LINKS, plan)
    means = np.array([reports[k].stats.mean for k in ALL_LINKS])
    gap = float(means.max() - means.min())
    elapsed = time.perf_counter() - start
    ok = gap <= 0.02 and elapsed < 120.0
    report(5, ok, f"mean TE {np.round(means, 4).tolist()}, "
                  f"max pairwise gap {gap:.4f} <= 0.02, {elapsed:.1f}s")


def test_criterion_06_mle_correctness():
    """(a) first-order optimality, (b) analytic score vs finite
    differences, (c) agreement with a brute-force grid oracle, and
    (d) the intercept-only closed form, for all four links."""
    # (a) score at the fitted optimum
    worst_grad = 0.0
    for i, link in enumerate(ALL_LINKS):
        for trial in range(50):
            stream = substream(606, i, trial)
            n = 250
            X = stream.normal(size=(n, 2))
            beta = stream.normal(scale=0.7, size=3)
            eta = beta[0] + X @ beta[1:]
            y = (stream.random(n) < cdf(link, eta)).astype(float)
            if y.min() == y.max():
                y[0] = 1.0 - y[0]
            data = Dataset(X, y)
            spec = ModelSpec(link)
            fitted = fit_mle(spec, data)
            worst_grad = max(
                worst_grad, float(np.max(np.abs(score(spec, fitted.coefficients, data))))
            )
    part_a = worst_grad <= 1e-6

    # (b) analytic score against central differences of the likelihood.
    # Triples whose fitted probabilities fall within 1e-9 of 0 or 1 are
    # redrawn: there the float64 spacing of the stored probability
    # exceeds the per-step change, so differencing the log-likelihood
    # measures quantization plateaus instead of the slope.
    worst_rel = 0.0
    h = 1e-6
    for i, link in enumerate(ALL_LINKS):
        checked = 0
        trial = 0
        while checked < 50 and trial < 500:
            stream = substream(607, i, trial)
            trial += 1
            n = 50
            X = stream.normal(size=(n, 2))
            y = (stream.random(n) < 0.5).astype(float)
            if y.min() == y.max():
                y[0] = 1.0 - y[0]
            data = Dataset(X, y)
            spec = ModelSpec(link)
            beta = stream.normal(scale=0.5, size=3)
            pi = cdf(link, beta[0] + X @ beta[1:])
            if np.min(np.minimum(pi, 1.0 - pi)) < 1e-9:
                continue
            checked += 1
            analytic = score(spec, beta, data)
            fd = np.empty(3)
            for j in range(3):
                up = beta.copy(); up[j] += h
                dn = beta.copy(); dn[j] -= h
                fd[j] = (log_likelihood(spec, up, data)
                         - log_likelihood(spec, dn, data)) / (2 * h)
            denom = max(1.0, float(np.max(np.abs(analytic))))
            worst_rel = max(worst_rel, float(np.max(np.abs(analytic - fd))) / denom)
        assert checked == 50
    part_b = worst_rel <= 1e-6

    # (c) five-point no-intercept logit fits against a grid search over
    # [-20, 20] at 1e-4 resolution (datasets are redrawn until the grid
    # maximum is interior, so the comparison is meaningful)
    grid = np.linspace(-20.0, 20.0, 400001)
    worst_gap = 0.0
    accepted = 0
    trial = 0
    while accepted < 20 and trial < 400:
        stream = substream(608, trial)
        trial += 1
        x = stream.normal(scale=1.5, size=5)
        y = (stream.random(5) < cdf(LinkKind.LOGIT, 0.8 * x)).astype(float)
        if y.min() == y.max() or float(np.sum(x * x)) == 0.0:
            continue
        eta = grid[:, None] * x[None, :]
        pi = cdf(LinkKind.LOGIT, eta)
        ll = (y * np.log(pi) + (1 - y) * np.log1p(-pi)).sum(axis=1)
        oracle = float(grid[np.argmax(ll)])
        if abs(oracle) > 19.0:
            continue
        accepted += 1
        fitted = fit_mle(
            ModelSpec(LinkKind.LOGIT, intercept=False), Dataset.univariate(x, y)
        ).coefficients[0]
        worst_gap = max(worst_gap, abs(fitted - oracle))
    part_c = accepted == 20 and worst_gap <= 1e-3

    # (d) intercept-only maximum is the link quantile of the mean
    worst_d = 0.0
    y = np.array([1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0, 1], dtype=float)
    data = Dataset.intercept_only(y)
    for link in ALL_LINKS:
        fitted = fit_mle(ModelSpec(link), data).coefficients[0]
        worst_d = max(worst_d, abs(fitted - quantile(link, y.mean())))
    part_d = worst_d <= 1e-8

    ok = part_a and part_b and part_c and part_d
    report(6, ok, f"(a) worst score norm {worst_grad:.2e} <= 1e-6; "
                  f"(b) worst FD gap {worst_rel:.2e} <= 1e-6; "
                  f"(c) worst oracle gap {worst_gap:.2e} <= 1e-3 on {accepted} sets; "
                  f"(d) worst intercept gap {worst_d:.2e} <= 1e-8")


def test_criterion_07_taylor_regime_agreement():
    """Small-signal samples: the closed-form logit estimate tracks the
    MLE to five percent."""
    worst = 0.0
    for trial in range(20):
        stream = substream(707, trial)
        x = stream.uniform(-1.0, 1.0, 2000)
        beta_true = 0.25 if trial % 2 == 0 else -0.3
        y = (stream.random(2000) < cdf(LinkKind.LOGIT, beta_true * x)).astype(float)
        cf = beta_cf_logit(UnivariateSample(x, y))
        mle = fit_mle(
            ModelSpec(LinkKind.LOGIT, intercept=False), Dataset.univariate(x, y)
        ).coefficients[0]
        worst = max(worst, abs(cf - mle) / abs(mle))
    ok = worst <= 0.05
    report(7, ok, f"worst relative closed-form/MLE gap {worst:.4f} <= 0.05 on 20 samples")


def test_criterion_08_logistic_normal_rescaling():
    """sup over a 10^4-point grid of |logistic(u) - Phi(sqrt(pi/8) u)|."""
    grid = np.linspace(-10.0, 10.0, 10000)
    lam = math.sqrt(math.pi / 8.0)
    gap = float(np.max(np.abs(cdf(LinkKind.LOGIT, grid) - cdf(LinkKind.PROBIT, lam * grid))))
    ok = gap <= 0.02
    report(8, ok, f"sup |logit cdf - rescaled probit cdf| = {gap:.6f} <= 0.02")


PIMA_RATIOS = {
    "npreg": 0.57434,
    "glu": 0.5987,
    "bp": 0.5181,
    "bmi": 0.6044,
    "ped": 0.5868,
    "age": 0.6064,
}


def _find_csv(env_var, default_name):
    candidate = os.environ.get(env_var)
    if candidate and Path(candidate).exists():
        return Path(candidate)
    fallback = Path(__file__).resolve().parent.parent / "data" / default_name
    return fallback if fallback.exists() else None


def test_criterion_09_benchmark_coefficient_ratios():
    """Probit/logit coefficient ratios on externally supplied diabetes
    and crab-morphology CSVs; skipped with a notice when absent."""
    from linkequiv.cli import read_dataset_csv

    pima = _find_csv("LINKEQUIV_PIMA_CSV", "pima.csv")
    crabs = _find_csv("LINKEQUIV_CRABS_CSV", "crabs.csv")
    if pima is None and crabs is None:
        print("[acceptance] criterion  9: SKIP - benchmark CSVs not supplied "
              "(set LINKEQUIV_PIMA_CSV / LINKEQUIV_CRABS_CSV or add data/*.csv)")
        pytest.skip("benchmark datasets not supplied")
    details = []
    ok = True
    if pima is not None:
        data = read_dataset_csv(str(pima), "y")
        probit = fit_mle(ModelSpec(LinkKind.PROBIT), data).coefficients
        logit = fit_mle(ModelSpec(LinkKind.LOGIT), data).coefficients
        for j, name in enumerate(data.names, start=1):
            if name not in PIMA_RATIOS:  # 'skin' carries a flagged outlier
                continue
            ratio = probit[j] / logit[j]
            if abs(ratio - PIMA_RATIOS[name]) > 0.08:
                ok = False
                details.append(f"pima {name} ratio {ratio:.4f} off target")
        details.append(f"pima checked ({pima.name})")
    if crabs is not None:
        data = read_dataset_csv(str(crabs), "y")
        probit = fit_mle(ModelSpec(LinkKind.PROBIT), data).coefficients
        logit = fit_mle(ModelSpec(LinkKind.LOGIT), data).coefficients
        for j, name in enumerate(data.names, start=1):
            ratio = probit[j] / logit[j]
            if not 0.573 - 0.08 <= ratio <= 0.576 + 0.08:
                ok = False
                details.append(f"crabs {name} ratio {ratio:.4f} off target")
        details.append(f"crabs checked ({crabs.name})")
    report(9, ok, "; ".join(details))


def test_criterion_10_deterministic_outputs(tmp_path):
    """Every experiment subcommand rerun with the same seed writes
    byte-identical files, including under --jobs 2."""
    data_csv = tmp_path / "data.csv"
    assert cli_main(["gen", "--n", "60", "--seed", "3", "--out", str(data_csv)]) == 0

    def rerun_identical(name, args, jobs_variant):
        paths = []
        variants = [None, None] + ([2] if jobs_variant else [])
        for i, jobs in enumerate(variants):
            out = tmp_path / f"{name}_{i}.csv"
            argv = list(args) + ["--out", str(out)]
            if jobs is not None:
                argv += ["--jobs", str(jobs)]
            code = cli_main(argv)
            assert code == 0, f"{name} exited {code}"
            paths.append(out.read_bytes())
        return all(p == paths[0] for p in paths)

    checks = {
        "gen": rerun_identical("gen", ["gen", "--n", "45", "--seed", "9"], False),
        "structural": rerun_identical(
            "structural",
            ["structural", "-R", "2", "-S", "5", "--n", "40", "--seed", "4"],
            True,
        ),
        "predictive": rerun_identical(
            "predictive",
            ["predictive", "--csv", str(data_csv), "-R", "4", "--seed", "2"],
            True,
        ),
        "concordance": rerun_identical(
            "concordance", ["concordance", "--s", "500", "--seed", "1"], False
        ),
        "ic": rerun_identical(
            "ic", ["ic", str(data_csv), "-R", "3", "--seed", "6"], True
        ),
        "cdfgrid": rerun_identical("cdfgrid", ["cdfgrid", "--s", "60"], False),
    }
    ok = all(checks.values())
    report(10, ok, "byte-identical reruns: "
                   + ", ".join(f"{k}={'yes' if v else 'NO'}" for k, v in checks.items()))
