"""Monte-Carlo harnesses for structural and predictive equivalence.

``structural_sim`` runs the nested R x S experiment: for each outer
replicate, S datasets are generated and fitted under both logit and
probit, and the probit slope estimates are regressed on the logit ones;
the OLS slope theta, intercept tau, correlation rho and R^2 of each
outer replicate are collected.  ``predictive_sim`` and ``ic_compare``
replay R paired train/test splits (every link sees the identical
partition sequence) and summarize test errors or AIC/BIC over them.

Everything is keyed by (seed, replicate index) streams, so results do
not depend on execution order or worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .concord import SplitPlan, average_test_error, split
from .errors import ArgumentError, DegenerateSampleError, ExperimentError, LinkEquivError
from .fit import Dataset, ModelSpec, fit_mle
from .links import LinkKind, cdf
from .parallel import replicate_map
from .rng import substream

__all__ = [
    "Equispaced",
    "Gaussian",
    "GenConfig",
    "SummaryStats",
    "OlsLine",
    "ThetaReport",
    "TestErrorReport",
    "IcReport",
    "generate_dataset",
    "ols_simple",
    "structural_sim",
    "summarize",
    "predictive_sim",
    "ic_compare",
]

STAT_ORDER = (
    "median",
    "mean",
    "sd",
    "skewness",
    "kurtosis",
    "cv",
    "iqr",
    "min",
    "max",
)


@dataclass(frozen=True)
class Equispaced:
    """Design with x equally spaced over [lo, hi], endpoints included."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ArgumentError("equispaced design needs lo < hi")


@dataclass(frozen=True)
class Gaussian:
    """Design with x drawn i.i.d. Normal(mean, sd^2)."""

    mean: float
    sd: float

    def __post_init__(self):
        if not self.sd > 0.0:
            raise ArgumentError("gaussian design needs sd > 0")


@dataclass(frozen=True)
class GenConfig:
    """Recipe for a synthetic univariate dataset: the x design, the true
    link, true intercept/slope and the sample size."""

    design: Equispaced | Gaussian
    truth_link: LinkKind
    beta0: float
    beta1: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ArgumentError("n must be at least 2")
        if not isinstance(self.design, (Equispaced, Gaussian)):
            raise ArgumentError("design must be Equispaced or Gaussian")


@dataclass(frozen=True)
class SummaryStats:
    """The nine replication statistics, in the conventional table order
    median, mean, sd, skewness, kurtosis, cv, IQR, min, max."""

    median: float
    mean: float
    sd: float
    skewness: float
    kurtosis: float
    cv: float
    iqr: float
    min: float
    max: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in STAT_ORDER}


@dataclass(frozen=True)
class OlsLine:
    """Simple least-squares line of ys on xs with its correlation."""

    tau: float
    theta: float
    rho: float
    r2: float


@dataclass(frozen=True)
class ThetaReport:
    """Per-replicate OLS slope/intercept/correlation of probit estimates
    on logit estimates.  NaN rows mark replicates with fewer than three
    surviving fit pairs; ``dropped`` counts pairs lost to failed fits."""

    theta_hats: np.ndarray
    tau_hats: np.ndarray
    rho_hats: np.ndarray
    r_squared: np.ndarray
    dropped: np.ndarray
    theta_summary: SummaryStats | None


@dataclass(frozen=True)
class TestErrorReport:
    """Raw per-replicate test errors for one link plus their summary."""

    values: np.ndarray
    stats: SummaryStats
    n_failed: int


@dataclass(frozen=True)
class IcReport:
    """Raw per-replicate AIC/BIC of the training fits for one link."""

    aic: np.ndarray
    bic: np.ndarray
    aic_stats: SummaryStats
    bic_stats: SummaryStats
    n_failed: int


def generate_dataset(cfg: GenConfig, seed: int, replicate) -> Dataset:
    """Draw one dataset.  ``replicate`` may be an int or a tuple of ints
    (nested experiments); the result is a pure function of
    (cfg, seed, replicate)."""
    path = tuple(replicate) if isinstance(replicate, tuple) else (int(replicate),)
    if isinstance(cfg.design, Equispaced):
        x = np.linspace(cfg.design.lo, cfg.design.hi, cfg.n)
    else:
        x = substream(seed, *path, "x").normal(cfg.design.mean, cfg.design.sd, cfg.n)
    probs = cdf(cfg.truth_link, cfg.beta0 + cfg.beta1 * x)
    y = (substream(seed, *path, "y").random(cfg.n) < probs).astype(float)
    return Dataset.univariate(x, y)


def ols_simple(xs, ys) -> OlsLine:
    """Least-squares line of ys on xs with Pearson correlation and
    r2 = rho^2.  Requires length >= 3 and variation in both variables."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ArgumentError("xs and ys must be equal-length vectors")
    if x.size < 3:
        raise ArgumentError("need at least 3 points")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ArgumentError("inputs must be finite")
    xbar = x.mean()
    ybar = y.mean()
    sxx = float(np.sum((x - xbar) ** 2))
    syy = float(np.sum((y - ybar) ** 2))
    sxy = float(np.sum((x - xbar) * (y - ybar)))
    if sxx == 0.0:
        raise DegenerateSampleError("xs has zero variance")
    if syy == 0.0:
        raise DegenerateSampleError("ys is constant; correlation undefined")
    theta = sxy / sxx
    rho = sxy / math.sqrt(sxx * syy)
    return OlsLine(tau=float(ybar - theta * xbar), theta=theta, rho=rho, r2=rho * rho)


def _structural_replicate(args) -> tuple[float, float, float, float, int]:
    cfg, S, seed, r = args
    intercept = cfg.beta0 != 0.0
    logit_spec = ModelSpec(LinkKind.LOGIT, intercept=intercept)
    probit_spec = ModelSpec(LinkKind.PROBIT, intercept=intercept)
    logit_slopes = []
    probit_slopes = []
    dropped = 0
    for s in range(S):
        data = generate_dataset(cfg, seed, (r, s))
        try:
            lf = fit_mle(logit_spec, data)
            pf = fit_mle(probit_spec, data)
        except LinkEquivError:
            dropped += 1
            continue
        logit_slopes.append(lf.coefficients[-1])
        probit_slopes.append(pf.coefficients[-1])
    nan = float("nan")
    if len(logit_slopes) < 3:
        return nan, nan, nan, nan, dropped
    try:
        line = ols_simple(logit_slopes, probit_slopes)
    except DegenerateSampleError:
        return nan, nan, nan, nan, dropped
    return line.theta, line.tau, line.rho, line.r2, dropped


def structural_sim(
    cfg: GenConfig, R: int, S: int, seed: int, jobs: int = 1
) -> ThetaReport:
    """The nested R x S slope-estimation experiment.

    With ``cfg.beta0 == 0`` the fitted models drop the intercept (the
    setting in which the closed-form theory is stated); otherwise both
    models carry intercepts and the slope coefficients are paired.
    Within a replicate, datasets whose logit or probit fit fails are
    dropped pairwise.
    """
    if R < 1:
        raise ArgumentError("R must be at least 1")
    if S < 3:
        raise ArgumentError("S must be at least 3")
    tasks = [(cfg, S, seed, r) for r in range(R)]
    rows = replicate_map(_structural_replicate, tasks, jobs=jobs)
    theta = np.array([row[0] for row in rows])
    tau = np.array([row[1] for row in rows])
    rho = np.array([row[2] for row in rows])
    r2 = np.array([row[3] for row in rows])
    dropped = np.array([row[4] for row in rows], dtype=int)
    valid = theta[np.isfinite(theta)]
    if valid.size == 0:
        raise ExperimentError("every replicate was invalid")
    summary = summarize(valid) if valid.size >= 2 else None
    return ThetaReport(
        theta_hats=theta,
        tau_hats=tau,
        rho_hats=rho,
        r_squared=r2,
        dropped=dropped,
        theta_summary=summary,
    )


def summarize(values) -> SummaryStats:
    """The nine replication statistics of a vector.

    Conventions: median averages the two central order statistics for
    even length; sd uses the n-1 divisor; skewness and kurtosis use 1/n
    central moments, with kurtosis left non-excess (a normal sample
    scores about 3); cv is 100*sd/mean, reported as NaN when the mean is
    zero; quartiles interpolate linearly between order statistics.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ArgumentError("need a vector of at least 2 values")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError("values must be finite")
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1))
    centered = arr - mean
    m2 = float(np.mean(centered**2))
    m3 = float(np.mean(centered**3))
    m4 = float(np.mean(centered**4))
    if m2 > 0.0:
        skewness = m3 / m2**1.5
        kurtosis = m4 / (m2 * m2)
    else:
        skewness = float("nan")
        kurtosis = float("nan")
    cv = 100.0 * sd / mean if mean != 0.0 else float("nan")
    q1, q3 = np.quantile(arr, [0.25, 0.75])
    return SummaryStats(
        median=float(np.median(arr)),
        mean=mean,
        sd=sd,
        skewness=skewness,
        kurtosis=kurtosis,
        cv=cv,
        iqr=float(q3 - q1),
        min=float(arr.min()),
        max=float(arr.max()),
    )


def predictive_sim(
    data: Dataset,
    links,
    plan: SplitPlan,
    intercept: bool = True,
    jobs: int = 1,
) -> dict[LinkKind, TestErrorReport]:
    """Paired predictive comparison: every link is fitted and scored on
    the identical split sequence, and its R test errors are summarized.
    """
    links = tuple(links)
    if plan.replications < 2:
        raise ArgumentError("summaries need at least 2 replications")
    out: dict[LinkKind, TestErrorReport] = {}
    for link in links:
        ate = average_test_error(
            ModelSpec(link, intercept=intercept), data, plan, jobs=jobs
        )
        valid = ate.per_replicate[np.isfinite(ate.per_replicate)]
        if valid.size < 2:
            raise ExperimentError(f"{link}: fewer than 2 usable replicates")
        out[link] = TestErrorReport(
            values=ate.per_replicate, stats=summarize(valid), n_failed=ate.n_failed
        )
    return out


def _ic_replicate(args) -> list[tuple[float, float]]:
    data, links, plan, intercept, r = args
    train, _ = split(data, plan, r)
    row = []
    for link in links:
        try:
            result = fit_mle(ModelSpec(link, intercept=intercept), train)
            row.append((result.aic, result.bic))
        except LinkEquivError:
            row.append((float("nan"), float("nan")))
    return row


def ic_compare(
    data: Dataset,
    links,
    plan: SplitPlan,
    intercept: bool = True,
    jobs: int = 1,
) -> dict[LinkKind, IcReport]:
    """AIC/BIC of each per-replicate training fit, per link, using the
    same paired split sequence as ``predictive_sim``."""
    links = tuple(links)
    if plan.replications < 2:
        raise ArgumentError("summaries need at least 2 replications")
    if data.response.min() == data.response.max():
        raise ArgumentError("response must contain both classes")
    tasks = [(data, links, plan, intercept, r) for r in range(plan.replications)]
    rows = replicate_map(_ic_replicate, tasks, jobs=jobs)
    out: dict[LinkKind, IcReport] = {}
    for i, link in enumerate(links):
        aic = np.array([row[i][0] for row in rows])
        bic = np.array([row[i][1] for row in rows])
        keep = np.isfinite(aic)
        if keep.sum() < 2:
            raise ExperimentError(f"{link}: fewer than 2 usable replicates")
        out[link] = IcReport(
            aic=aic,
            bic=bic,
            aic_stats=summarize(aic[keep]),
            bic_stats=summarize(bic[keep]),
            n_failed=int((~keep).sum()),
        )
    return out
