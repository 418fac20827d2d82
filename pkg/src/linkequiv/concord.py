"""Classifiers, zero-one test error, train/test splitting and
sign-disagreement measurement.

A fitted model classifies through the majority rule
``h(x) = (1 + sign(F(eta(x)) - 1/2)) / 2`` with the convention
``sign(0) = +1``, so a predicted probability of exactly one half maps to
class 1.  Classification therefore depends on the coefficients only
through the sign of the linear predictor for symmetric links, which is
why positively proportional probit and logit classifiers never disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ExperimentError, LinkEquivError
from .fit import Dataset, ModelSpec, fit_mle
from .links import LinkKind, cdf
from .parallel import replicate_map
from .rng import substream

__all__ = [
    "Classifier",
    "SplitPlan",
    "ConcordanceMatrix",
    "AverageTestError",
    "predict_prob",
    "classify",
    "test_error",
    "split",
    "average_test_error",
    "concordance_rate",
    "sign_disagreement_grid",
]


@dataclass(frozen=True)
class Classifier:
    """A model specification plus a concrete coefficient vector."""

    spec: ModelSpec
    coefficients: np.ndarray

    def __post_init__(self):
        beta = np.asarray(self.coefficients, dtype=float)
        if beta.ndim != 1:
            raise ArgumentError("coefficients must be a vector")
        if not np.all(np.isfinite(beta)):
            raise ArgumentError("coefficients must be finite")
        object.__setattr__(self, "coefficients", beta)

    @property
    def n_features(self) -> int:
        return self.coefficients.size - (1 if self.spec.intercept else 0)


@dataclass(frozen=True)
class SplitPlan:
    """How to resample train/test partitions: R replications keyed to a
    seed, with ``train_fraction`` of the rows (rounded up) training."""

    replications: int
    seed: int
    train_fraction: float = 2.0 / 3.0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ArgumentError("train_fraction must lie strictly in (0, 1)")
        if self.replications < 1:
            raise ArgumentError("replications must be at least 1")


@dataclass(frozen=True)
class ConcordanceMatrix:
    """Pairwise disagreement fractions, symmetric with a zero diagonal."""

    links: tuple[LinkKind, ...]
    rates: np.ndarray


@dataclass(frozen=True)
class AverageTestError:
    """Mean test error with the per-replicate vector (NaN marks a
    replicate whose fit failed) and the count of such failures."""

    ate: float
    per_replicate: np.ndarray
    n_failed: int


def _points_matrix(c: Classifier, x) -> tuple[np.ndarray, bool]:
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    if single:
        pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[1] != c.n_features:
        raise ArgumentError(
            f"points must have {c.n_features} features, got shape {np.shape(x)}"
        )
    return pts, single


def predict_prob(c: Classifier, x):
    """F(eta(x)) for a single point (1-d) or a matrix of row points."""
    pts, single = _points_matrix(c, x)
    if c.spec.intercept:
        eta = pts @ c.coefficients[1:] + c.coefficients[0]
    else:
        eta = pts @ c.coefficients
    prob = cdf(c.spec.link, eta)
    return float(prob[0]) if single else prob


def classify(c: Classifier, x):
    """Majority-rule class label(s); probability one half maps to 1."""
    pts, single = _points_matrix(c, x)
    labels = (predict_prob(c, pts) >= 0.5).astype(int)
    return int(labels[0]) if single else labels


def test_error(c: Classifier, test: Dataset) -> float:
    """Fraction of test rows whose predicted class differs from y."""
    if test.n < 1:
        raise ArgumentError("test set must be non-empty")
    labels = classify(c, test.predictors)
    return float(np.mean(labels != test.response))


def split(data: Dataset, plan: SplitPlan, r: int) -> tuple[Dataset, Dataset]:
    """Replicate ``r`` of the random train/test partition.

    ceil(train_fraction * n) rows train (kept within [1, n-1] so the
    test set is never empty); the partition is a pure function of
    (plan.seed, r) and identical for every caller.
    """
    n = data.n
    if n < 3:
        raise ArgumentError("need at least 3 rows to split")
    n_train = math.ceil(plan.train_fraction * n - 1e-9)
    n_train = min(max(n_train, 1), n - 1)
    perm = substream(plan.seed, r, "split").permutation(n)
    train_idx = np.sort(perm[:n_train])
    test_idx = np.sort(perm[n_train:])
    return data.subset(train_idx), data.subset(test_idx)


def _ate_replicate(args) -> float:
    spec, data, plan, r = args
    train, test = split(data, plan, r)
    try:
        result = fit_mle(spec, train)
    except LinkEquivError:
        return float("nan")
    return test_error(Classifier(spec, result.coefficients), test)


def average_test_error(
    spec: ModelSpec, data: Dataset, plan: SplitPlan, jobs: int = 1
) -> AverageTestError:
    """Mean zero-one test error over ``plan.replications`` random splits.

    Replicates whose training fit fails (separable resample, singular
    information) are recorded as NaN and excluded from the mean.
    """
    if data.response.min() == data.response.max():
        raise ArgumentError("response must contain both classes")
    tasks = [(spec, data, plan, r) for r in range(plan.replications)]
    values = np.asarray(replicate_map(_ate_replicate, tasks, jobs=jobs))
    valid = values[np.isfinite(values)]
    if valid.size == 0:
        raise ExperimentError("every replicate failed to fit")
    return AverageTestError(
        ate=float(valid.mean()),
        per_replicate=values,
        n_failed=int(values.size - valid.size),
    )


def concordance_rate(c1: Classifier, c2: Classifier, points) -> float:
    """Fraction of points on which the two classifiers disagree."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ArgumentError("points must be a non-empty matrix of rows")
    return float(np.mean(classify(c1, pts) != classify(c2, pts)))


def sign_disagreement_grid(
    links,
    a: float,
    b: float,
    s: int,
    mode: str = "equispaced",
    seed: int = 0,
) -> ConcordanceMatrix:
    """Tabulate how often sign(F(u) - 1/2) differs between links over
    ``s`` points of [a, b], either equally spaced or drawn uniformly."""
    links = tuple(links)
    if not links:
        raise ArgumentError("need at least one link")
    if not a < b:
        raise ArgumentError("interval must satisfy a < b")
    if s < 2:
        raise ArgumentError("need at least 2 points")
    if mode == "equispaced":
        points = np.linspace(a, b, s)
    elif mode == "uniform_random":
        points = substream(seed, "sign-grid").uniform(a, b, s)
    else:
        raise ArgumentError("mode must be 'equispaced' or 'uniform_random'")
    signs = np.empty((len(links), s), dtype=int)
    for i, link in enumerate(links):
        signs[i] = np.where(cdf(link, points) >= 0.5, 1, -1)
    rates = np.zeros((len(links), len(links)))
    for i in range(len(links)):
        for j in range(i + 1, len(links)):
            rate = float(np.mean(signs[i] != signs[j]))
            rates[i, j] = rates[j, i] = rate
    return ConcordanceMatrix(links=links, rates=rates)
