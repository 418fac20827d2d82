"""Closed-form small-coefficient estimators for univariate no-intercept models.

Expanding the score around beta = 0 and keeping the linear term gives,
for every link, the same sample statistic scaled by a link constant:

    kernel(x, y) = (2*sum(x*y) - sum(x)) / sum(x^2)

    logit estimate   = 2 * kernel
    probit estimate  = c1 / (2*c2) * kernel   (c1 = 0.797885, c2 = 0.31831)
    cauchit estimate = pi / 2 * kernel

so probit/logit = c1/(4*c2) ~ 0.6267 (often quoted rounded to 0.625) and
cauchit/logit = pi/4 exactly, independent of the sample.  The constants
c1 and c2 are kept in their conventional 6- and 5-digit decimal forms
rather than recomputed as sqrt(2/pi) and 1/pi, so printed ratios match
the published decimal arithmetic; the analytic identities are exercised
in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DegenerateSampleError

__all__ = [
    "UnivariateSample",
    "TaylorConstants",
    "DEFAULT_CONSTANTS",
    "shared_kernel",
    "beta_cf_logit",
    "beta_cf_probit",
    "beta_cf_cauchit",
    "ratio_identities",
]


@dataclass(frozen=True)
class UnivariateSample:
    """A single real predictor with a 0/1 response."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or x.shape[0] < 1:
            raise ArgumentError("x must be a non-empty vector")
        if y.shape != x.shape:
            raise ArgumentError("x and y must have equal length")
        if not np.all(np.isfinite(x)):
            raise ArgumentError("x entries must be finite")
        if not np.all((y == 0.0) | (y == 1.0)):
            raise ArgumentError("y entries must be exactly 0 or 1")
        # the float check matters: subnormal x can be nonzero while x*x
        # underflows, leaving the kernel denominator zero
        if float(np.sum(x * x)) == 0.0:
            raise DegenerateSampleError("sum of squared predictors is zero")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


@dataclass(frozen=True)
class TaylorConstants:
    """The probit expansion constants c1 ~ sqrt(2/pi), c2 ~ 1/pi."""

    c1: float = 0.797885
    c2: float = 0.31831


DEFAULT_CONSTANTS = TaylorConstants()


def shared_kernel(s: UnivariateSample) -> float:
    """(2*sum(x*y) - sum(x)) / sum(x^2), the factor common to all three
    closed-form estimators.

    Evaluated as sum(x*(2y - 1))/sum(x^2), which is the same quantity
    but makes flipping every y to 1-y negate the result exactly.
    """
    sum_sq = float(np.sum(s.x * s.x))
    if sum_sq == 0.0:
        raise DegenerateSampleError("sum of squared predictors is zero")
    return float(np.sum(s.x * (2.0 * s.y - 1.0))) / sum_sq


def beta_cf_logit(s: UnivariateSample) -> float:
    """Closed-form logit estimate, 2 * kernel."""
    return 2.0 * shared_kernel(s)


def beta_cf_probit(
    s: UnivariateSample, constants: TaylorConstants = DEFAULT_CONSTANTS
) -> float:
    """Closed-form probit estimate, c1/(2*c2) * kernel."""
    return constants.c1 / (2.0 * constants.c2) * shared_kernel(s)


def beta_cf_cauchit(s: UnivariateSample) -> float:
    """Closed-form cauchit estimate, pi/2 * kernel."""
    return 0.5 * math.pi * shared_kernel(s)


def ratio_identities(
    constants: TaylorConstants = DEFAULT_CONSTANTS,
) -> dict[str, float]:
    """The sample-free proportionality constants between the estimators."""
    return {
        "probit_over_logit": constants.c1 / (4.0 * constants.c2),
        "cauchit_over_logit": math.pi / 4.0,
    }
