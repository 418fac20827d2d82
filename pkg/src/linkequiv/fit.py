"""Maximum-likelihood estimation of binary regression coefficients.

The solver is Newton ascent on the observed information with step
halving; every accepted step strictly increases the log-likelihood.
Whenever the Newton direction fails to point uphill (the cauchit
likelihood is not concave, so its observed information can be
indefinite) the iteration falls back to plain gradient ascent with the
same backtracking rule.  Iterates always start from zero, which keeps
runs reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NumericalError, SeparationError
from .links import CLAMP_EPS, LinkKind, cdf, density, density_prime

__all__ = [
    "Dataset",
    "ModelSpec",
    "FitResult",
    "design_matrix",
    "log_likelihood",
    "score",
    "observed_information",
    "fit_mle",
    "information_criteria",
    "WARN_SEPARATION",
    "WARN_MAX_ITERATIONS",
]

SOLVER_TOL = 1e-8
MAX_ITERATIONS = 100
MAX_HALVINGS = 30
RIDGE = 1e-10

# |coefficient| on standardized predictor scale beyond which the data
# look separable
SEPARATION_BOUND = 30.0

WARN_SEPARATION = "separation_suspected"
WARN_MAX_ITERATIONS = "max_iterations_reached"


@dataclass(frozen=True)
class Dataset:
    """An n x p predictor matrix, a 0/1 response vector and feature names.

    ``p = 0`` (an empty predictor matrix) describes intercept-only data.
    A 1-d ``predictors`` argument is treated as a single column.
    """

    predictors: np.ndarray
    response: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        X = np.asarray(self.predictors, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2:
            raise ArgumentError("predictors must be a vector or a 2-d matrix")
        if X.shape[0] < 1:
            raise ArgumentError("dataset needs at least one row")
        if not np.all(np.isfinite(X)):
            raise ArgumentError("predictor entries must be finite")
        y = np.asarray(self.response, dtype=float)
        if y.shape != (X.shape[0],):
            raise ArgumentError("response length must match the number of rows")
        if not np.all((y == 0.0) | (y == 1.0)):
            raise ArgumentError("response entries must be exactly 0 or 1")
        names = self.names
        if names is None:
            names = tuple(f"x{j + 1}" for j in range(X.shape[1]))
        names = tuple(str(label) for label in names)
        if len(names) != X.shape[1]:
            raise ArgumentError("need one name per predictor column")
        object.__setattr__(self, "predictors", X)
        object.__setattr__(self, "response", y)
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.predictors.shape[0]

    @property
    def p(self) -> int:
        return self.predictors.shape[1]

    def subset(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=int)
        return Dataset(self.predictors[idx], self.response[idx], self.names)

    @classmethod
    def univariate(cls, x, y) -> "Dataset":
        return cls(np.asarray(x, dtype=float).reshape(-1, 1), y, ("x",))

    @classmethod
    def intercept_only(cls, y) -> "Dataset":
        y = np.asarray(y, dtype=float)
        return cls(np.empty((y.shape[0], 0)), y, ())


@dataclass(frozen=True)
class ModelSpec:
    """Link choice plus whether the linear predictor carries an intercept."""

    link: LinkKind
    intercept: bool = True

    def coefficient_count(self, p: int) -> int:
        return p + 1 if self.intercept else p

    def coefficient_names(self, data: Dataset) -> tuple[str, ...]:
        if self.intercept:
            return ("intercept",) + data.names
        return data.names


@dataclass(frozen=True)
class FitResult:
    """Fitted coefficients with likelihood, information criteria and
    convergence diagnostics."""

    coefficients: np.ndarray
    loglik: float
    aic: float
    bic: float
    iterations: int
    converged: bool
    grad_norm: float
    warnings: tuple[str, ...]
    n_obs: int


def design_matrix(spec: ModelSpec, data: Dataset) -> np.ndarray:
    """The model matrix, with a leading column of ones when an intercept
    is requested."""
    if spec.intercept:
        return np.hstack([np.ones((data.n, 1)), data.predictors])
    return data.predictors


def _checked_beta(spec: ModelSpec, beta, data: Dataset) -> np.ndarray:
    b = np.asarray(beta, dtype=float)
    expected = spec.coefficient_count(data.p)
    if b.shape != (expected,):
        raise ArgumentError(
            f"coefficient vector has length {b.size}, model expects {expected}"
        )
    if not np.all(np.isfinite(b)):
        raise ArgumentError("coefficients must be finite")
    return b


def log_likelihood(spec: ModelSpec, beta, data: Dataset) -> float:
    """Bernoulli log-likelihood sum(y*log(pi) + (1-y)*log(1-pi)) with
    pi = F(eta); finite for any finite beta thanks to the CDF clamp."""
    b = _checked_beta(spec, beta, data)
    eta = design_matrix(spec, data) @ b
    pi = cdf(spec.link, eta)
    y = data.response
    return float(np.sum(y * np.log(pi) + (1.0 - y) * np.log1p(-pi)))


def _interior(pi: np.ndarray) -> np.ndarray:
    # where the CDF clamp pins pi, the likelihood is locally flat in eta,
    # so those observations contribute nothing to the gradient or the
    # curvature (chain rule through the clamp)
    return (pi > CLAMP_EPS) & (pi < 1.0 - CLAMP_EPS)


def score(spec: ModelSpec, beta, data: Dataset) -> np.ndarray:
    """Gradient of the log-likelihood,
    sum_i (y_i - pi_i) * f(eta_i) / (pi_i * (1 - pi_i)) * xtilde_i,
    with clamped observations contributing zero."""
    b = _checked_beta(spec, beta, data)
    X = design_matrix(spec, data)
    eta = X @ b
    pi = cdf(spec.link, eta)
    f = density(spec.link, eta)
    u = np.where(_interior(pi), (data.response - pi) * f / (pi * (1.0 - pi)), 0.0)
    return X.T @ u


def observed_information(spec: ModelSpec, beta, data: Dataset) -> np.ndarray:
    """Negative Hessian of the log-likelihood at ``beta``."""
    b = _checked_beta(spec, beta, data)
    X = design_matrix(spec, data)
    eta = X @ b
    pi = cdf(spec.link, eta)
    f = density(spec.link, eta)
    fp = density_prime(spec.link, eta)
    q = pi * (1.0 - pi)
    resid = data.response - pi
    w = f * f / q - resid * (fp * q - f * f * (1.0 - 2.0 * pi)) / (q * q)
    w = np.where(_interior(pi), w, 0.0)
    return X.T @ (w[:, None] * X)


def _separation_suspected(spec: ModelSpec, beta: np.ndarray, data: Dataset) -> bool:
    if beta.size == 0:
        return False
    scaled = np.abs(beta.copy())
    if data.p > 0:
        sds = data.predictors.std(axis=0)
        sds = np.where(sds > 0.0, sds, 1.0)
        if spec.intercept:
            scaled[1:] *= sds
        else:
            scaled *= sds
    return bool(np.any(scaled > SEPARATION_BOUND))


def fit_mle(
    spec: ModelSpec,
    data: Dataset,
    *,
    tol: float = SOLVER_TOL,
    max_iter: int = MAX_ITERATIONS,
    _trace: list | None = None,
) -> FitResult:
    """Maximize the log-likelihood and return the stationary point.

    Convergence is declared when the score infinity-norm drops to
    ``tol``.  Identical inputs produce bit-identical coefficients.  A
    suspected-separation or iteration-cap condition is reported through
    ``FitResult.warnings`` rather than by aborting, so replication
    harnesses survive pathological resamples.

    Raises ``SeparationError`` when a model with predictors sees a
    single-valued response, and ``NumericalError`` when the damped
    information matrix cannot be solved.
    """
    y = data.response
    if data.p > 0 and y.min() == y.max():
        raise SeparationError(
            "response takes a single value; coefficients of a model with "
            "predictors diverge"
        )
    k = spec.coefficient_count(data.p)
    beta = np.zeros(k)
    ll = log_likelihood(spec, beta, data)
    if _trace is not None:
        _trace.append(ll)
    iterations = 0
    converged = False
    grad_norm = 0.0
    for _ in range(max_iter):
        g = score(spec, beta, data)
        grad_norm = float(np.max(np.abs(g))) if k else 0.0
        if grad_norm <= tol:
            converged = True
            break
        H = observed_information(spec, beta, data)
        if not np.all(np.isfinite(H)):
            raise NumericalError("observed information is not finite")
        H = H + RIDGE * np.eye(k)
        try:
            direction = np.linalg.solve(H, g)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(
                "information matrix is singular even after ridge damping"
            ) from exc
        if not np.all(np.isfinite(direction)) or float(g @ direction) <= 0.0:
            direction = g
        # ties are accepted: near the optimum the true gain rounds below
        # the float resolution of the log-likelihood, yet the full Newton
        # step still shrinks the gradient quadratically
        step = 1.0
        accepted = False
        for _ in range(MAX_HALVINGS + 1):
            candidate = beta + step * direction
            candidate_ll = log_likelihood(spec, candidate, data)
            if candidate_ll >= ll:
                accepted = True
                break
            step *= 0.5
        if not accepted or bool(np.all(candidate == beta)):
            break  # no representable progress along this ray
        beta, ll = candidate, candidate_ll
        iterations += 1
        if _trace is not None:
            _trace.append(ll)
    if not converged:
        g = score(spec, beta, data)
        grad_norm = float(np.max(np.abs(g))) if k else 0.0
        converged = grad_norm <= tol
    warnings = []
    if iterations >= max_iter and not converged:
        warnings.append(WARN_MAX_ITERATIONS)
    if _separation_suspected(spec, beta, data):
        warnings.append(WARN_SEPARATION)
    n = data.n
    return FitResult(
        coefficients=beta,
        loglik=ll,
        aic=2.0 * k - 2.0 * ll,
        bic=k * math.log(n) - 2.0 * ll,
        iterations=iterations,
        converged=converged,
        grad_norm=grad_norm,
        warnings=tuple(warnings),
        n_obs=n,
    )


def information_criteria(fit: FitResult, n: int) -> dict[str, float]:
    """AIC = 2k - 2*loglik and BIC = k*log(n) - 2*loglik."""
    if not fit.converged:
        raise ArgumentError("information criteria require a converged fit")
    k = fit.coefficients.size
    return {
        "aic": 2.0 * k - 2.0 * fit.loglik,
        "bic": k * math.log(n) - 2.0 * fit.loglik,
    }
