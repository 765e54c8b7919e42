"""
Two-component one-dimensional Gaussian mixture fitted by EM.

Initialization splits the sorted data at its middle and seeds each component
from one half, so the default fit is deterministic. A variance floor of
1e-10 * (sample variance + 1e-12) is enforced at every M-step to keep
near-delta clusters from collapsing to zero variance. Components are
reported in ascending order of mean.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp
from scipy.stats import norm

from config.constants import (
    DEFAULT_GMM_MAX_ITER,
    DEFAULT_GMM_RESTARTS,
    DEFAULT_GMM_TOL,
    DEGENERATE_MEAN_GAP_RATIO,
    DEGENERATE_SPREAD_RATIO,
    GMM_MIN_VALUES,
    VARIANCE_FLOOR_OFFSET,
    VARIANCE_FLOOR_RATIO,
)
from utils.errors import InvalidArgumentError, InvalidStateError

logger = logging.getLogger(__name__)


class Component(str, Enum):
    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True, eq=False)
class GmmFit:
    """
    Fitted mixture parameters, index 0 = lower mean.

    Attributes:
        mixture_weights: (pi_low, pi_high), summing to 1
        means: (mu_low, mu_high)
        variances: (var_low, var_high), never below the variance floor
        responsibilities: (n, 2) posterior probabilities of the fitted data
        log_likelihood_trace: Log-likelihood at every E-step
        converged: Relative log-likelihood change fell below tol
        degenerate: Data too concentrated, or the two means coincide
    """

    mixture_weights: Tuple[float, float]
    means: Tuple[float, float]
    variances: Tuple[float, float]
    responsibilities: np.ndarray
    log_likelihood_trace: Tuple[float, ...]
    converged: bool
    degenerate: bool

    @property
    def n_iter(self) -> int:
        return len(self.log_likelihood_trace)

    @property
    def log_likelihood(self) -> float:
        return self.log_likelihood_trace[-1] if self.log_likelihood_trace else float("nan")

    def to_dict(self) -> dict:
        return {
            "mixture_weights": list(self.mixture_weights),
            "means": list(self.means),
            "variances": list(self.variances),
            "log_likelihood": self.log_likelihood,
            "n_iter": self.n_iter,
            "converged": self.converged,
            "degenerate": self.degenerate,
        }


def fit_gmm_1d(
    values: Sequence[float],
    tol: float = DEFAULT_GMM_TOL,
    max_iter: int = DEFAULT_GMM_MAX_ITER,
    seed: int = 0,
    restarts: int = DEFAULT_GMM_RESTARTS,
) -> GmmFit:
    """
    Fit a two-component Gaussian mixture to 1-D data.

    Args:
        values: At least four finite reals
        tol: Stop when |ll_t - ll_{t-1}| <= tol * |ll_{t-1}|
        max_iter: Maximum number of EM iterations
        seed: Seed of the generator that draws restart split points
        restarts: Extra random-split initializations (0 = deterministic median split only)

    Returns:
        GmmFit with components in ascending order of mean

    Raises:
        InvalidArgumentError: fewer than four values, or bad tol/max_iter
    """
    data = np.asarray(values, dtype=float).ravel()
    if data.size < GMM_MIN_VALUES:
        raise InvalidArgumentError(f"GMM needs at least {GMM_MIN_VALUES} values, got {data.size}")
    if not np.all(np.isfinite(data)):
        raise InvalidArgumentError("GMM values must be finite")
    if tol <= 0 or max_iter < 1 or restarts < 0:
        raise InvalidArgumentError(f"Invalid EM settings tol={tol}, max_iter={max_iter}, restarts={restarts}")

    mean = float(data.mean())
    variance = float(data.var())
    std = float(np.sqrt(variance))
    floor = VARIANCE_FLOOR_RATIO * (variance + VARIANCE_FLOOR_OFFSET)

    if std < DEGENERATE_SPREAD_RATIO * max(1.0, abs(mean)):
        logger.debug(f"[GMM] Degenerate input: n={data.size}, mean={mean:.6g}, std={std:.3g}")
        return GmmFit(
            mixture_weights=(0.5, 0.5),
            means=(mean, mean),
            variances=(floor, floor),
            responsibilities=np.full((data.size, 2), 0.5),
            log_likelihood_trace=(),
            converged=True,
            degenerate=True,
        )

    ordered = np.sort(data)
    best = _run_em(data, ordered, data.size // 2, floor, tol, max_iter)
    if restarts:
        rng = np.random.default_rng(seed)
        for restart in range(restarts):
            split = int(rng.integers(1, data.size))
            candidate = _run_em(data, ordered, split, floor, tol, max_iter)
            if candidate.log_likelihood > best.log_likelihood:
                logger.debug(f"[GMM] Restart {restart + 1} (split {split}) improved ll to {candidate.log_likelihood:.6f}")
                best = candidate

    if abs(best.means[1] - best.means[0]) < DEGENERATE_MEAN_GAP_RATIO * std:
        best = GmmFit(
            mixture_weights=best.mixture_weights,
            means=best.means,
            variances=best.variances,
            responsibilities=best.responsibilities,
            log_likelihood_trace=best.log_likelihood_trace,
            converged=best.converged,
            degenerate=True,
        )

    logger.debug(
        f"[GMM] n={data.size} means=({best.means[0]:.6g}, {best.means[1]:.6g}) "
        f"pi=({best.mixture_weights[0]:.3f}, {best.mixture_weights[1]:.3f}) "
        f"iters={best.n_iter} converged={best.converged} degenerate={best.degenerate}"
    )
    return best


def _run_em(
    data: np.ndarray,
    ordered: np.ndarray,
    split: int,
    floor: float,
    tol: float,
    max_iter: int,
) -> GmmFit:
    """EM from the split ordered[:split] / ordered[split:]."""
    low, high = ordered[:split], ordered[split:]
    weights = np.array([0.5, 0.5])
    means = np.array([low.mean(), high.mean()])
    variances = np.maximum(np.array([low.var(), high.var()]), floor)

    trace: List[float] = []
    converged = False
    responsibilities = None
    for _ in range(max_iter):
        log_likelihood, responsibilities = _e_step(data, weights, means, variances)
        if trace and abs(log_likelihood - trace[-1]) <= tol * abs(trace[-1]):
            trace.append(log_likelihood)
            converged = True
            break
        trace.append(log_likelihood)
        weights, means, variances = _m_step(data, responsibilities, means, floor)
    else:
        # responsibilities must describe the parameters being returned
        log_likelihood, responsibilities = _e_step(data, weights, means, variances)
        trace.append(log_likelihood)

    order = np.argsort(means, kind="stable")
    return GmmFit(
        mixture_weights=(float(weights[order[0]]), float(weights[order[1]])),
        means=(float(means[order[0]]), float(means[order[1]])),
        variances=(float(variances[order[0]]), float(variances[order[1]])),
        responsibilities=responsibilities[:, order],
        log_likelihood_trace=tuple(trace),
        converged=converged,
        degenerate=False,
    )


def _log_joint(data: np.ndarray, weights: np.ndarray, means: np.ndarray, variances: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        log_weights = np.log(weights)
    return log_weights[None, :] + norm.logpdf(data[:, None], loc=means[None, :], scale=np.sqrt(variances)[None, :])


def _e_step(data, weights, means, variances) -> Tuple[float, np.ndarray]:
    log_joint = _log_joint(data, weights, means, variances)
    log_norm = logsumexp(log_joint, axis=1)
    responsibilities = np.exp(log_joint - log_norm[:, None])
    # exact normalization per datum
    responsibilities /= responsibilities.sum(axis=1, keepdims=True)
    return float(log_norm.sum()), responsibilities


def _m_step(data, responsibilities, previous_means, floor):
    counts = responsibilities.sum(axis=0)
    weights = counts / data.size
    safe_counts = np.where(counts > 0.0, counts, 1.0)
    means = np.where(counts > 0.0, responsibilities.T @ data / safe_counts, previous_means)
    deviations = (data[:, None] - means[None, :]) ** 2
    variances = np.maximum((responsibilities * deviations).sum(axis=0) / safe_counts, floor)
    return weights, means, variances


def component_responsibilities(fit: GmmFit, values: Sequence[float]) -> np.ndarray:
    """Posterior (low, high) probabilities of arbitrary values under ``fit``."""
    data = np.asarray(values, dtype=float).ravel()
    _, responsibilities = _e_step(
        data, np.asarray(fit.mixture_weights), np.asarray(fit.means), np.asarray(fit.variances)
    )
    return responsibilities


def assign_components(fit: GmmFit, values: Sequence[float]) -> List[Component]:
    """
    Label each value with its most likely component; ties go to LOW.

    Raises:
        InvalidStateError: if the fit is degenerate
    """
    if fit.degenerate:
        raise InvalidStateError("Cannot assign components from a degenerate GMM fit")
    responsibilities = component_responsibilities(fit, values)
    return [
        Component.HIGH if high > low else Component.LOW
        for low, high in responsibilities
    ]
