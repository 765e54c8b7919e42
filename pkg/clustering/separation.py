"""Welch's unequal-variance t-test between two weight groups."""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import betainc

from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeparationTest:
    """t statistic (mean_a - mean_b), two-sided p-value and Welch-Satterthwaite dof."""

    t_statistic: float
    p_value: float
    dof: float
    size_a: int
    size_b: int


def t_two_sided_p_value(t: float, dof: float) -> float:
    """
    P(|T| >= |t|) for Student's t with ``dof`` degrees of freedom.

    Uses the regularized incomplete beta identity
    P = I_{dof / (dof + t^2)}(dof / 2, 1 / 2).
    """
    x = dof / (dof + t * t)
    return float(np.clip(betainc(dof / 2.0, 0.5, x), 0.0, 1.0))


def welch_t_test(a: Sequence[float], b: Sequence[float]) -> SeparationTest:
    """
    Welch's t-test of equal means without assuming equal variances.

    Raises:
        InvalidArgumentError: if a sample has fewer than two values or zero variance
    """
    sample_a = np.asarray(a, dtype=float).ravel()
    sample_b = np.asarray(b, dtype=float).ravel()
    for name, sample in (("a", sample_a), ("b", sample_b)):
        if sample.size < 2:
            raise InvalidArgumentError(f"Sample {name} needs at least 2 values, got {sample.size}")

    var_a = float(sample_a.var(ddof=1))
    var_b = float(sample_b.var(ddof=1))
    if var_a <= 0.0 or var_b <= 0.0:
        raise InvalidArgumentError("Welch's t-test needs both samples to have positive variance")

    se_a = var_a / sample_a.size
    se_b = var_b / sample_b.size
    t = float((sample_a.mean() - sample_b.mean()) / np.sqrt(se_a + se_b))
    dof = float((se_a + se_b) ** 2 / (se_a ** 2 / (sample_a.size - 1) + se_b ** 2 / (sample_b.size - 1)))
    p_value = t_two_sided_p_value(t, dof)

    logger.debug(f"[GMM] Welch t={t:.4f} dof={dof:.2f} p={p_value:.3e}")
    return SeparationTest(
        t_statistic=t,
        p_value=p_value,
        dof=dof,
        size_a=int(sample_a.size),
        size_b=int(sample_b.size),
    )
