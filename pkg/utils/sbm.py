"""
Stochastic block model instances with planted partitions.

Randomness comes from ``numpy.random.default_rng(seed)`` (the PCG64 bit
generator), so an instance is fully determined by its parameters and seed.
"""

import logging
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.constants import DEFAULT_SBM_K, DEFAULT_SBM_N, DEFAULT_SBM_P_IN, DEFAULT_SBM_P_OUT
from graph.weighted_graph import Partition, WeightedGraph

logger = logging.getLogger(__name__)


class SbmParams(BaseModel):
    """Planted-partition SBM parameters; defaults are the n=60, k=3 benchmark."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(default=DEFAULT_SBM_N, ge=1)
    k: int = Field(default=DEFAULT_SBM_K, ge=1)
    p_in: float = Field(default=DEFAULT_SBM_P_IN, ge=0.0, le=1.0)
    p_out: float = Field(default=DEFAULT_SBM_P_OUT, ge=0.0, le=1.0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_blocks(self) -> "SbmParams":
        if self.n < self.k:
            raise ValueError(f"n ({self.n}) must be at least k ({self.k})")
        return self

    def with_seed(self, seed: int) -> "SbmParams":
        return self.model_copy(update={"seed": seed})


def block_sizes(n: int, k: int) -> Tuple[int, ...]:
    """Near-equal block sizes; the first n mod k blocks get one extra node."""
    base, extra = divmod(n, k)
    return tuple(base + (1 if i < extra else 0) for i in range(k))


def planted_labels(n: int, k: int) -> np.ndarray:
    return np.repeat(np.arange(k), block_sizes(n, k))


def generate_sbm(params: SbmParams) -> Tuple[WeightedGraph, Partition]:
    """
    Sample an SBM graph with unit weights and its planted partition.

    Each pair u < v, visited in row-major upper-triangle order, becomes an
    edge with probability p_in inside a block and p_out across blocks.
    """
    rng = np.random.default_rng(params.seed)
    labels = planted_labels(params.n, params.k)
    us, vs = np.triu_indices(params.n, k=1)
    probabilities = np.where(labels[us] == labels[vs], params.p_in, params.p_out)
    present = rng.random(us.size) < probabilities

    graph = WeightedGraph(params.n, ((int(u), int(v), 1.0) for u, v in zip(us[present], vs[present])))
    logger.debug(
        f"[SBM] n={params.n} k={params.k} p_in={params.p_in} p_out={params.p_out} "
        f"seed={params.seed}: {graph.edge_count} edges"
    )
    return graph, Partition(tuple(int(label) for label in labels))
