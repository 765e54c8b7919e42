"""
Partition agreement metrics.

The Adjusted Rand Index is computed from the contingency table with exact
integer pair counts; only the final ratio is floating point.
"""

import logging
from typing import Sequence, Union

import numpy as np
import pandas as pd

from graph.weighted_graph import Partition
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

Labels = Union[Partition, Sequence[int]]


def _pairs(counts: np.ndarray) -> int:
    """Sum of C(c, 2) over counts, in exact integer arithmetic."""
    return sum(int(c) * (int(c) - 1) // 2 for c in counts)


def contingency_table(a: Labels, b: Labels) -> pd.DataFrame:
    """Counts of nodes per (label in a, label in b)."""
    labels_a = list(a)
    labels_b = list(b)
    if len(labels_a) != len(labels_b):
        raise InvalidArgumentError(f"Partitions differ in length: {len(labels_a)} vs {len(labels_b)}")
    return pd.crosstab(pd.Series(labels_a, name="a"), pd.Series(labels_b, name="b"))


def adjusted_rand_index(a: Labels, b: Labels) -> float:
    """
    Adjusted Rand Index between two partitions of the same nodes.

    ARI = (index - expected) / (max_index - expected), with
    index = sum_ij C(n_ij, 2), expected = sum_i C(a_i, 2) * sum_j C(b_j, 2) / C(n, 2)
    and max_index = (sum_i C(a_i, 2) + sum_j C(b_j, 2)) / 2.
    When the denominator vanishes (both all-singletons, both one block, or
    fewer than two nodes) the partitions are identical and the index is 1.

    Raises:
        InvalidArgumentError: if the partitions differ in length
    """
    table = contingency_table(a, b)
    n = int(table.values.sum())
    total_pairs = n * (n - 1) // 2
    if total_pairs == 0:
        return 1.0

    index = _pairs(table.values.ravel())
    sum_a = _pairs(table.sum(axis=1).values)
    sum_b = _pairs(table.sum(axis=0).values)

    expected = sum_a * sum_b / total_pairs
    max_index = (sum_a + sum_b) / 2
    if max_index == expected:
        return 1.0
    return (index - expected) / (max_index - expected)
