"""
Foster-Ricci edge curvature.

    K_uv = 1/d_u + 1/d_v - R_uv / w_uv

with d the weighted degrees and R the effective resistance, clipped to
[-1, 1] before it is used by the flow.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from config.constants import CURVATURE_CLIP
from curvature.resistance import ResistanceReport, effective_resistances
from graph.weighted_graph import Edge, WeightedGraph, weighted_degrees

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CurvatureMap:
    """
    Clipped curvature per edge for one flow iteration.

    ``values`` and ``raw_values`` are aligned with ``edges``; ``raw_values``
    holds the pre-clip numbers for diagnostics.
    """

    edges: Tuple[Edge, ...]
    values: np.ndarray
    raw_values: np.ndarray

    @property
    def per_edge(self) -> Dict[Edge, float]:
        return {edge: float(k) for edge, k in zip(self.edges, self.values)}

    @property
    def clipped_count(self) -> int:
        return int(np.count_nonzero(self.values != self.raw_values))

    def __getitem__(self, edge: Edge) -> float:
        u, v = edge
        return self.per_edge[(min(u, v), max(u, v))]

    def __len__(self) -> int:
        return len(self.edges)


def foster_curvature(g: WeightedGraph, report: Optional[ResistanceReport] = None) -> CurvatureMap:
    """
    Clipped Foster-Ricci curvature of every edge of a connected graph.

    Args:
        g: Connected graph
        report: Resistances of ``g`` if already computed

    Raises:
        DisconnectedGraphError: propagated from the resistance computation
    """
    if report is None:
        report = effective_resistances(g)

    degrees = weighted_degrees(g)
    us, vs = g.endpoints()
    raw = 1.0 / degrees[us] + 1.0 / degrees[vs] - report.resistances / g.weights
    clipped = np.clip(raw, -CURVATURE_CLIP, CURVATURE_CLIP)

    raw.setflags(write=False)
    clipped.setflags(write=False)
    curvature = CurvatureMap(edges=g.edges, values=clipped, raw_values=raw)
    if curvature.clipped_count:
        logger.debug(f"[FLOW] Clipped {curvature.clipped_count}/{len(curvature)} curvatures to [-1, 1]")
    return curvature
