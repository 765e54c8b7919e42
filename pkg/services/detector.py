"""
Community detection by Ricci-Foster flow and GMM edge pruning.

Pipeline:
1. Run the flow for a fixed number of iterations.
2. Prune cycles: fit a two-component GMM to the edge weights, remove the
   edges of the selected component (by default the high-weight one, where
   the flow pushes inter-community edges), and check connectivity.
   Disconnected -> the components are the communities.
   Still connected -> re-run the flow on the pruned graph and repeat.
3. Stop early on a degenerate GMM (nothing left to separate) and after
   ``max_cycles``; the current components are returned either way.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from clustering.gmm import Component, GmmFit, assign_components, fit_gmm_1d
from clustering.separation import SeparationTest, welch_t_test
from config.constants import (
    DEFAULT_GMM_MAX_ITER,
    DEFAULT_GMM_RESTARTS,
    DEFAULT_GMM_TOL,
    DEFAULT_MAX_CYCLES,
    MIN_PRUNE_EDGES,
)
from curvature.flow import FlowConfig, run_flow
from graph.weighted_graph import (
    Edge,
    Partition,
    WeightedGraph,
    component_count,
    connected_components,
    remove_edges,
)
from utils.errors import DisconnectedGraphError, InvalidArgumentError

logger = logging.getLogger(__name__)


class PruneSide(str, Enum):
    HIGH = "high"
    LOW = "low"


class Termination(str, Enum):
    DISCONNECTED = "disconnected"
    MAX_CYCLES_REACHED = "max_cycles_reached"
    DEGENERATE_GMM = "degenerate_gmm"


class DetectorConfig(BaseModel):
    """Full detector configuration; echoed verbatim into result files."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    flow: FlowConfig = Field(default_factory=FlowConfig)
    max_cycles: int = Field(default=DEFAULT_MAX_CYCLES, ge=1)
    prune_side: PruneSide = PruneSide.HIGH
    gmm_tol: float = Field(default=DEFAULT_GMM_TOL, gt=0.0)
    gmm_max_iter: int = Field(default=DEFAULT_GMM_MAX_ITER, ge=1)
    gmm_restarts: int = Field(default=DEFAULT_GMM_RESTARTS, ge=0)
    seed: int = 0


@dataclass(frozen=True)
class CycleDiagnostics:
    """
    What one prune cycle saw and did.

    ``edges_before`` and ``edge_weights_before`` are aligned and describe the
    graph at cycle start (after the flow). ``gmm`` is None only when the cycle
    started with too few edges to fit.
    """

    cycle_index: int
    edges_before: Tuple[Edge, ...]
    edge_weights_before: Tuple[float, ...]
    gmm: Optional[GmmFit]
    separation: Optional[SeparationTest]
    removed_edges: FrozenSet[Edge]
    component_count_after: int
    degenerate: bool = False


@dataclass(frozen=True)
class DetectionResult:
    partition: Partition
    cycles: Tuple[CycleDiagnostics, ...]
    termination: Termination
    final_graph: WeightedGraph

    @property
    def community_count(self) -> int:
        return self.partition.community_count


def _degenerate_cycle(
    g: WeightedGraph, cycle_index: int, gmm: Optional[GmmFit] = None
) -> Tuple[WeightedGraph, CycleDiagnostics]:
    diagnostics = CycleDiagnostics(
        cycle_index=cycle_index,
        edges_before=g.edges,
        edge_weights_before=tuple(float(w) for w in g.weights),
        gmm=gmm,
        separation=None,
        removed_edges=frozenset(),
        component_count_after=component_count(g),
        degenerate=True,
    )
    return g, diagnostics


def prune_cycle(g: WeightedGraph, cfg: DetectorConfig, cycle_index: int) -> Tuple[WeightedGraph, CycleDiagnostics]:
    """
    One GMM pruning cycle.

    Fits the mixture to the current edge weights, removes every edge assigned
    to ``cfg.prune_side`` and records a Welch t-test between the two groups.
    A degenerate fit, or a selection that is empty or covers every edge,
    leaves the graph unchanged and is flagged ``degenerate``.

    Raises:
        InvalidArgumentError: if ``g`` has fewer than four edges
    """
    if g.edge_count < MIN_PRUNE_EDGES:
        raise InvalidArgumentError(f"Pruning needs at least {MIN_PRUNE_EDGES} edges, got {g.edge_count}")

    weights = g.weights
    fit = fit_gmm_1d(weights, tol=cfg.gmm_tol, max_iter=cfg.gmm_max_iter, seed=cfg.seed, restarts=cfg.gmm_restarts)
    if fit.degenerate:
        logger.info(f"[DETECT] Cycle {cycle_index}: degenerate GMM over {g.edge_count} weights")
        return _degenerate_cycle(g, cycle_index, fit)

    labels = np.array([label == Component.HIGH for label in assign_components(fit, weights)])
    selected = labels if cfg.prune_side == PruneSide.HIGH else ~labels
    if not selected.any() or selected.all():
        logger.info(
            f"[DETECT] Cycle {cycle_index}: {cfg.prune_side.value} component holds "
            f"{int(selected.sum())}/{g.edge_count} edges; nothing sensible to prune"
        )
        return _degenerate_cycle(g, cycle_index, fit)

    separation = None
    try:
        separation = welch_t_test(weights[~labels], weights[labels])
    except InvalidArgumentError as e:
        logger.debug(f"[DETECT] Cycle {cycle_index}: no t-test ({e})")

    doomed = [edge for edge, chosen in zip(g.edges, selected) if chosen]
    pruned = remove_edges(g, doomed)
    components_after = component_count(pruned)

    p_text = f"{separation.p_value:.3e}" if separation else "n/a"
    logger.info(
        f"[DETECT] Cycle {cycle_index}: means=({fit.means[0]:.4f}, {fit.means[1]:.4f}) "
        f"removed {len(doomed)}/{g.edge_count} {cfg.prune_side.value} edges, "
        f"components={components_after}, t-test p={p_text}"
    )

    diagnostics = CycleDiagnostics(
        cycle_index=cycle_index,
        edges_before=g.edges,
        edge_weights_before=tuple(float(w) for w in weights),
        gmm=fit,
        separation=separation,
        removed_edges=frozenset(doomed),
        component_count_after=components_after,
    )
    return pruned, diagnostics


def detect_communities(g: WeightedGraph, cfg: Optional[DetectorConfig] = None) -> DetectionResult:
    """
    Detect communities of a connected weighted graph.

    Graphs with fewer than four edges (at any cycle start) end with
    ``degenerate_gmm`` and their current components as the partition.

    Raises:
        DisconnectedGraphError: if the input graph is not connected
    """
    cfg = cfg or DetectorConfig()
    components = component_count(g)
    if components != 1:
        raise DisconnectedGraphError(
            components, f"Input graph has {components} components; split it before detection"
        )

    logger.info(
        f"[DETECT] Start: n={g.node_count} |E|={g.edge_count} max_cycles={cfg.max_cycles} "
        f"prune_side={cfg.prune_side.value}"
    )
    current = run_flow(g, cfg.flow).graph
    cycles: List[CycleDiagnostics] = []
    termination = Termination.MAX_CYCLES_REACHED

    for cycle_index in range(1, cfg.max_cycles + 1):
        if current.edge_count < MIN_PRUNE_EDGES:
            _, diagnostics = _degenerate_cycle(current, cycle_index)
            cycles.append(diagnostics)
            termination = Termination.DEGENERATE_GMM
            break

        pruned, diagnostics = prune_cycle(current, cfg, cycle_index)
        cycles.append(diagnostics)
        if diagnostics.degenerate:
            termination = Termination.DEGENERATE_GMM
            break

        current = pruned
        if diagnostics.component_count_after >= 2:
            termination = Termination.DISCONNECTED
            break
        if cycle_index < cfg.max_cycles:
            current = run_flow(current, cfg.flow).graph

    partition = connected_components(current)
    logger.info(
        f"[DETECT] Done: {termination.value} after {len(cycles)} cycle(s), "
        f"{partition.community_count} communities"
    )
    return DetectionResult(
        partition=partition,
        cycles=tuple(cycles),
        termination=termination,
        final_graph=current,
    )
