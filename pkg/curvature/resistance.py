"""
Laplacian, Moore-Penrose pseudoinverse and effective resistance.

Edge weights act as conductances: L = D - W with D the weighted degrees.
For a connected graph the pseudoinverse comes from one dense solve,

    L+ = (L + J/n)^-1 - J/n        (J = all-ones)

which is exact because the all-ones vector spans the kernel of L. Anything
else (disconnected or numerically rank-deficient) falls back to a symmetric
eigendecomposition with eigenvalues below 1e-10 * lambda_max dropped.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from config.constants import EIGEN_CUTOFF_RATIO
from graph.weighted_graph import Edge, WeightedGraph, component_count, weighted_degrees
from utils.errors import ComputationError, DisconnectedGraphError

logger = logging.getLogger(__name__)

LaplacianMatrix = np.ndarray
PseudoinverseMatrix = np.ndarray


@dataclass(frozen=True, eq=False)
class ResistanceReport:
    """
    Per-edge effective resistances of a connected graph.

    Attributes:
        edges: Edge order, identical to the graph's ``edges``
        resistances: R_uv per edge, aligned with ``edges``
        foster_sum: sum of w_e * R_e; equals node_count - 1 (Foster's theorem)
        node_count: Node count of the source graph
        pseudoinverse: The L+ the resistances were read from
        penrose_residual: Worst Penrose-condition residual, when validated
    """

    edges: Tuple[Edge, ...]
    resistances: np.ndarray
    foster_sum: float
    node_count: int
    pseudoinverse: PseudoinverseMatrix
    penrose_residual: Optional[float] = None

    @property
    def per_edge(self) -> Dict[Edge, float]:
        return {edge: float(r) for edge, r in zip(self.edges, self.resistances)}

    @property
    def foster_deviation(self) -> float:
        """foster_sum - (n - 1); zero up to rounding for a correct pipeline."""
        return self.foster_sum - (self.node_count - 1)

    def resistance(self, u: int, v: int) -> float:
        """Resistance between any two nodes, not only edge endpoints."""
        lp = self.pseudoinverse
        return float(lp[u, u] + lp[v, v] - 2.0 * lp[u, v])


def build_laplacian(g: WeightedGraph) -> LaplacianMatrix:
    """Dense combinatorial Laplacian L = D - W."""
    laplacian = -g.adjacency_matrix()
    laplacian[np.diag_indices_from(laplacian)] = weighted_degrees(g)
    return laplacian


def pseudoinverse(laplacian: LaplacianMatrix) -> PseudoinverseMatrix:
    """
    Moore-Penrose pseudoinverse of a graph Laplacian.

    Raises:
        ComputationError: if the dense solve and the eigendecomposition both fail
    """
    laplacian = np.asarray(laplacian, dtype=float)
    n = laplacian.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    if not np.any(laplacian):
        return np.zeros((n, n))

    if _laplacian_component_count(laplacian) == 1:
        correction = np.full((n, n), 1.0 / n)
        try:
            inverse = scipy.linalg.solve(
                laplacian + correction, np.eye(n), assume_a="sym", check_finite=False
            )
            result = inverse - correction
            return (result + result.T) / 2.0
        except (scipy.linalg.LinAlgError, ValueError) as e:
            logger.warning(f"[RESIST] Rank-one corrected solve failed ({e}); using eigendecomposition")

    return _eigen_pseudoinverse(laplacian)


def _eigen_pseudoinverse(laplacian: np.ndarray) -> np.ndarray:
    n = laplacian.shape[0]
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(laplacian)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise ComputationError(
            "Symmetric eigendecomposition of the Laplacian did not converge",
            {"n": n, "max_abs_entry": float(np.max(np.abs(laplacian))), "error": str(e)},
        ) from e

    cutoff = EIGEN_CUTOFF_RATIO * max(float(eigenvalues[-1]), 0.0)
    keep = eigenvalues > cutoff
    logger.debug(f"[RESIST] Eigen pseudoinverse: n={n}, rank={int(keep.sum())}, cutoff={cutoff:.3e}")
    vectors = eigenvectors[:, keep]
    result = (vectors / eigenvalues[keep]) @ vectors.T
    return (result + result.T) / 2.0


def _laplacian_component_count(laplacian: np.ndarray) -> int:
    pattern = csr_matrix(laplacian != 0.0)
    count, _ = connected_components(pattern, directed=False)
    return int(count)


def penrose_residuals(laplacian: LaplacianMatrix, pinv: PseudoinverseMatrix) -> Dict[str, float]:
    """
    Max-norm residual of each of the four Penrose conditions.

    Keys: ``lpl`` (L L+ L = L), ``plp`` (L+ L L+ = L+), ``lp_sym`` and
    ``pl_sym`` (symmetry of L L+ and L+ L).
    """
    lp = laplacian @ pinv
    pl = pinv @ laplacian
    return {
        "lpl": float(np.max(np.abs(lp @ laplacian - laplacian), initial=0.0)),
        "plp": float(np.max(np.abs(pl @ pinv - pinv), initial=0.0)),
        "lp_sym": float(np.max(np.abs(lp - lp.T), initial=0.0)),
        "pl_sym": float(np.max(np.abs(pl - pl.T), initial=0.0)),
    }


def effective_resistances(g: WeightedGraph, validate: bool = False) -> ResistanceReport:
    """
    Effective resistance R_uv = L+_uu + L+_vv - 2 L+_uv for every edge.

    Args:
        g: Connected graph
        validate: Also compute the Penrose residuals of the pseudoinverse

    Raises:
        DisconnectedGraphError: if ``g`` has more than one component
    """
    components = component_count(g)
    if components != 1:
        raise DisconnectedGraphError(components)

    laplacian = build_laplacian(g)
    pinv = pseudoinverse(laplacian)
    diagonal = np.diag(pinv)
    us, vs = g.endpoints()
    resistances = diagonal[us] + diagonal[vs] - 2.0 * pinv[us, vs]
    foster_sum = float(np.dot(g.weights, resistances))

    residual = None
    if validate:
        residual = max(penrose_residuals(laplacian, pinv).values())

    logger.debug(
        f"[RESIST] n={g.node_count} |E|={g.edge_count} foster_sum={foster_sum:.12f} "
        f"(expected {g.node_count - 1})"
    )
    resistances.setflags(write=False)
    return ResistanceReport(
        edges=g.edges,
        resistances=resistances,
        foster_sum=foster_sum,
        node_count=g.node_count,
        pseudoinverse=pinv,
        penrose_residual=residual,
    )


def pairwise_resistances(g: WeightedGraph) -> np.ndarray:
    """
    Full resistance-distance matrix of a connected graph.

    Raises:
        DisconnectedGraphError: if ``g`` has more than one component
    """
    components = component_count(g)
    if components != 1:
        raise DisconnectedGraphError(components)
    pinv = pseudoinverse(build_laplacian(g))
    diagonal = np.diag(pinv)
    distances = diagonal[:, None] + diagonal[None, :] - 2.0 * pinv
    np.fill_diagonal(distances, 0.0)
    return distances
