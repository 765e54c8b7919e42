"""
Result and CSV exporters.

ResultFile is the JSON document written by ``detect``; the histogram,
benchmark and experiment tables are CSVs for external plotting. Nothing here
writes timestamps, so identical runs give byte-identical files.
"""

import logging
from pathlib import Path
from typing import List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict

from config.constants import FLOAT_FORMAT, HISTOGRAM_COLUMNS
from curvature.foster import CurvatureMap
from graph.weighted_graph import Partition, WeightedGraph
from services.detector import CycleDiagnostics, DetectionResult, DetectorConfig
from utils.metrics import adjusted_rand_index

logger = logging.getLogger(__name__)


class CycleRecord(BaseModel):
    """One prune cycle as it appears in a ResultFile."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    cycle_index: int
    edge_count_before: int
    gmm_means: Optional[List[float]] = None
    gmm_variances: Optional[List[float]] = None
    gmm_mixture_weights: Optional[List[float]] = None
    gmm_converged: Optional[bool] = None
    t_statistic: Optional[float] = None
    p_value: Optional[float] = None
    removed_edge_count: int
    component_count_after: int
    degenerate: bool = False

    @classmethod
    def from_diagnostics(cls, cycle: CycleDiagnostics) -> "CycleRecord":
        gmm = cycle.gmm
        separation = cycle.separation
        return cls(
            cycle_index=cycle.cycle_index,
            edge_count_before=len(cycle.edges_before),
            gmm_means=list(gmm.means) if gmm else None,
            gmm_variances=list(gmm.variances) if gmm else None,
            gmm_mixture_weights=list(gmm.mixture_weights) if gmm else None,
            gmm_converged=gmm.converged if gmm else None,
            t_statistic=separation.t_statistic if separation else None,
            p_value=separation.p_value if separation else None,
            removed_edge_count=len(cycle.removed_edges),
            component_count_after=cycle.component_count_after,
            degenerate=cycle.degenerate,
        )


class ResultFile(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    partition: List[int]
    termination: str
    cycles: List[CycleRecord]
    config: DetectorConfig
    ari: Optional[float] = None

    @classmethod
    def from_detection(
        cls,
        result: DetectionResult,
        config: DetectorConfig,
        planted: Optional[Partition] = None,
    ) -> "ResultFile":
        """Labels are written in canonical first-appearance order."""
        return cls(
            partition=list(result.partition.canonical()),
            termination=result.termination.value,
            cycles=[CycleRecord.from_diagnostics(c) for c in result.cycles],
            config=config,
            ari=adjusted_rand_index(result.partition, planted) if planted is not None else None,
        )

    @property
    def community_count(self) -> int:
        return len(set(self.partition))

    def dumps(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ResultFile":
        return cls.model_validate_json(text)


def write_result_file(path: str, result_file: ResultFile) -> None:
    _write_text(path, result_file.dumps())
    logger.info(f"[CLI] Wrote ResultFile ({result_file.community_count} communities) to {path}")


def read_result_file(path: str) -> ResultFile:
    return ResultFile.loads(Path(path).read_text(encoding="utf-8"))


def histogram_frame(before: WeightedGraph, after: WeightedGraph, curvature: CurvatureMap) -> pd.DataFrame:
    """
    One row per edge: initial weight, evolved weight and the curvature of
    the evolved graph.

    Raises:
        ValueError: if the three inputs do not share an edge list
    """
    if before.edges != after.edges or tuple(curvature.edges) != after.edges:
        raise ValueError("Histogram inputs must share the same edge list")
    us, vs = after.endpoints()
    return pd.DataFrame(
        {
            "edge_u": us,
            "edge_v": vs,
            "weight_before": before.weights,
            "weight_after": after.weights,
            "curvature_final": curvature.values,
        },
        columns=HISTOGRAM_COLUMNS,
    )


def write_csv(path: str, frame: pd.DataFrame) -> None:
    """Write a frame with 17 significant digits and ``\\n`` line endings."""
    _ensure_parent(path)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"[CLI] Wrote {len(frame)} rows to {path}")


def _ensure_parent(path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)


def _write_text(path, text: str) -> None:
    _ensure_parent(path)
    Path(path).write_text(text, encoding="utf-8")
