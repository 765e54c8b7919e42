"""
Runtime benchmark harness: SBM instances x methods x repetitions.

Each cell generates a connected SBM instance (resampling disconnected ones
with shifted seeds), times one method end to end with ``time.perf_counter``
and scores it against the planted partition. A failing cell becomes an
error record; the sweep carries on. Cells may be spread over worker
processes; each cell itself stays single-threaded in its timing and records
come back in grid order.
"""

import logging
import time
import traceback
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from clustering.spectral import spectral_clustering
from config.constants import BENCHMARK_COLUMNS, METHOD_FOSTER_FLOW, METHOD_SPECTRAL, RESAMPLE_SEED_STRIDE
from config.settings import settings
from graph.weighted_graph import Partition, WeightedGraph, is_connected
from services.detector import DetectorConfig, detect_communities
from utils.errors import ComputationError, InvalidArgumentError
from utils.metrics import adjusted_rand_index
from utils.sbm import SbmParams, generate_sbm

logger = logging.getLogger(__name__)

METHODS = (METHOD_FOSTER_FLOW, METHOD_SPECTRAL)


@dataclass(frozen=True)
class BenchmarkRecord:
    """
    One timed run. ``params.seed`` is the seed actually used (after any
    resampling); ``error`` is set, and ``ari`` is NaN, when the run failed.
    """

    method: str
    params: SbmParams
    edge_count: int
    wall_time_seconds: float
    ari: float
    seed: int
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_row(self) -> dict:
        return {
            "method": self.method,
            "n": self.params.n,
            "k": self.params.k,
            "p_in": self.params.p_in,
            "p_out": self.params.p_out,
            "seed": self.seed,
            "edge_count": self.edge_count,
            "wall_time_seconds": self.wall_time_seconds,
            "ari": self.ari,
            "error": self.error or "",
        }


def timed():
    """Return a function that yields elapsed seconds when called."""
    start = time.perf_counter()

    def end() -> float:
        return time.perf_counter() - start

    return end


def connected_instance(params: SbmParams, max_tries: Optional[int] = None) -> Tuple[WeightedGraph, Partition, SbmParams]:
    """
    Generate an SBM instance, resampling with seed + attempt * stride until connected.

    Raises:
        ComputationError: if no connected instance appears within ``max_tries``
    """
    max_tries = max_tries or settings.sbm_resample_tries
    for attempt in range(max_tries):
        candidate = params.with_seed(params.seed + attempt * RESAMPLE_SEED_STRIDE)
        graph, planted = generate_sbm(candidate)
        if is_connected(graph):
            if attempt:
                logger.warning(
                    f"[BENCH] seed {params.seed} gave a disconnected SBM; "
                    f"using seed {candidate.seed} (attempt {attempt + 1})"
                )
            return graph, planted, candidate
    raise ComputationError(
        "No connected SBM instance found",
        {"n": params.n, "k": params.k, "p_in": params.p_in, "p_out": params.p_out,
         "seed": params.seed, "tries": max_tries},
    )


def run_method(method: str, graph: WeightedGraph, k: int, seed: int, detector_config: DetectorConfig) -> Partition:
    if method == METHOD_FOSTER_FLOW:
        return detect_communities(graph, detector_config).partition
    if method == METHOD_SPECTRAL:
        return spectral_clustering(graph, k, seed)
    raise InvalidArgumentError(f"Unknown method {method!r}; expected one of {METHODS}")


def _run_cell(cell: Tuple[SbmParams, str, DetectorConfig]) -> BenchmarkRecord:
    params, method, detector_config = cell
    edge_count = 0
    used = params
    timer = None
    try:
        graph, planted, used = connected_instance(params)
        edge_count = graph.edge_count
        timer = timed()
        partition = run_method(method, graph, used.k, used.seed, detector_config)
        elapsed = timer()
        ari = adjusted_rand_index(partition, planted)
        logger.info(
            f"[BENCH] {method} n={used.n} seed={used.seed} |E|={edge_count} "
            f"time={elapsed:.4f}s ari={ari:.4f}"
        )
        return BenchmarkRecord(method, used, edge_count, elapsed, ari, used.seed)
    except Exception as e:
        logger.error(f"[BENCH] {method} n={params.n} seed={params.seed} failed: {e}")
        logger.debug(traceback.format_exc())
        elapsed = timer() if timer is not None else float("nan")
        return BenchmarkRecord(method, used, edge_count, elapsed, float("nan"), used.seed, error=str(e))


def build_cells(
    param_grid: Sequence[SbmParams],
    methods: Iterable[str],
    repetitions: int,
    detector_config: DetectorConfig,
) -> List[Tuple[SbmParams, str, DetectorConfig]]:
    """Cells in (params, method, repetition) order; repetition r uses seed + r."""
    ordered_methods = [m for m in METHODS if m in set(methods)]
    return [
        (params.with_seed(params.seed + rep), method, detector_config)
        for params in param_grid
        for method in ordered_methods
        for rep in range(repetitions)
    ]


def benchmark_runtime(
    param_grid: Sequence[SbmParams],
    methods: Iterable[str],
    repetitions: int,
    detector_config: Optional[DetectorConfig] = None,
    workers: Optional[int] = None,
) -> List[BenchmarkRecord]:
    """
    Time every method on every grid entry ``repetitions`` times.

    Raises:
        InvalidArgumentError: on an empty grid, unknown method or repetitions < 1
    """
    methods = list(methods)
    if not param_grid:
        raise InvalidArgumentError("Benchmark grid is empty")
    if repetitions < 1:
        raise InvalidArgumentError(f"repetitions must be >= 1, got {repetitions}")
    unknown = set(methods) - set(METHODS)
    if unknown or not methods:
        raise InvalidArgumentError(f"Unknown or missing methods {sorted(unknown)}; expected some of {METHODS}")

    if detector_config is None:
        detector_config = DetectorConfig()
    # benchmarks never need the curvature trace
    detector_config = detector_config.model_copy(
        update={"flow": detector_config.flow.model_copy(update={"keep_trace": False})}
    )

    cells = build_cells(param_grid, methods, repetitions, detector_config)
    workers = workers or settings.benchmark_workers
    logger.info(f"[BENCH] {len(cells)} cells over {len(param_grid)} grid entries, workers={workers}")

    if workers > 1:
        with Pool(processes=workers) as pool:
            records = pool.map(_run_cell, cells)
    else:
        records = [_run_cell(cell) for cell in cells]

    failures = sum(1 for r in records if not r.ok)
    if failures:
        logger.warning(f"[BENCH] {failures}/{len(records)} cells failed")
    return records


def records_frame(records: Sequence[BenchmarkRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in records], columns=BENCHMARK_COLUMNS)


def summarize_runtime(records: Sequence[BenchmarkRecord]) -> pd.DataFrame:
    """Median wall time, mean ARI and run count per (method, n), successful runs only."""
    frame = records_frame([r for r in records if r.ok])
    if frame.empty:
        return pd.DataFrame(columns=["method", "n", "median_wall_time_seconds", "mean_ari", "runs"])
    summary = (
        frame.groupby(["method", "n"], sort=True)
        .agg(
            median_wall_time_seconds=("wall_time_seconds", "median"),
            mean_ari=("ari", "mean"),
            runs=("ari", "size"),
        )
        .reset_index()
    )
    return summary
