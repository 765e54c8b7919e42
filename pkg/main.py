"""
Command-line entry point.

    python main.py generate   --n 60 --k 3 --p-in 0.7 --p-out 0.07 --seed 1 --out sbm.txt
    python main.py detect     --in sbm.txt --out result.json
    python main.py histogram  --in sbm.txt --out weights.csv
    python main.py benchmark  --n 30 60 120 --reps 5 --out runtime.csv
    python main.py experiment --seeds 0:20 --out recovery.csv

Exit codes: 0 success, 1 runtime failure, 2 input or validation error,
3 precondition violation (disconnected input).
"""
import argparse
import logging
import sys
import traceback
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from config.constants import (
    DEFAULT_EPSILON,
    DEFAULT_ETA,
    DEFAULT_FLOW_ITERATIONS,
    DEFAULT_GMM_RESTARTS,
    DEFAULT_MAX_CYCLES,
    DEFAULT_PRUNE_SIDE,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_RUNTIME_FAILURE,
    DEFAULT_SBM_K,
    DEFAULT_SBM_N,
    DEFAULT_SBM_P_IN,
    DEFAULT_SBM_P_OUT,
)
from config.logging import configure_logging
from curvature.flow import FlowConfig, run_flow
from curvature.foster import foster_curvature
from graph.graph_file import read_graph_file, write_graph_file
from services.benchmark import METHODS, benchmark_runtime, records_frame, summarize_runtime
from services.detector import DetectorConfig, PruneSide, detect_communities
from services.experiment import recovery_frame, run_recovery_experiment
from utils.errors import DisconnectedGraphError, InvalidArgumentError
from utils.exporter import ResultFile, histogram_frame, write_csv, write_result_file
from utils.sbm import generate_sbm
from utils.validators import build_param_grid, parse_seeds, sbm_params, validate_methods

logger = logging.getLogger(__name__)


def _flow_config(args: argparse.Namespace, keep_trace: bool = False) -> FlowConfig:
    return FlowConfig(eta=args.eta, epsilon=args.epsilon, iterations=args.flow_iters, keep_trace=keep_trace)


def _detector_config(args: argparse.Namespace) -> DetectorConfig:
    return DetectorConfig(
        flow=_flow_config(args),
        max_cycles=args.max_cycles,
        prune_side=PruneSide(args.prune_side),
        gmm_restarts=args.gmm_restarts,
        seed=args.seed,
    )


# ===== SUBCOMMANDS =====

def cmd_generate(args: argparse.Namespace) -> int:
    params = sbm_params(args.n, args.k, args.p_in, args.p_out, args.seed)
    graph, planted = generate_sbm(params)
    write_graph_file(args.out, graph, planted)
    logger.info(f"[CLI] Generated SBM n={params.n} k={params.k} seed={params.seed}: {graph.edge_count} edges")
    return EXIT_OK


def cmd_detect(args: argparse.Namespace) -> int:
    config = _detector_config(args)
    parsed = read_graph_file(args.in_path)
    result = detect_communities(parsed.graph, config)
    result_file = ResultFile.from_detection(result, config, parsed.partition)
    write_result_file(args.out, result_file)
    ari_text = f", ARI={result_file.ari:.4f}" if result_file.ari is not None else ""
    logger.info(f"[CLI] {result.community_count} communities ({result.termination.value}){ari_text}")
    return EXIT_OK


def cmd_histogram(args: argparse.Namespace) -> int:
    flow_config = _flow_config(args)
    parsed = read_graph_file(args.in_path)
    evolved = run_flow(parsed.graph, flow_config).graph
    curvature = foster_curvature(evolved)
    write_csv(args.out, histogram_frame(parsed.graph, evolved, curvature))
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace) -> int:
    methods = validate_methods(args.methods)
    grid = build_param_grid(args.n, args.k, args.p_in, args.p_out, args.seed)
    records = benchmark_runtime(grid, methods, args.reps, workers=args.workers)
    write_csv(args.out, records_frame(records))
    if args.summary_out:
        write_csv(args.summary_out, summarize_runtime(records))
    if not any(r.ok for r in records):
        logger.error(f"[CLI] All {len(records)} benchmark runs failed")
        return EXIT_RUNTIME_FAILURE
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    config = _detector_config(args)
    params = sbm_params(args.n, args.k, args.p_in, args.p_out, 0)
    seeds = parse_seeds(args.seeds)
    records = run_recovery_experiment(params, seeds, config)
    write_csv(args.out, recovery_frame(records))
    return EXIT_OK


# ===== PARSER =====

def _add_flow_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eta", type=float, default=DEFAULT_ETA, help="flow learning rate in (0, 1]")
    parser.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="minimum edge weight")
    parser.add_argument("--flow-iters", type=int, default=DEFAULT_FLOW_ITERATIONS, help="flow iterations per stage")


def _add_detector_flags(parser: argparse.ArgumentParser) -> None:
    _add_flow_flags(parser)
    parser.add_argument("--max-cycles", type=int, default=DEFAULT_MAX_CYCLES)
    parser.add_argument("--prune-side", choices=[side.value for side in PruneSide], default=DEFAULT_PRUNE_SIDE)
    parser.add_argument("--gmm-restarts", type=int, default=DEFAULT_GMM_RESTARTS,
                        help="extra random GMM initializations per cycle")
    parser.add_argument("--seed", type=int, default=0)


def _add_sbm_flags(parser: argparse.ArgumentParser, many: bool) -> None:
    nargs = "+" if many else None
    wrap = (lambda v: [v]) if many else (lambda v: v)
    parser.add_argument("--n", type=int, nargs=nargs, default=wrap(DEFAULT_SBM_N))
    parser.add_argument("--k", type=int, nargs=nargs, default=wrap(DEFAULT_SBM_K))
    parser.add_argument("--p-in", type=float, nargs=nargs, default=wrap(DEFAULT_SBM_P_IN))
    parser.add_argument("--p-out", type=float, nargs=nargs, default=wrap(DEFAULT_SBM_P_OUT))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ricci-foster",
        description="Community detection by Ricci-Foster curvature flow",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser("generate", help="sample an SBM graph file with its planted partition")
    _add_sbm_flags(generate, many=False)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--out", required=True)

    detect = sub.add_parser("detect", help="detect communities and write a JSON result file")
    detect.add_argument("--in", dest="in_path", required=True)
    detect.add_argument("--out", required=True)
    _add_detector_flags(detect)

    histogram = sub.add_parser("histogram", help="run the flow only and write per-edge weights")
    histogram.add_argument("--in", dest="in_path", required=True)
    histogram.add_argument("--out", required=True)
    _add_flow_flags(histogram)

    benchmark = sub.add_parser("benchmark", help="time the methods over an SBM grid")
    _add_sbm_flags(benchmark, many=True)
    benchmark.add_argument("--seed", type=int, default=0, help="base seed; repetition r uses seed + r")
    benchmark.add_argument("--methods", nargs="+", default=list(METHODS))
    benchmark.add_argument("--reps", type=int, default=1)
    benchmark.add_argument("--workers", type=int, default=None)
    benchmark.add_argument("--out", required=True)
    benchmark.add_argument("--summary-out", default=None, help="optional per-(method, n) summary CSV")

    experiment = sub.add_parser("experiment", help="SBM recovery sweep over seeds")
    _add_sbm_flags(experiment, many=False)
    experiment.add_argument("--seeds", default="0:20", help="start:stop or comma-separated seeds")
    experiment.add_argument("--out", required=True)
    _add_detector_flags(experiment)

    return parser


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "generate": cmd_generate,
    "detect": cmd_detect,
    "histogram": cmd_histogram,
    "benchmark": cmd_benchmark,
    "experiment": cmd_experiment,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except DisconnectedGraphError as e:
        logger.error(f"[CLI] {e}")
        return EXIT_PRECONDITION
    except (InvalidArgumentError, ValidationError, OSError) as e:
        logger.error(f"[CLI] Invalid input: {e}")
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.error(f"[CLI] {args.command} failed: {e}")
        logger.debug(traceback.format_exc())
        return EXIT_RUNTIME_FAILURE


if __name__ == "__main__":
    sys.exit(main())
