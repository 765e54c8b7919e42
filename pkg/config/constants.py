"""
Algorithm defaults and numeric tolerances.

Every default used by the config models and the CLI flags is defined here,
so a ResultFile config echo always matches what the code actually ran.
"""

# ===== RICCI-FOSTER FLOW =====
DEFAULT_ETA = 0.3              # learning rate, must stay in (0, 1]
DEFAULT_EPSILON = 1e-6         # minimum edge weight floor
DEFAULT_FLOW_ITERATIONS = 15
CURVATURE_CLIP = 1.0           # curvature clipped to [-CURVATURE_CLIP, CURVATURE_CLIP]

# ===== PSEUDOINVERSE =====
EIGEN_CUTOFF_RATIO = 1e-10     # eigenvalues below ratio * lambda_max are treated as zero

# ===== GAUSSIAN MIXTURE =====
DEFAULT_GMM_TOL = 1e-8
DEFAULT_GMM_MAX_ITER = 500
DEFAULT_GMM_RESTARTS = 0
GMM_MIN_VALUES = 4
VARIANCE_FLOOR_RATIO = 1e-10   # floor = ratio * (sample variance + VARIANCE_FLOOR_OFFSET)
VARIANCE_FLOOR_OFFSET = 1e-12
DEGENERATE_SPREAD_RATIO = 1e-9   # std < ratio * max(1, |mean|)
DEGENERATE_MEAN_GAP_RATIO = 1e-6  # |mu_1 - mu_2| < ratio * std

# ===== DETECTOR =====
DEFAULT_MAX_CYCLES = 10
DEFAULT_PRUNE_SIDE = "high"
MIN_PRUNE_EDGES = 4

# ===== SPECTRAL BASELINE =====
KMEANS_RESTARTS = 10
KMEANS_MAX_ITER = 300
KMEANS_TOL = 1e-8

# ===== SBM / BENCHMARK =====
DEFAULT_SBM_N = 60
DEFAULT_SBM_K = 3
DEFAULT_SBM_P_IN = 0.7
DEFAULT_SBM_P_OUT = 0.07
RESAMPLE_SEED_STRIDE = 1_000_003
RECOVERY_ARI = 0.9            # a seed counts as recovered at ARI >= this
SEPARATION_P_VALUE = 1e-6     # first-cycle Welch p-value below this counts as separated
METHOD_FOSTER_FLOW = "foster_flow"
METHOD_SPECTRAL = "spectral"

# ===== FILE FORMATS =====
FLOAT_FORMAT = "%.17g"         # 17 significant digits round-trip every double
BENCHMARK_COLUMNS = [
    "method", "n", "k", "p_in", "p_out", "seed",
    "edge_count", "wall_time_seconds", "ari", "error",
]
HISTOGRAM_COLUMNS = ["edge_u", "edge_v", "weight_before", "weight_after", "curvature_final"]
EXPERIMENT_COLUMNS = [
    "seed", "edge_count", "ari", "community_count", "termination",
    "first_cycle_p_value", "inter_mean_weight", "intra_mean_weight",
]

# ===== CLI EXIT CODES =====
EXIT_OK = 0
EXIT_RUNTIME_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_PRECONDITION = 3
