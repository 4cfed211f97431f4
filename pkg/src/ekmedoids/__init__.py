"""Exact K-medoids clustering via a fused combination generator.

The solver in `ekm` finds the provably optimal medoid set by folding
evaluation and selection into the recursive combination generator, so
every size-K configuration is scored but never stored.  `oracle` holds
an independent brute-force check, `baselines` the classic approximate
algorithms, and `bench` the scaling/comparison harness.
"""

from .baselines import BaselineParams, clarans, fasterpam, pam
from .bench import (
    CompareRow,
    ScalingRecord,
    compare,
    fit_slope,
    run_scaling,
    scaling_csv_text,
    scaling_summary,
    write_scaling_csv,
)
from .dataset import Dataset, load_csv, save_csv, standardize, synthetic
from .ekm import Solution, SolverParams, solve_ekm
from .errors import (
    DisjointnessViolation,
    EmptyDataset,
    ExactKMedoidsError,
    InstanceTooLarge,
    InsufficientData,
    InvalidArguments,
    ParseError,
    RankOverflow,
    ShapeError,
    UnknownMetric,
)
from .generator import (
    LevelStore,
    cross_join,
    gen_combs,
    merge,
    rank_colex,
    unrank_colex,
)
from .metrics import (
    DistanceCache,
    Metric,
    assign,
    distance_cache,
    evaluate_batch,
    evaluate_objective,
    get_metric,
    list_metrics,
    register_metric,
    sq_euclidean,
)
from .oracle import solve_exhaustive

__version__ = "0.1.0"

__all__ = [
    "BaselineParams",
    "CompareRow",
    "Dataset",
    "DisjointnessViolation",
    "DistanceCache",
    "EmptyDataset",
    "ExactKMedoidsError",
    "InstanceTooLarge",
    "InsufficientData",
    "InvalidArguments",
    "LevelStore",
    "Metric",
    "ParseError",
    "RankOverflow",
    "ScalingRecord",
    "ShapeError",
    "Solution",
    "SolverParams",
    "UnknownMetric",
    "assign",
    "clarans",
    "compare",
    "cross_join",
    "distance_cache",
    "evaluate_batch",
    "evaluate_objective",
    "fasterpam",
    "fit_slope",
    "gen_combs",
    "get_metric",
    "list_metrics",
    "load_csv",
    "merge",
    "pam",
    "rank_colex",
    "register_metric",
    "run_scaling",
    "save_csv",
    "scaling_csv_text",
    "scaling_summary",
    "solve_ekm",
    "solve_exhaustive",
    "sq_euclidean",
    "standardize",
    "synthetic",
    "unrank_colex",
    "write_scaling_csv",
]
