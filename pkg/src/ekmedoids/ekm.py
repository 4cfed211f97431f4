"""The fused exact solver: evaluate-while-generating with a single incumbent.

The unfused machinery in `generator` materializes every combination before
evaluation.  Here the evaluator is fused into the level-store merge (a
configuration reaching the target size K is scored immediately) and the
selector is fused on top (scored configurations are streamed into one
incumbent and never retained).  Only partial configurations of size < K are
stored, so for fixed K the search over all C(N, K) medoid sets runs in
O(N^{K+1}) time and O(N^{K-1}) space.

Two implementations share these semantics: list-based `cross_join_eval` /
`merge_eval`, which mirror the unfused operators one-to-one and exist for
testing, and the array-based driver `solve_ekm`, which exploits that per
point p the newly completed configurations are exactly the stored size
K-1 partials extended by p, evaluated as one vectorized batch.

Tie rule: the incumbent is replaced only on a strictly smaller objective.
Configurations complete in colexicographic order, so the solver returns
the minimal-colex optimal medoid set, deterministically.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dataset import Dataset, standardize
from .errors import (
    DisjointnessViolation,
    EmptyDataset,
    InstanceTooLarge,
    InvalidArguments,
    RankOverflow,
)
from .generator import Config
from .metrics import (
    DEFAULT_CACHE_BUDGET,
    DEFAULT_METRIC,
    DistanceCache,
    assign,
    distance_cache,
    evaluate_batch,
    evaluate_objective,
    get_metric,
    total_deviation,
)

_INT64_MAX = 2**63 - 1

DEFAULT_MEMORY_BUDGET = 2**32  # 4 GiB

# floats per evaluation scratch buffer, as in metrics.evaluate_batch
_CHUNK_ELEMS = 1 << 23


@dataclass(frozen=True)
class EvaluatedConfig:
    """A configuration tupled with its objective; +inf marks a partial one."""

    config: Config
    objective: float


@dataclass
class Incumbent:
    """Best complete configuration seen so far, plus the evaluation counter."""

    best_config: Optional[Config] = None
    best_objective: float = math.inf
    evaluated_count: int = 0


@dataclass(frozen=True)
class SolverParams:
    """Solver knobs: cluster count, metric name, budgets, standardize flag."""

    k: int
    metric: str = DEFAULT_METRIC
    cache_budget_bytes: int = DEFAULT_CACHE_BUDGET
    standardize: bool = False
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET


@dataclass
class Solution:
    """An exact or heuristic clustering result."""

    medoid_indices: np.ndarray
    objective: float
    assignment: np.ndarray
    wall_time_seconds: float
    evaluated_configurations: int
    # per-step retained level sizes, filled only when instrumentation is on
    level_sizes: Optional[list[list[int]]] = field(default=None, repr=False)


def select_into(incumbent: Incumbent, candidate: Config, value: float) -> Incumbent:
    """Stream one evaluated complete configuration into the incumbent.

    Replaces the incumbent only on a strictly smaller objective; an exact
    tie keeps the earlier (lower colex rank) configuration.
    """
    incumbent.evaluated_count += 1
    if value < incumbent.best_objective:
        incumbent.best_objective = value
        incumbent.best_config = tuple(candidate)
    return incumbent


def cross_join_eval(
    l1: list[EvaluatedConfig],
    l2: list[EvaluatedConfig],
    k: int,
    ds: Dataset,
    cache: DistanceCache,
    incumbent: Incumbent,
) -> list[EvaluatedConfig]:
    """Cross-join that scores size-k unions instead of retaining them.

    Unions of size k are evaluated in a batch, streamed into the incumbent
    in l1-major order, and dropped; smaller unions come back as partials
    with the +inf sentinel.
    """
    partials: list[EvaluatedConfig] = []
    complete: list[Config] = []
    for e1 in l1:
        for e2 in l2:
            u = e1.config + e2.config
            if len(set(u)) != len(u):
                raise DisjointnessViolation(
                    f"configs {e1.config} and {e2.config} share an index"
                )
            u = tuple(sorted(u))
            if len(u) == k:
                complete.append(u)
            else:
                partials.append(EvaluatedConfig(u, math.inf))
    if complete:
        values = evaluate_batch(ds, np.array(complete, dtype=np.int64), cache)
        for cfg, val in zip(complete, values):
            select_into(incumbent, cfg, float(val))
    return partials


def merge_eval(*args) -> list[list[EvaluatedConfig]]:
    """Fused merge, pattern-matched like `generator.merge`.

    merge_eval([], k, ds, cache, inc)   -> [[((), inf)]]
    merge_eval([p], k, ds, cache, inc)  -> [[((), inf)], [((p,), inf)]]
    merge_eval(la, lb, k, ds, cache, inc)
        -> convolution over cross_join_eval, truncated at k; size-k level
           is drained into the incumbent so only levels 0 .. k-1 return.

    Base-case operand stores carry the inf sentinel even when k == 1; their
    entries are scored once a join completes them.
    """
    if len(args) == 5:
        a, k, ds, cache, incumbent = args
        if a == []:
            return [[EvaluatedConfig((), math.inf)]]
        if isinstance(a, (list, tuple)) and len(a) == 1 and isinstance(a[0], int):
            return [
                [EvaluatedConfig((), math.inf)],
                [EvaluatedConfig((a[0],), math.inf)],
            ]
        raise InvalidArguments(
            f"base merge_eval takes [] or a singleton point, got {a!r}"
        )
    if len(args) == 6:
        la, lb, k, ds, cache, incumbent = args
        out: list[list[EvaluatedConfig]] = []
        for t in range(k + 1):
            level: list[EvaluatedConfig] = []
            for i in range(t + 1):
                j = t - i
                if i < len(la) and j < len(lb):
                    level.extend(
                        cross_join_eval(la[i], lb[j], k, ds, cache, incumbent)
                    )
            out.append(level)
        return out[:k]
    raise InvalidArguments(f"merge_eval takes 5 or 6 arguments, got {len(args)}")


def estimate_solver_bytes(n: int, k: int) -> int:
    """Upper estimate of solver-owned memory for an (n, k) instance."""
    levels = sum(math.comb(n, j) * j * 8 for j in range(1, k))
    scratch = 3 * _CHUNK_ELEMS * 8
    return levels + scratch


def _validate_instance(ds: Dataset, k: int) -> None:
    if ds.n == 0:
        raise EmptyDataset("cannot cluster an empty dataset")
    if k < 1 or k > ds.n:
        raise InvalidArguments(f"need 1 <= K <= N, got K={k}, N={ds.n}")
    if math.comb(ds.n, k) > _INT64_MAX:
        raise RankOverflow(
            f"C({ds.n}, {k}) = {math.comb(ds.n, k)} exceeds the 64-bit "
            f"configuration counter"
        )


def solve_ekm(
    ds: Dataset,
    params: SolverParams,
    cache: Optional[DistanceCache] = None,
    record_level_sizes: bool = False,
) -> Solution:
    """Exact K-medoids by the fused recursion over points 0 .. N-1.

    Returns the global optimum of the clustering objective; ties between
    optimal medoid sets resolve to the minimal colex rank.  Passing a
    prebuilt `cache` keeps its construction out of the reported wall time.
    Refuses instances whose partial-configuration store would exceed the
    memory budget, reporting the estimate instead of exhausting memory.
    """
    k = int(params.k)
    _validate_instance(ds, k)
    estimate = estimate_solver_bytes(ds.n, k)
    if estimate > params.memory_budget_bytes:
        raise InstanceTooLarge(
            f"estimated {estimate} bytes of partial-configuration storage "
            f"for N={ds.n}, K={k} exceeds the {params.memory_budget_bytes} "
            f"byte budget",
            estimate=estimate,
        )
    if params.standardize:
        ds = standardize(ds)
        cache = None
    t0 = time.perf_counter()
    if cache is None:
        cache = distance_cache(ds, get_metric(params.metric), params.cache_budget_bytes)
    n = ds.n
    # preallocated level stores for sizes 1 .. k-1; level 0 is the implicit
    # empty configuration
    capacity = [math.comb(n, j) for j in range(k)]
    arrays = [np.empty((capacity[j], j), dtype=np.int64) for j in range(k)]
    counts = [1] + [0] * (k - 1)
    chunk = max(1, _CHUNK_ELEMS // max(1, n * k))
    best_val = math.inf
    best_cfg: Optional[np.ndarray] = None
    best_p = -1
    evaluated = 0
    level_log: Optional[list[list[int]]] = [] if record_level_sizes else None
    for p in range(n):
        # score the configurations completed by p: every stored size k-1
        # partial extended with p, in store (= colex) order
        c = counts[k - 1]
        top = arrays[k - 1]
        if c > 0:
            col_p = cache.columns(np.array([p], dtype=np.int64))
            for lo in range(0, c, chunk):
                sub = top[lo : min(lo + chunk, c)]
                if k == 1:
                    mins = col_p
                else:
                    cols = cache.columns(sub.ravel())
                    mins = cols.reshape(n, sub.shape[0], k - 1).min(axis=2)
                    mins = np.minimum(mins, col_p)
                values = total_deviation(mins)
                jmin = int(np.argmin(values))
                vmin = float(values[jmin])
                if vmin < best_val:
                    best_val = vmin
                    best_cfg = sub[jmin].copy()
                    best_p = p
                evaluated += sub.shape[0]
        # extend the store: append each size j-1 partial + p to level j,
        # after the retained prefix (keeps colex order)
        for j in range(k - 1, 0, -1):
            m = counts[j - 1]
            if m == 0:
                continue
            dst = arrays[j]
            lo = counts[j]
            if j > 1:
                dst[lo : lo + m, : j - 1] = arrays[j - 1][:m]
            dst[lo : lo + m, j - 1] = p
            counts[j] += m
        if level_log is not None:
            level_log.append(list(counts))
    if best_cfg is None:
        best_cfg = np.empty(0, dtype=np.int64)
    medoids = np.append(best_cfg, best_p).astype(np.int64)
    check = evaluate_objective(ds, medoids, cache)
    if check != best_val:
        raise AssertionError(
            f"objective drift: streamed {best_val!r} vs recomputed {check!r}"
        )
    labels = assign(ds, medoids, cache)
    wall = time.perf_counter() - t0
    return Solution(
        medoid_indices=medoids,
        objective=best_val,
        assignment=labels,
        wall_time_seconds=wall,
        evaluated_configurations=evaluated,
        level_sizes=level_log,
    )
