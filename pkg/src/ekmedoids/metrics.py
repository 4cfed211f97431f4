"""Distance metrics, the pairwise distance cache, and objective evaluation.

The clustering objective (total deviation) of a medoid set is the sum over
all points of the distance to their nearest medoid.  Every code path in the
package that needs an objective value funnels through :func:`evaluate_batch`
or helpers that reproduce its arithmetic exactly, so cached and uncached
evaluation, the fused solver, and the exhaustive oracle all agree
bit-for-bit.  Ties between medoid sets can therefore be broken by exact
float equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.spatial.distance import cdist

from .dataset import Dataset
from .errors import InvalidArguments, ShapeError, UnknownMetric

DEFAULT_CACHE_BUDGET = 2**31  # 2 GiB

# floats per evaluation scratch buffer; bounds peak memory of batch evaluation
_CHUNK_ELEMS = 1 << 23


@dataclass(frozen=True)
class Metric:
    """A named distance function with a vectorized pairwise form.

    `pairwise(X, Y)` returns the (len(X), len(Y)) matrix of distances and is
    the single source of truth; the scalar form evaluates `pairwise` on
    1-row matrices so both agree bit-exactly.  No symmetry or triangle
    inequality is assumed, only d(x, x) = 0 and finite nonnegative values
    on finite inputs.
    """

    name: str
    pairwise: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def __call__(self, x, y) -> float:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        y = np.atleast_2d(np.asarray(y, dtype=np.float64))
        if x.shape != y.shape or x.shape[0] != 1:
            raise ShapeError(
                f"metric arguments must be single points of equal dimension, "
                f"got shapes {x.shape} and {y.shape}"
            )
        return float(self.pairwise(x, y)[0, 0])


def _cdist_pairwise(scipy_name: str):
    def pairwise(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=np.float64)
        Y = np.ascontiguousarray(Y, dtype=np.float64)
        if X.shape[1] != Y.shape[1]:
            raise ShapeError(
                f"dimension mismatch: {X.shape[1]} vs {Y.shape[1]}"
            )
        return cdist(X, Y, metric=scipy_name)

    return pairwise


def _generic_pairwise(fn: Callable) -> Callable:
    # fallback for user metrics given only as a scalar function
    def pairwise(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        Y = np.asarray(Y, dtype=np.float64)
        if X.shape[1] != Y.shape[1]:
            raise ShapeError(
                f"dimension mismatch: {X.shape[1]} vs {Y.shape[1]}"
            )
        out = np.empty((X.shape[0], Y.shape[0]), dtype=np.float64)
        for i in range(X.shape[0]):
            for j in range(Y.shape[0]):
                out[i, j] = fn(X[i], Y[j])
        return out

    return pairwise


_REGISTRY: dict[str, Metric] = {}


def register_metric(name: str, fn: Callable = None, pairwise: Callable = None) -> Metric:
    """Register a metric under `name`; give a scalar fn, a pairwise form, or both."""
    if pairwise is None:
        if fn is None:
            raise InvalidArguments("register_metric needs fn or pairwise")
        pairwise = _generic_pairwise(fn)
    m = Metric(name=name, pairwise=pairwise)
    _REGISTRY[name] = m
    return m


def get_metric(name: str) -> Metric:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownMetric(
            f"unknown metric {name!r}; registered: {sorted(_REGISTRY)}"
        ) from None


def list_metrics() -> list[str]:
    return sorted(_REGISTRY)


register_metric("sqeuclidean", pairwise=_cdist_pairwise("sqeuclidean"))
register_metric("euclidean", pairwise=_cdist_pairwise("euclidean"))
register_metric("manhattan", pairwise=_cdist_pairwise("cityblock"))

DEFAULT_METRIC = "sqeuclidean"


def sq_euclidean(x, y) -> float:
    """Squared Euclidean distance between two points (the default metric)."""
    return get_metric("sqeuclidean")(x, y)


@dataclass
class DistanceCache:
    """Pairwise distances, precomputed when they fit the byte budget.

    Lookups return identical values in either mode; `columns` is the bulk
    access path used by all solvers.
    """

    dataset: Dataset
    metric: Metric
    mode: str  # "precomputed" | "on-the-fly"
    matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def columns(self, indices) -> np.ndarray:
        """Distance matrix slice d(x_i, x_j) for all points i, j in `indices`.

        Returns a float64 C-contiguous (N, len(indices)) array.
        """
        idx = np.asarray(indices, dtype=np.int64).ravel()
        if self.mode == "precomputed":
            return self.matrix[:, idx]
        pts = self.dataset.points
        return self.metric.pairwise(pts, pts[idx])

    def value(self, i: int, j: int) -> float:
        if self.mode == "precomputed":
            return float(self.matrix[i, j])
        pts = self.dataset.points
        return float(self.metric.pairwise(pts[i : i + 1], pts[j : j + 1])[0, 0])


def distance_cache(
    ds: Dataset, metric: Metric, budget_bytes: int = DEFAULT_CACHE_BUDGET
) -> DistanceCache:
    """Build a distance cache, precomputing the N x N matrix iff 8*N^2 <= budget."""
    if 8 * ds.n * ds.n <= budget_bytes:
        mat = metric.pairwise(ds.points, ds.points)
        return DistanceCache(ds, metric, "precomputed", mat)
    return DistanceCache(ds, metric, "on-the-fly")


def total_deviation(mins: np.ndarray) -> np.ndarray:
    """Sum per-configuration min-distances over all points, deterministically.

    `mins` is (N, m): entry [n, c] is the distance from point n to the
    nearest medoid of configuration c.  Each configuration is reduced as a
    contiguous length-N vector, so the summation order is fixed no matter
    how or where the mins were produced.
    """
    return np.ascontiguousarray(mins.T).sum(axis=1)


def evaluate_batch(ds: Dataset, configs, cache: DistanceCache) -> np.ndarray:
    """Objective values for a batch of medoid index configurations.

    `configs` is an (m, k) integer array, one sorted configuration per row.
    Evaluation is chunked to bound scratch memory; chunking does not affect
    the result bits.
    """
    configs = np.asarray(configs, dtype=np.int64)
    if configs.ndim != 2:
        raise ShapeError(f"configs must be 2-D, got ndim={configs.ndim}")
    m, k = configs.shape
    out = np.empty(m, dtype=np.float64)
    if m == 0:
        return out
    step = max(1, _CHUNK_ELEMS // max(1, ds.n * k))
    for lo in range(0, m, step):
        sub = configs[lo : lo + step]
        cols = cache.columns(sub.ravel())
        mins = cols.reshape(ds.n, sub.shape[0], k).min(axis=2)
        out[lo : lo + sub.shape[0]] = total_deviation(mins)
    return out


def _check_medoids(ds: Dataset, medoids) -> np.ndarray:
    med = np.asarray(medoids, dtype=np.int64).ravel()
    if med.size == 0:
        raise InvalidArguments("medoid list must be nonempty")
    if np.any(med < 0) or np.any(med >= ds.n):
        raise IndexError(f"medoid index out of range [0, {ds.n})")
    if med.size > 1 and np.any(np.diff(med) <= 0):
        raise InvalidArguments("medoid indices must be strictly increasing")
    return med


def evaluate_objective(ds: Dataset, medoids, cache: DistanceCache) -> float:
    """Total deviation of a sorted medoid index list (the clustering objective)."""
    med = _check_medoids(ds, medoids)
    return float(evaluate_batch(ds, med[None, :], cache)[0])


def assign(ds: Dataset, medoids, cache: DistanceCache) -> np.ndarray:
    """Label each point with the position of its nearest medoid.

    Labels index into the sorted medoid list; distance ties go to the
    smallest medoid index.
    """
    med = _check_medoids(ds, medoids)
    cols = cache.columns(med)
    return np.argmin(cols, axis=1)
