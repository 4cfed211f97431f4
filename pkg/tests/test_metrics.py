import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekmedoids import (
    Dataset,
    InvalidArguments,
    ShapeError,
    UnknownMetric,
    assign,
    distance_cache,
    evaluate_objective,
    get_metric,
    list_metrics,
    register_metric,
    sq_euclidean,
    synthetic,
)
from ekmedoids.metrics import evaluate_batch, total_deviation


def cache_for(ds, name="sqeuclidean", budget=2**31):
    return distance_cache(ds, get_metric(name), budget)


def test_sq_euclidean_examples():
    assert sq_euclidean([0.0], [3.0]) == 9.0
    assert sq_euclidean([1.0, 2.0], [4.0, 6.0]) == 25.0
    x = np.array([2.5, -1.0, 7.0])
    assert sq_euclidean(x, x) == 0.0


def test_sq_euclidean_dimension_mismatch():
    with pytest.raises(ShapeError):
        sq_euclidean([1.0, 2.0], [1.0])


def test_registry_names_and_unknown():
    assert set(list_metrics()) >= {"sqeuclidean", "euclidean", "manhattan"}
    with pytest.raises(UnknownMetric) as exc:
        get_metric("cosine")
    # the error names what is actually registered
    assert "sqeuclidean" in str(exc.value)


def test_register_custom_metric():
    register_metric("l1_halved", lambda x, y: 0.5 * np.abs(np.subtract(x, y)).sum())
    m = get_metric("l1_halved")
    assert m([0.0], [4.0]) == 2.0


def test_known_metric_values():
    e = get_metric("euclidean")
    m = get_metric("manhattan")
    assert e([1.0, 2.0], [4.0, 6.0]) == 5.0
    assert m([1.0, 2.0], [4.0, 6.0]) == 7.0


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=5),
    st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=5),
    st.sampled_from(["sqeuclidean", "euclidean", "manhattan"]),
)
def test_metric_axioms(xs, ys, name):
    # d(x, x) = 0; d(x, y) >= 0 and finite
    d = min(len(xs), len(ys))
    x, y = xs[:d], ys[:d]
    m = get_metric(name)
    assert m(x, x) == 0.0
    v = m(x, y)
    assert v >= 0.0 and np.isfinite(v)


def test_cache_precomputed_small():
    ds = synthetic(3, 2, 1, seed=0)
    c = cache_for(ds, budget=2**30)
    assert c.mode == "precomputed"
    assert c.matrix.shape == (3, 3)
    assert np.all(np.diag(c.matrix) == 0.0)
    assert np.array_equal(c.matrix, c.matrix.T)  # sq-euclidean is symmetric


def test_cache_threshold():
    # 8 * 100000^2 = 8e10 bytes exceeds a 2 GiB budget
    pts = np.zeros((100000, 1))
    pts[:, 0] = np.arange(100000)
    ds = Dataset(points=pts)
    c = distance_cache(ds, get_metric("sqeuclidean"), 2**31)
    assert c.mode == "on-the-fly"
    assert c.matrix is None


def test_cache_lookup_equals_direct_metric():
    ds = synthetic(40, 3, 2, seed=3)
    m = get_metric("manhattan")
    pre = distance_cache(ds, m, 2**31)
    fly = distance_cache(ds, m, 0)
    rng = np.random.default_rng(0)
    for _ in range(100):
        i, j = rng.integers(0, ds.n, size=2)
        direct = m(ds.points[i], ds.points[j])
        assert pre.value(i, j) == direct
        assert fly.value(i, j) == direct


def test_cache_modes_agree_bit_exactly():
    ds = synthetic(25, 4, 3, seed=7)
    pre = cache_for(ds, budget=2**31)
    fly = cache_for(ds, budget=0)
    idx = np.array([0, 5, 24])
    assert np.array_equal(pre.columns(idx), fly.columns(idx))


def test_evaluate_objective_all_points_zero():
    ds = synthetic(12, 2, 3, seed=1)
    c = cache_for(ds)
    assert evaluate_objective(ds, np.arange(12), c) == 0.0


def test_evaluate_objective_toy(toy):
    c = cache_for(toy)
    # hand sum: 1 + 0 + 1 + 0 + 1
    assert evaluate_objective(toy, [1, 3], c) == 3.0


def test_evaluate_objective_validation(toy):
    c = cache_for(toy)
    with pytest.raises(InvalidArguments):
        evaluate_objective(toy, [], c)
    with pytest.raises(IndexError):
        evaluate_objective(toy, [1, 7], c)
    with pytest.raises(InvalidArguments):
        evaluate_objective(toy, [3, 1], c)  # must be sorted unique


def test_objective_monotone_in_medoid_set():
    ds = synthetic(20, 3, 2, seed=11)
    c = cache_for(ds)
    medoids = [2, 9, 15]
    base = evaluate_objective(ds, medoids, c)
    for extra in range(20):
        if extra in medoids:
            continue
        grown = sorted(medoids + [extra])
        assert evaluate_objective(ds, grown, c) <= base


def test_objective_equals_clusterwise_sum():
    # Eq-of-two-forms: total deviation == sum over clusters of distances
    # to the cluster's medoid
    ds = synthetic(30, 2, 3, seed=5)
    c = cache_for(ds)
    medoids = np.array([3, 11, 22])
    labels = assign(ds, medoids, c)
    m = get_metric("sqeuclidean")
    parts = 0.0
    for pos, med in enumerate(medoids):
        members = np.where(labels == pos)[0]
        parts += sum(m(ds.points[i], ds.points[med]) for i in members)
    assert parts == pytest.approx(evaluate_objective(ds, medoids, c), rel=1e-12)


def test_assign_single_medoid(toy):
    c = cache_for(toy)
    assert assign(toy, [2], c).tolist() == [0] * 5


def test_assign_toy(toy):
    c = cache_for(toy)
    assert assign(toy, [1, 3], c).tolist() == [0, 0, 0, 1, 1]


def test_assign_tie_goes_to_smaller_medoid():
    # point 1 is equidistant from medoids 0 and 2
    ds = Dataset(points=np.array([[0.0], [1.0], [2.0]]))
    c = cache_for(ds)
    assert assign(ds, [0, 2], c).tolist() == [0, 0, 1]


def test_evaluate_batch_matches_objective():
    ds = synthetic(18, 2, 2, seed=13)
    c = cache_for(ds)
    configs = np.array([[0, 1], [3, 9], [10, 17], [2, 5]])
    got = evaluate_batch(ds, configs, c)
    want = [evaluate_objective(ds, cfg, c) for cfg in configs]
    assert got.tolist() == want


def test_total_deviation_grouping_is_batch_invariant():
    # the per-config sum must not depend on how configs are batched
    rng = np.random.default_rng(2)
    mins = rng.random((50, 7))
    whole = total_deviation(mins)
    split = np.concatenate([total_deviation(mins[:, :3]), total_deviation(mins[:, 3:])])
    assert np.array_equal(whole, split)
