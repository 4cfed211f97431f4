import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekmedoids import (
    Dataset,
    DisjointnessViolation,
    EmptyDataset,
    InstanceTooLarge,
    InvalidArguments,
    RankOverflow,
    SolverParams,
    assign,
    distance_cache,
    evaluate_objective,
    get_metric,
    solve_ekm,
    solve_exhaustive,
    synthetic,
)
from ekmedoids.ekm import (
    Incumbent,
    cross_join_eval,
    estimate_solver_bytes,
    merge_eval,
    select_into,
)


def cache_for(ds, name="sqeuclidean"):
    return distance_cache(ds, get_metric(name), 2**31)


def solve_by_merge_eval(ds, k, cache):
    """Reference driver over the list-based fused operators; returns the
    incumbent after folding all points."""
    inc = Incumbent()
    acc = merge_eval([], k, ds, cache, inc)
    for p in range(ds.n):
        acc = merge_eval(merge_eval([p], k, ds, cache, inc), acc, k, ds, cache, inc)
    return inc, acc


def test_select_into_adopts_first_candidate():
    inc = Incumbent()
    select_into(inc, (0, 1), 5.0)
    assert inc.best_config == (0, 1)
    assert inc.best_objective == 5.0
    assert inc.evaluated_count == 1


def test_select_into_keeps_earlier_on_tie():
    inc = Incumbent()
    select_into(inc, (1, 3), 3.0)
    select_into(inc, (1, 4), 3.0)
    assert inc.best_config == (1, 3)
    assert inc.evaluated_count == 2


def test_cross_join_eval_completion_case(toy):
    # joining sizes 1 and k-1 completes every union: all evaluated, none kept
    cache = cache_for(toy)
    inc = Incumbent()
    out = cross_join_eval(
        [_ec((1,))], [_ec((3,))], 2, toy, cache, inc
    )
    assert out == []
    assert inc.evaluated_count == 1
    assert inc.best_objective == 3.0
    assert inc.best_config == (1, 3)


def test_cross_join_eval_unit_case(toy):
    cache = cache_for(toy)
    inc = Incumbent()
    l1 = [_ec((0,)), _ec((2,))]
    out = cross_join_eval(l1, [_ec(())], 3, toy, cache, inc)
    assert [e.config for e in out] == [(0,), (2,)]
    assert inc.evaluated_count == 0


def test_cross_join_eval_rejects_overlap(toy):
    cache = cache_for(toy)
    with pytest.raises(DisjointnessViolation):
        cross_join_eval([_ec((1, 2))], [_ec((2,))], 3, toy, cache, Incumbent())


def _ec(cfg):
    from ekmedoids.ekm import EvaluatedConfig

    return EvaluatedConfig(cfg, math.inf)


def test_merge_eval_base_cases(toy):
    cache = cache_for(toy)
    inc = Incumbent()
    base = merge_eval([], 2, toy, cache, inc)
    assert [[e.config for e in lvl] for lvl in base] == [[()]]
    single = merge_eval([4], 2, toy, cache, inc)
    assert [[e.config for e in lvl] for lvl in single] == [[()], [(4,)]]
    assert all(e.objective == math.inf for lvl in single for e in lvl)


def test_merge_eval_drains_complete_level(toy):
    cache = cache_for(toy)
    inc, acc = solve_by_merge_eval(toy, 2, cache)
    # retained store holds sizes 0..K-1 only, with binomial level sizes
    assert len(acc) == 2
    assert [len(lvl) for lvl in acc] == [1, 5]
    assert all(len(e.config) < 2 for lvl in acc for e in lvl)
    assert inc.evaluated_count == math.comb(5, 2)
    assert inc.best_config == (1, 3)
    assert inc.best_objective == 3.0


def test_merge_eval_matches_solver_on_random_instances():
    rng = np.random.default_rng(77)
    for _ in range(10):
        n = int(rng.integers(6, 13))
        k = int(rng.integers(1, 4))
        ds = synthetic(n, 2, min(k, n), int(rng.integers(2**32)))
        cache = cache_for(ds)
        inc, _ = solve_by_merge_eval(ds, k, cache)
        sol = solve_ekm(ds, SolverParams(k=k), cache=cache)
        assert inc.best_objective == sol.objective
        assert inc.best_config == tuple(sol.medoid_indices)
        assert inc.evaluated_count == sol.evaluated_configurations


def test_solve_toy(toy):
    sol = solve_ekm(toy, SolverParams(k=2))
    assert sol.medoid_indices.tolist() == [1, 3]
    assert sol.objective == 3.0
    assert sol.assignment.tolist() == [0, 0, 0, 1, 1]
    assert sol.evaluated_configurations == 10


def test_solve_tie_breaks_to_minimal_colex(toy):
    # {1,3} and {1,4} both cost 3; colex rank 4 < 7 decides
    cache = cache_for(toy)
    assert evaluate_objective(toy, [1, 4], cache) == 3.0
    sol = solve_ekm(toy, SolverParams(k=2), cache=cache)
    assert sol.medoid_indices.tolist() == [1, 3]


def test_solve_k_equals_n():
    ds = synthetic(7, 2, 2, seed=4)
    sol = solve_ekm(ds, SolverParams(k=7))
    assert sol.objective == 0.0
    assert sol.medoid_indices.tolist() == list(range(7))


def test_solve_k_one(toy):
    sol = solve_ekm(toy, SolverParams(k=1))
    assert sol.medoid_indices.tolist() == [2]
    assert sol.evaluated_configurations == 5


def test_solution_invariants_hold_exactly():
    ds = synthetic(24, 3, 3, seed=21)
    cache = cache_for(ds)
    sol = solve_ekm(ds, SolverParams(k=3), cache=cache)
    assert sol.objective == evaluate_objective(ds, sol.medoid_indices, cache)
    assert np.array_equal(sol.assignment, assign(ds, sol.medoid_indices, cache))
    assert sol.wall_time_seconds > 0.0


def test_frozen_oracle_instances():
    # expected values computed once by the independent oracle, then frozen
    ds = synthetic(20, 2, 3, 123)
    sol = solve_ekm(ds, SolverParams(k=3))
    assert sol.medoid_indices.tolist() == [1, 9, 11]
    assert sol.objective == pytest.approx(38.94505750062864, rel=1e-12)
    assert sol.evaluated_configurations == 1140

    ds = synthetic(12, 1, 2, 5)
    sol = solve_ekm(ds, SolverParams(k=2, metric="manhattan"))
    assert sol.medoid_indices.tolist() == [5, 6]
    assert sol.objective == pytest.approx(4.9291345181395245, rel=1e-12)

    ds = synthetic(16, 3, 2, 99)
    sol = solve_ekm(ds, SolverParams(k=4, metric="euclidean"))
    assert sol.medoid_indices.tolist() == [5, 10, 13, 14]
    assert sol.objective == pytest.approx(13.664763564353969, rel=1e-12)


def test_counting_and_level_sizes():
    ds = synthetic(12, 2, 3, seed=8)
    sol = solve_ekm(ds, SolverParams(k=3), record_level_sizes=True)
    assert sol.evaluated_configurations == math.comb(12, 3)
    # after step n the retained store holds exactly C(n, j) partials
    for step, counts in enumerate(sol.level_sizes):
        n_seen = step + 1
        assert counts == [math.comb(n_seen, j) for j in range(3)]


def test_determinism():
    ds = synthetic(15, 3, 2, seed=31)
    a = solve_ekm(ds, SolverParams(k=2))
    b = solve_ekm(ds, SolverParams(k=2))
    assert a.objective == b.objective
    assert np.array_equal(a.medoid_indices, b.medoid_indices)
    assert np.array_equal(a.assignment, b.assignment)


def test_monotone_in_k():
    ds = synthetic(14, 2, 3, seed=2)
    cache = cache_for(ds)
    objectives = [
        solve_ekm(ds, SolverParams(k=k), cache=cache).objective for k in range(1, 6)
    ]
    assert all(b <= a for a, b in zip(objectives, objectives[1:]))


def test_standardize_param():
    ds = synthetic(10, 2, 2, seed=17)
    from ekmedoids import standardize

    direct = solve_ekm(standardize(ds), SolverParams(k=2))
    flagged = solve_ekm(ds, SolverParams(k=2, standardize=True))
    assert flagged.objective == direct.objective
    assert np.array_equal(flagged.medoid_indices, direct.medoid_indices)


def test_validation_errors():
    ds = synthetic(5, 1, 1, seed=0)
    with pytest.raises(InvalidArguments):
        solve_ekm(ds, SolverParams(k=0))
    with pytest.raises(InvalidArguments):
        solve_ekm(ds, SolverParams(k=6))
    empty = Dataset(points=np.empty((0, 2)))
    with pytest.raises(EmptyDataset):
        solve_ekm(empty, SolverParams(k=1))


def test_rank_overflow_refused():
    ds = synthetic(1000, 1, 2, seed=0)
    with pytest.raises(RankOverflow):
        solve_ekm(ds, SolverParams(k=31))  # C(1000, 31) >= 2^63


def test_memory_estimate_refusal():
    ds = synthetic(100, 2, 3, seed=0)
    with pytest.raises(InstanceTooLarge) as exc:
        solve_ekm(ds, SolverParams(k=3, memory_budget_bytes=10_000))
    assert exc.value.estimate == estimate_solver_bytes(100, 3)
    assert exc.value.estimate > 10_000


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 16), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_matches_oracle(n, k, seed):
    ds = synthetic(n, 2, min(k, n), seed)
    cache = cache_for(ds)
    a = solve_ekm(ds, SolverParams(k=k), cache=cache)
    b = solve_exhaustive(ds, SolverParams(k=k), cache=cache)
    assert a.objective == b.objective
    assert np.array_equal(a.medoid_indices, b.medoid_indices)
