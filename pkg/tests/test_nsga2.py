import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from evohab.benchmarks import lookup
from evohab.nsga2 import (
    LengthMismatch,
    MultiObjectiveProblem,
    crowded_order,
    crowding_distance,
    dominates,
    fast_non_dominated_sort,
    nsga2_run,
    rank_and_crowd,
    survivors,
)
from evohab.proto_ga import Direction, GaConfig, SearchDomain

from oracles import brute_dominates, brute_force_ranks, fronts_from_ranks, hand_crowding, pairwise_nondominated

MIN, MAX = Direction.MINIMIZE, Direction.MAXIMIZE

vectors = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


class TestDominates:
    def test_strictly_better(self):
        assert dominates((1, 2), (2, 3), (MIN, MIN))

    def test_irreflexive(self):
        assert not dominates((1, 2), (1, 2), (MIN, MIN))

    def test_incomparable(self):
        assert not dominates((1, 3), (2, 2), (MIN, MIN))
        assert not dominates((2, 2), (1, 3), (MIN, MIN))

    def test_maximize_flips(self):
        assert dominates((2, 3), (1, 2), (MAX, MAX))
        assert dominates((1, 3), (2, 2), (MIN, MAX))

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            dominates((1, 2), (1, 2, 3))
        with pytest.raises(LengthMismatch):
            dominates((1, 2), (1, 2), (MIN,))

    @given(vectors, vectors, vectors)
    def test_strict_partial_order(self, a, b, c):
        assert not dominates(a, a)
        if dominates(a, b):
            assert not dominates(b, a)
        if dominates(a, b) and dominates(b, c):
            assert dominates(a, c)
        assert dominates(a, b) == brute_dominates(a, b, [1, 1, 1])


class TestSort:
    def test_chain(self):
        assert fast_non_dominated_sort(np.array([[1, 1], [2, 2], [3, 3]]), (MIN, MIN)) == [[0], [1], [2]]

    def test_single_front(self):
        fronts = fast_non_dominated_sort(np.array([[1, 3], [3, 1], [2, 2]]), (MIN, MIN))
        assert len(fronts) == 1 and sorted(fronts[0]) == [0, 1, 2]
        assert pairwise_nondominated([[1, 3], [3, 1], [2, 2]])

    def test_empty(self):
        assert fast_non_dominated_sort(np.empty((0, 2))) == []

    def test_matches_oracle_on_fifty_points(self, rng):
        F = rng.random((50, 2))
        got = [set(f) for f in fast_non_dominated_sort(F, (MIN, MIN))]
        assert got == fronts_from_ranks(brute_force_ranks(F, [1, 1]))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 60), st.integers(2, 3), st.integers(0, 2**32 - 1), st.booleans())
    def test_oracle_and_permutation_invariance(self, n, m, seed, ties):
        r = np.random.default_rng(seed)
        F = r.integers(0, 5, (n, m)).astype(float) if ties else r.random((n, m))
        dirs = tuple(r.choice([MIN, MAX]) for _ in range(m))
        signs = [d.sign for d in dirs]
        got = [set(f) for f in fast_non_dominated_sort(F, dirs)]
        assert got == fronts_from_ranks(brute_force_ranks(F, signs))
        perm = r.permutation(n)
        permuted = [{int(perm[i]) for i in f} for f in fast_non_dominated_sort(F[perm], dirs)]
        assert permuted == got


class TestCrowding:
    def test_two_points(self):
        assert np.all(np.isinf(crowding_distance(np.array([[0, 1], [1, 0]]))))

    def test_three_point_front(self):
        d = crowding_distance(np.array([[0, 2], [1, 1], [2, 0]]), (MIN, MIN))
        assert d[1] == pytest.approx(2.0)
        assert math.isinf(d[0]) and math.isinf(d[2])

    def test_identical_vectors(self):
        d = crowding_distance(np.ones((5, 2)))
        assert np.isinf(d).sum() == 2
        assert np.all(d[~np.isinf(d)] == 0)

    def test_empty_front(self):
        with pytest.raises(ValueError):
            crowding_distance(np.empty((0, 2)))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.tuples(st.floats(0, 10), st.floats(0, 10)), min_size=1, max_size=30))
    def test_matches_hand_evaluation(self, pts):
        got = crowding_distance(np.array(pts))
        want = hand_crowding(pts)
        assert np.allclose(got, want, equal_nan=False)


def test_crowded_order_prefers_rank_then_spread():
    ranks = np.array([1, 0, 0, 0])
    crowd = np.array([np.inf, 0.5, np.inf, 1.0])
    assert crowded_order(ranks, crowd).tolist() == [2, 3, 1, 0]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 80), st.integers(0, 2**32 - 1))
def test_survival_never_drops_rank_zero_for_worse(n, seed):
    r = np.random.default_rng(seed)
    F = r.integers(0, 6, (n, 2)).astype(float)
    keep = survivors(F, max(1, n // 2))
    ranks, _ = rank_and_crowd(F)
    dropped_rank0 = (ranks == 0) & ~np.isin(np.arange(n), keep)
    if dropped_rank0.any():
        assert np.all(ranks[keep] == 0)


def test_problem_needs_two_objectives():
    with pytest.raises(ValueError):
        MultiObjectiveProblem((lambda X: X[..., 0],), (MIN,), SearchDomain.box([(0, 1)]))


class TestRun:
    def test_schaffer1_front_on_analytic_curve(self):
        res = nsga2_run(lookup("schaffer1").problem, GaConfig(generations=150, seed=5))
        F = res.front.objectives
        assert F[:, 0].min() < 0.05 and F[:, 0].max() > 3.9
        assert np.allclose(F[:, 1], (np.sqrt(F[:, 0]) - 2) ** 2, atol=1e-3)
        assert np.all(F[:, 0] <= 4 + 1e-9)

    def test_front_is_feasible_and_nondominated(self):
        problem = lookup("binh-korn").problem
        res = nsga2_run(problem, GaConfig(population_size=60, generations=60, seed=2))
        assert problem.feasible(res.front.genes).all()
        assert pairwise_nondominated(res.front.objectives.tolist())
        assert all(m.rank == 0 for m in res.front.members)
        assert len(res.population) == 60

    def test_identical_objectives_collapse(self):
        f = lambda X: (np.asarray(X) ** 2).sum(axis=-1)
        problem = MultiObjectiveProblem((f, f), (MIN, MIN), SearchDomain.box([(-1, 1)] * 2))
        res = nsga2_run(problem, GaConfig(population_size=40, generations=80, seed=0))
        F = res.front.objectives
        assert np.ptp(F[:, 0]) < 1e-6

    def test_deterministic(self):
        problem = lookup("ctp1").problem
        a = nsga2_run(problem, GaConfig(population_size=40, generations=30, seed=9))
        b = nsga2_run(problem, GaConfig(population_size=40, generations=30, seed=9))
        assert np.array_equal(a.front.objectives, b.front.objectives)
