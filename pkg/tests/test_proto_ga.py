import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from evohab.benchmarks import lookup, rastrigin
from evohab.proto_ga import (
    Constraint,
    Direction,
    GaConfig,
    Individual,
    InitializationExhausted,
    Population,
    Problem,
    ReproductionExhausted,
    SearchDomain,
    evolve_step,
    init_population,
    reproduce,
    reproduce_batch,
    run,
)

RASTRIGIN = lookup("rastrigin").problem
MISHRA_BIRD = lookup("mishra-bird").problem


def sphere_problem(direction=Direction.MINIMIZE, constraints=()):
    return Problem(lambda X: (np.asarray(X) ** 2).sum(axis=-1), SearchDomain.box([(-1, 1)] * 2),
                   direction, constraints)


class TestConfigAndDomain:
    def test_odd_population_rejected(self):
        with pytest.raises(ValueError, match="even"):
            GaConfig(population_size=201)

    @pytest.mark.parametrize("kwargs", [{"sigma_growth": 1.0}, {"sigma_fraction": 1.0},
                                        {"max_rejections": 0}, {"seed": -1}])
    def test_invalid_config(self, kwargs):
        with pytest.raises(ValueError):
            GaConfig(**kwargs)

    def test_domain_requires_ordered_bounds(self):
        with pytest.raises(ValueError):
            SearchDomain.box([(1, 1)])
        with pytest.raises(ValueError):
            SearchDomain(np.zeros(2), np.ones(3))

    def test_base_sigma_is_domain_relative(self):
        assert np.allclose(GaConfig().base_sigma(RASTRIGIN.domain), 0.05 * 10.24)


class TestInitPopulation:
    def test_rastrigin(self):
        pop = init_population(RASTRIGIN, GaConfig(seed=42), np.random.default_rng(42))
        assert len(pop) == 200
        assert np.all(np.abs(pop.genes) <= 5.12)
        assert np.all(pop.fitness >= 0)
        assert np.array_equal(pop.fitness, rastrigin(pop.genes))

    def test_mishra_bird_all_feasible(self, rng):
        pop = init_population(MISHRA_BIRD, GaConfig(), rng)
        x, y = pop.genes.T
        assert np.all((x + 5) ** 2 + (y + 5) ** 2 < 25)

    def test_unconstrained_single_draw_budget(self, rng):
        for _ in range(20):
            init_population(RASTRIGIN, GaConfig(max_rejections=1), rng)

    def test_empty_feasible_region(self, rng):
        problem = sphere_problem(constraints=[Constraint(lambda X: X[..., 0] > 5, "never")])
        with pytest.raises(InitializationExhausted):
            init_population(problem, GaConfig(population_size=10), rng)


class TestReproduce:
    def test_zero_sigma_is_point_mass(self, rng):
        parent = Individual(np.array([0.3, -0.2]), 0.13)
        child = reproduce(parent, np.zeros(2), sphere_problem(), rng)
        assert np.array_equal(child.genes, parent.genes)
        assert child.fitness == pytest.approx(0.13)

    def test_clamped_at_bounds(self, rng):
        parent = Individual(np.array([1.0, -1.0]))
        for _ in range(200):
            child = reproduce(parent, np.full(2, 50.0), sphere_problem(), rng)
            assert np.all(np.abs(child.genes) <= 1.0)

    def test_rejection_widens_sigma(self, rng):
        band = Constraint(lambda X: np.abs(X[..., 0] - 5) < 0.1, "narrow band")
        domain = SearchDomain.box([(0, 10), (0, 10)])
        config = GaConfig(max_rejections=20, sigma_growth=1.5)
        parents = np.tile([5.0, 5.0], (200, 1))
        off = reproduce_batch(parents, np.full(2, 3.0), domain, [band], config, rng)
        assert off.retries.max() > 0
        assert off.sigma_scale.max() > 1.0
        expected = 1.5 ** (off.retries // 20)
        assert np.allclose(off.sigma_scale, expected)
        ok = ~off.exhausted
        assert np.all(np.abs(off.genes[ok, 0] - 5) < 0.1)

    def test_exhaustion_raises(self, rng):
        pinned = Constraint(lambda X: X[..., 0] == 0.5, "single point")
        problem = sphere_problem(constraints=[pinned])
        parent = Individual(np.array([0.5, 0.0]), 0.25)
        with pytest.raises(ReproductionExhausted):
            reproduce(parent, np.full(2, 0.1), problem, rng, GaConfig(max_retries=50))

    def test_batch_exhaustion_clones_parent(self, rng):
        pinned = Constraint(lambda X: X[..., 0] == 0.5, "single point")
        parents = np.array([[0.5, 0.0], [0.5, 0.3]])
        off = reproduce_batch(parents, np.full(2, 0.1), SearchDomain.box([(-1, 1)] * 2), [pinned],
                              GaConfig(max_retries=30), rng)
        assert off.exhausted.all()
        assert np.array_equal(off.genes, parents)
        assert np.all(off.retries == 30)


class TestEvolveStep:
    def test_best_half_are_parents(self, rng):
        genes = np.array([[0.3, 0.0], [0.1, 0.0], [0.4, 0.0], [0.2, 0.0]])
        problem = Problem(lambda X: 10 * np.asarray(X)[..., 0], SearchDomain.box([(0, 1)] * 2))
        pop = Population(genes, problem.evaluate(genes))
        assert np.allclose(pop.fitness, [3, 1, 4, 2])
        nxt = evolve_step(pop, problem, GaConfig(population_size=4, sigma_fraction=0.0), rng)
        # zero-width children copy their parents, exposing which individuals were chosen
        assert np.allclose(sorted(nxt.fitness), [1, 1, 2, 2])

    def test_incumbent_optimum_survives(self, rng):
        config = GaConfig(population_size=20)
        pop = init_population(RASTRIGIN, config, rng)
        genes = pop.genes.copy()
        genes[7] = 0.0
        pop = Population(genes, RASTRIGIN.evaluate(genes))
        for _ in range(10):
            pop = evolve_step(pop, RASTRIGIN, config, rng)
            assert pop.best(Direction.MINIMIZE).fitness == 0.0

    def test_maximize_direction(self, rng):
        problem = sphere_problem(Direction.MAXIMIZE)
        res = run(problem, GaConfig(population_size=40, generations=60, seed=1))
        assert res.best.fitness == pytest.approx(2.0, abs=1e-6)
        assert np.all(np.diff(res.history) >= 0)

    def test_wrong_population_size(self, rng):
        pop = init_population(RASTRIGIN, GaConfig(population_size=10), rng)
        with pytest.raises(ValueError):
            evolve_step(pop, RASTRIGIN, GaConfig(population_size=20), rng)

    def test_zero_sigma_introduces_no_new_genes(self, rng):
        config = GaConfig(population_size=30, sigma_fraction=0.0)
        pop = init_population(RASTRIGIN, config, rng)
        best = pop.best(Direction.MINIMIZE).fitness
        for _ in range(5):
            nxt = evolve_step(pop, RASTRIGIN, config, rng)
            old = {tuple(g) for g in pop.genes}
            assert {tuple(g) for g in nxt.genes} <= old
            assert nxt.best(Direction.MINIMIZE).fitness == best
            pop = nxt


class TestRun:
    def test_history_contract(self):
        config = GaConfig(population_size=40, generations=50, seed=3)
        sizes = []
        res = run(RASTRIGIN, config, callback=lambda g, pop: sizes.append(len(pop)))
        assert len(res.history) == 51
        assert sizes == [40] * 51
        assert np.all(np.diff(res.history) <= 0)
        assert res.best.fitness == res.history[-1]
        assert res.best.fitness == RASTRIGIN.evaluate(res.best.genes)[0]

    def test_deterministic(self):
        config = GaConfig(population_size=40, generations=100, seed=11)
        a, b = run(MISHRA_BIRD, config), run(MISHRA_BIRD, config)
        assert np.array_equal(a.history, b.history)
        assert np.array_equal(a.population.genes, b.population.genes)

    def test_different_seeds_differ(self):
        a = run(RASTRIGIN, GaConfig(population_size=20, generations=5, seed=1))
        b = run(RASTRIGIN, GaConfig(population_size=20, generations=5, seed=2))
        assert not np.array_equal(a.history, b.history)

    def test_beale(self):
        res = run(lookup("beale").problem, GaConfig(seed=0))
        assert abs(res.best.fitness) <= 1e-3

    def test_rastrigin_thousand_generations(self):
        res = run(RASTRIGIN, GaConfig(seed=42))
        assert res.best.fitness <= 0.01

    def test_mishra_bird(self):
        res = run(MISHRA_BIRD, GaConfig(seed=0))
        assert abs(res.best.fitness - (-106.76)) <= 0.05


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), name=st.sampled_from(
    ["mishra-bird", "townsend", "simionescu", "rosenbrock-cubic-line", "eggholder"]))
def test_elitism_and_feasibility_property(seed, name):
    problem = lookup(name).problem
    config = GaConfig(population_size=20, generations=15, seed=seed)
    seen = []

    def check(g, pop):
        assert len(pop) == 20
        seen.append(bool(problem.feasible(pop.genes).all()))

    res = run(problem, config, callback=check)
    assert all(seen)
    assert np.all(np.diff(res.history) <= 0)
