"""Proto-genetic algorithm for single-objective, optionally constrained problems.

Each generation the best half of the population is selected, every selected
parent produces exactly one child drawn from a Gaussian centred on itself,
and the next population is the best ``population_size`` members of the
merged pool of the old generation and the children.

Objectives and constraint predicates are vectorised over the last axis: they
receive an array of shape ``(n, dims)`` (or ``(dims,)``) and return ``n``
values (or a scalar). Writing them as ``x, y = X[..., 0], X[..., 1]`` covers
both cases.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np


class Direction(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"

    @property
    def sign(self) -> float:
        """Multiplier that turns this direction into minimisation."""
        return 1.0 if self is Direction.MINIMIZE else -1.0


class EvoError(Exception):
    """Base class for optimizer failures."""


class InitializationExhausted(EvoError):
    """No feasible starting population could be sampled within the draw budget."""


class ReproductionExhausted(EvoError):
    """A child could not be placed in the feasible region within the retry cap."""


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SearchDomain:
    """Axis-aligned box of per-dimension bounds."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower, upper = _frozen(self.lower), _frozen(self.upper)
        if lower.ndim != 1 or lower.shape != upper.shape or lower.size == 0:
            raise ValueError("lower and upper must be 1-D and of equal, non-zero length")
        if not np.all(lower < upper):
            raise ValueError(f"every lower bound must be below its upper bound: {lower} vs {upper}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def box(cls, bounds: Sequence[tuple[float, float]]) -> "SearchDomain":
        lo, hi = zip(*bounds)
        return cls(np.array(lo), np.array(hi))

    @property
    def dims(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return np.all((X >= self.lower) & (X <= self.upper), axis=-1)

    def clip(self, X: np.ndarray) -> np.ndarray:
        return np.clip(X, self.lower, self.upper)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.lower + rng.random((n, self.dims)) * self.width


@dataclass(frozen=True)
class Constraint:
    """A feasibility predicate; ``True`` means the point is allowed."""

    predicate: Callable[[np.ndarray], np.ndarray]
    label: str = ""

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(self.predicate(X), dtype=bool)


def is_feasible(X: np.ndarray, domain: SearchDomain, constraints: Sequence[Constraint] = ()) -> np.ndarray:
    """Boolean mask of rows of ``X`` inside the bounds and satisfying every constraint."""
    X = np.asarray(X, dtype=float)
    ok = domain.contains(X)
    with np.errstate(invalid="ignore", divide="ignore"):
        for c in constraints:
            ok = ok & c(X)
    return ok


@dataclass(frozen=True)
class Problem:
    """Single-objective optimisation problem."""

    objective: Callable[[np.ndarray], np.ndarray]
    domain: SearchDomain
    direction: Direction = Direction.MINIMIZE
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.asarray(self.objective(X), dtype=float).reshape(len(X))

    def feasible(self, X: np.ndarray) -> np.ndarray:
        return is_feasible(X, self.domain, self.constraints)


@dataclass(frozen=True)
class Individual:
    genes: np.ndarray
    fitness: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "genes", _frozen(self.genes))


@dataclass(frozen=True)
class GaConfig:
    """Run parameters.

    ``sigma_fraction`` sets the per-dimension Gaussian width as a fraction of
    the domain width. During a single reproduction the width is multiplied by
    ``sigma_growth`` after every ``max_rejections`` consecutive infeasible
    draws; after ``max_retries`` rejections the parent is cloned instead.
    """

    population_size: int = 200
    generations: int = 1000
    sigma_fraction: float = 0.05
    sigma_growth: float = 1.5
    max_rejections: int = 20
    max_retries: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2 or self.population_size % 2:
            raise ValueError(f"population_size must be a positive even integer, got {self.population_size}")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")
        if not 0.0 <= self.sigma_fraction < 1.0:
            raise ValueError("sigma_fraction must lie in [0, 1)")
        if self.sigma_growth <= 1.0:
            raise ValueError("sigma_growth must exceed 1")
        if self.max_rejections < 1 or self.max_retries < 1:
            raise ValueError("max_rejections and max_retries must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    def base_sigma(self, domain: SearchDomain) -> np.ndarray:
        return self.sigma_fraction * domain.width


class Population:
    """Immutable block of individuals stored as a gene matrix plus a fitness vector."""

    def __init__(self, genes: np.ndarray, fitness: np.ndarray):
        self.genes = _frozen(genes)
        self.fitness = _frozen(fitness)
        if self.genes.ndim != 2 or self.fitness.shape != (len(self.genes),):
            raise ValueError("genes must be (n, dims) and fitness (n,)")

    def __len__(self) -> int:
        return len(self.fitness)

    def __getitem__(self, i: int) -> Individual:
        return Individual(self.genes[i], float(self.fitness[i]))

    def __iter__(self) -> Iterator[Individual]:
        return (self[i] for i in range(len(self)))

    def order(self, direction: Direction) -> np.ndarray:
        return fitness_order(self.fitness, direction)

    def best(self, direction: Direction) -> Individual:
        return self[int(self.order(direction)[0])]


def fitness_order(fitness: np.ndarray, direction: Direction) -> np.ndarray:
    """Indices from best to worst; ties keep insertion order."""
    return np.argsort(direction.sign * np.asarray(fitness), kind="stable")


def sample_feasible(domain: SearchDomain, constraints: Sequence[Constraint], n: int,
                    budget: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` feasible points uniformly, using at most ``budget`` draws."""
    chunks, found, used = [], 0, 0
    while found < n:
        if used >= budget:
            raise InitializationExhausted(
                f"only {found} of {n} feasible points found in {budget} uniform draws")
        k = min(budget - used, max(4 * (n - found), 64))
        X = domain.sample(rng, k)
        used += k
        X = X[is_feasible(X, domain, constraints)][: n - found]
        chunks.append(X)
        found += len(X)
    return np.concatenate(chunks)


def init_population(problem: Problem, config: GaConfig, rng: np.random.Generator) -> Population:
    n = config.population_size
    genes = sample_feasible(problem.domain, problem.constraints, n, config.max_rejections * n, rng)
    return Population(genes, problem.evaluate(genes))


@dataclass(frozen=True)
class Offspring:
    """Result of reproducing a batch of parents.

    ``retries`` counts rejected draws per child, ``sigma_scale`` is the final
    widening factor that was applied and ``exhausted`` flags children that
    hit the retry cap and are clones of their parent.
    """

    genes: np.ndarray
    retries: np.ndarray
    sigma_scale: np.ndarray
    exhausted: np.ndarray = field(repr=False)


def reproduce_batch(parents: np.ndarray, sigma: np.ndarray, domain: SearchDomain,
                    constraints: Sequence[Constraint], config: GaConfig,
                    rng: np.random.Generator) -> Offspring:
    parents = np.atleast_2d(np.asarray(parents, dtype=float))
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), (domain.dims,))
    if np.any(sigma < 0):
        raise ValueError("sigma must be non-negative")
    k = len(parents)
    children = parents.copy()
    retries = np.zeros(k, dtype=int)
    scale = np.ones(k)
    exhausted = np.zeros(k, dtype=bool)
    pending = np.arange(k)
    while pending.size:
        draw = parents[pending] + rng.standard_normal((pending.size, domain.dims)) * (sigma * scale[pending, None])
        draw = domain.clip(draw)
        ok = is_feasible(draw, domain, constraints)
        children[pending[ok]] = draw[ok]
        failed = pending[~ok]
        retries[failed] += 1
        widen = failed[retries[failed] % config.max_rejections == 0]
        scale[widen] *= config.sigma_growth
        capped = retries[failed] >= config.max_retries
        exhausted[failed[capped]] = True
        pending = failed[~capped]
    return Offspring(children, retries, scale, exhausted)


def reproduce(parent: Individual, sigma: np.ndarray, problem: Problem, rng: np.random.Generator,
              config: GaConfig = GaConfig()) -> Individual:
    """Draw one feasible child around ``parent``.

    Raises:
        ReproductionExhausted: if ``config.max_retries`` draws were all infeasible.
    """
    off = reproduce_batch(parent.genes[None, :], sigma, problem.domain, problem.constraints, config, rng)
    if off.exhausted[0]:
        raise ReproductionExhausted(f"no feasible child after {config.max_retries} draws")
    genes = off.genes[0]
    return Individual(genes, float(problem.evaluate(genes)[0]))


def evolve_step(population: Population, problem: Problem, config: GaConfig,
                rng: np.random.Generator, sigma: np.ndarray | None = None) -> Population:
    n = config.population_size
    if len(population) != n:
        raise ValueError(f"population has {len(population)} members, config expects {n}")
    if sigma is None:
        sigma = config.base_sigma(problem.domain)
    ranked = population.order(problem.direction)
    genes, fitness = population.genes[ranked], population.fitness[ranked]
    parents = genes[: n // 2]
    off = reproduce_batch(parents, sigma, problem.domain, problem.constraints, config, rng)
    child_fit = np.empty(n // 2)
    fresh = ~off.exhausted
    child_fit[~fresh] = fitness[: n // 2][~fresh]
    if fresh.any():
        child_fit[fresh] = problem.evaluate(off.genes[fresh])
    pool_genes = np.concatenate([genes, off.genes])
    pool_fit = np.concatenate([fitness, child_fit])
    keep = fitness_order(pool_fit, problem.direction)[:n]
    return Population(pool_genes[keep], pool_fit[keep])


@dataclass(frozen=True)
class RunResult:
    best: Individual
    history: np.ndarray
    population: Population


def run(problem: Problem, config: GaConfig = GaConfig(),
        callback: Callable[[int, Population], None] | None = None) -> RunResult:
    """Run the proto-GA for ``config.generations`` generations.

    ``history[g]`` is the best fitness of generation ``g``; entry 0 is the
    initial population. ``callback(g, population)`` is invoked for every
    generation including the initial one.
    """
    rng = np.random.default_rng(config.seed)
    sigma = config.base_sigma(problem.domain)
    pop = init_population(problem, config, rng)
    history = np.empty(config.generations + 1)
    history[0] = pop.best(problem.direction).fitness
    if callback is not None:
        callback(0, pop)
    for g in range(1, config.generations + 1):
        pop = evolve_step(pop, problem, config, rng, sigma)
        history[g] = pop.best(problem.direction).fitness
        if callback is not None:
            callback(g, pop)
    history.setflags(write=False)
    return RunResult(pop.best(problem.direction), history, pop)
