"""NSGA-II ranking driven by proto-GA reproduction.

Mating selection truncates the population to its best half under the
crowded-comparison order (lower rank first, larger crowding distance breaks
ties), each selected parent produces one Gaussian child, and the merged pool
of parents and children is truncated back to ``population_size`` by the same
order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .proto_ga import (
    Constraint,
    Direction,
    GaConfig,
    SearchDomain,
    is_feasible,
    reproduce_batch,
    sample_feasible,
)


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MultiObjectiveProblem:
    objectives: tuple[Callable[[np.ndarray], np.ndarray], ...]
    directions: tuple[Direction, ...]
    domain: SearchDomain
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(self, "directions", tuple(self.directions))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(self.objectives) < 2 or len(self.objectives) != len(self.directions):
            raise ValueError("need at least two objectives and one direction per objective")

    @property
    def n_objectives(self) -> int:
        return len(self.objectives)

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        """Objective matrix of shape ``(n, n_objectives)`` in the problem's own orientation."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        cols = [np.asarray(f(X), dtype=float).reshape(len(X)) for f in self.objectives]
        return np.stack(cols, axis=1)

    def feasible(self, X: np.ndarray) -> np.ndarray:
        return is_feasible(X, self.domain, self.constraints)


def _signs(directions: Sequence[Direction] | None, m: int) -> np.ndarray:
    if directions is None:
        return np.ones(m)
    if len(directions) != m:
        raise LengthMismatch(f"{len(directions)} directions for {m} objectives")
    return np.array([d.sign for d in directions])


def dominates(a: Sequence[float], b: Sequence[float], directions: Sequence[Direction] | None = None) -> bool:
    """Pareto dominance: ``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise LengthMismatch(f"objective vectors of length {a.size} and {b.size}")
    s = _signs(directions, a.size)
    a, b = a * s, b * s
    return bool(np.all(a <= b) and np.any(a < b))


def dominance_matrix(F: np.ndarray, directions: Sequence[Direction] | None = None) -> np.ndarray:
    """``D[i, j]`` is True when row ``i`` dominates row ``j``."""
    F = np.asarray(F, dtype=float) * _signs(directions, np.shape(F)[1])
    n = len(F)
    le = np.ones((n, n), dtype=bool)
    lt = np.zeros((n, n), dtype=bool)
    for col in F.T:
        le &= col[:, None] <= col[None, :]
        lt |= col[:, None] < col[None, :]
    return le & lt


def fast_non_dominated_sort(F: np.ndarray, directions: Sequence[Direction] | None = None) -> list[list[int]]:
    """Partition row indices of ``F`` into successive non-dominated fronts."""
    F = np.asarray(F, dtype=float)
    if len(F) == 0:
        return []
    D = dominance_matrix(F, directions)
    count = D.sum(axis=0)
    assigned = np.zeros(len(F), dtype=bool)
    current = np.flatnonzero(count == 0)
    fronts = []
    while current.size:
        fronts.append(current.tolist())
        assigned[current] = True
        count = count - D[current].sum(axis=0)
        current = np.flatnonzero((count == 0) & ~assigned)
    return fronts


def crowding_distance(front: np.ndarray, directions: Sequence[Direction] | None = None) -> np.ndarray:
    """Crowding distance of each member of a single front.

    Members at either end of the sort along any objective get ``inf``;
    objectives with zero range contribute nothing to interior members.
    ``directions`` does not affect the result and is accepted for symmetry.
    """
    F = np.asarray(front, dtype=float)
    n, m = F.shape
    if n == 0:
        raise ValueError("front must be non-empty")
    _signs(directions, m)
    dist = np.zeros(n)
    for k in range(m):
        order = np.argsort(F[:, k], kind="stable")
        col = F[order, k]
        span = col[-1] - col[0]
        if n > 2 and span > 0:
            dist[order[1:-1]] += (col[2:] - col[:-2]) / span
        dist[order[0]] = dist[order[-1]] = np.inf
    return dist


def rank_and_crowd(F: np.ndarray, directions: Sequence[Direction] | None = None) -> tuple[np.ndarray, np.ndarray]:
    ranks = np.empty(len(F), dtype=int)
    crowd = np.empty(len(F))
    for r, idx in enumerate(fast_non_dominated_sort(F, directions)):
        ranks[idx] = r
        crowd[idx] = crowding_distance(F[idx])
    return ranks, crowd


def crowded_order(ranks: np.ndarray, crowding: np.ndarray) -> np.ndarray:
    """Indices sorted by rank ascending, then crowding descending, then position."""
    idx = np.arange(len(ranks))
    return np.lexsort((idx, -np.asarray(crowding), np.asarray(ranks)))


def survivors(F: np.ndarray, n: int, directions: Sequence[Direction] | None = None) -> np.ndarray:
    """Indices of the ``n`` rows of ``F`` that survive by crowded comparison."""
    ranks, crowd = rank_and_crowd(F, directions)
    return crowded_order(ranks, crowd)[:n]


@dataclass(frozen=True)
class RankedIndividual:
    genes: np.ndarray
    objectives: np.ndarray
    rank: int
    crowding: float


@dataclass(frozen=True)
class ParetoFront:
    members: tuple[RankedIndividual, ...]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def objectives(self) -> np.ndarray:
        return np.array([m.objectives for m in self.members])

    @property
    def genes(self) -> np.ndarray:
        return np.array([m.genes for m in self.members])


@dataclass(frozen=True)
class NsgaResult:
    front: ParetoFront
    population: list[RankedIndividual]


def nsga2_run(problem: MultiObjectiveProblem, config: GaConfig = GaConfig(),
              callback: Callable[[int, np.ndarray, np.ndarray], None] | None = None) -> NsgaResult:
    """Evolve a population towards the Pareto front of ``problem``.

    ``callback(g, genes, objectives)`` sees every generation including the
    initial one. The returned front is sorted by its first objective.
    """
    rng = np.random.default_rng(config.seed)
    n, half = config.population_size, config.population_size // 2
    dirs = problem.directions
    sigma = config.base_sigma(problem.domain)

    X = sample_feasible(problem.domain, problem.constraints, n, config.max_rejections * n, rng)
    F = problem.evaluate(X)
    if callback is not None:
        callback(0, X, F)
    for g in range(1, config.generations + 1):
        parents = survivors(F, half, dirs)
        off = reproduce_batch(X[parents], sigma, problem.domain, problem.constraints, config, rng)
        Fc = F[parents].copy()
        fresh = ~off.exhausted
        if fresh.any():
            Fc[fresh] = problem.evaluate(off.genes[fresh])
        X_all = np.concatenate([X, off.genes])
        F_all = np.concatenate([F, Fc])
        keep = survivors(F_all, n, dirs)
        X, F = X_all[keep], F_all[keep]
        if callback is not None:
            callback(g, X, F)

    ranks, crowd = rank_and_crowd(F, dirs)
    population = [RankedIndividual(X[i].copy(), F[i].copy(), int(ranks[i]), float(crowd[i]))
                  for i in crowded_order(ranks, crowd)]
    front = sorted((p for p in population if p.rank == 0), key=lambda p: tuple(p.objectives))
    return NsgaResult(ParetoFront(tuple(front)), population)
