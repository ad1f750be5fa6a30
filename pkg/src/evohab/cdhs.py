"""Cobb-Douglas habitability score.

The score of a planet with radius R, density D, escape velocity Ve and
surface temperature Ts (all in Earth units) is::

    Y = R**alpha * D**beta * Ve**delta * Ts**gamma

split into an interior part ``Y_i = R**alpha * D**beta`` and a surface part
``Y_s = Ve**delta * Ts**gamma``. Elasticities live in ``[EPS, 1 - EPS]`` with
``alpha + beta <= 1`` and ``delta + gamma <= 1``.

Two optimisers are provided. The bi-objective one maximises ``(Y_i, Y_s)``
with NSGA-II over ``(alpha, beta, gamma, C)`` where the surface elasticity is
tied to the interior one by ``delta = alpha * (Ve / R) * C``; the reported
score is the front member with the largest weighted sum ``w_i*Y_i + w_s*Y_s``.
The single-objective one maximises ``Y`` directly over
``(alpha, beta, gamma, delta)`` with the proto-GA.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .nsga2 import MultiObjectiveProblem, nsga2_run
from .proto_ga import (
    Constraint,
    Direction,
    GaConfig,
    InitializationExhausted,
    Problem,
    SearchDomain,
    run,
)

EPS = 1e-6
DEFAULT_C_MAX = 2.0


class DomainError(ValueError):
    pass


class InfeasibleCoupling(RuntimeError):
    """No elasticity/coupling vector satisfying every constraint could be sampled."""


@dataclass(frozen=True)
class PlanetParams:
    radius: float
    density: float
    escape_velocity: float
    surface_temp: float

    def __post_init__(self):
        for name in ("radius", "density", "escape_velocity", "surface_temp"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be strictly positive, got {value}")


EARTH = PlanetParams(1.0, 1.0, 1.0, 1.0)


@dataclass(frozen=True)
class Elasticities:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        tol = 1e-12
        for name in ("alpha", "beta", "gamma", "delta"):
            value = getattr(self, name)
            if not EPS - tol <= value <= 1 - EPS + tol:
                raise DomainError(f"{name}={value} outside [{EPS}, {1 - EPS}]")
        if self.alpha + self.beta > 1 + tol:
            raise DomainError(f"alpha + beta = {self.alpha + self.beta} exceeds 1")
        if self.delta + self.gamma > 1 + tol:
            raise DomainError(f"delta + gamma = {self.delta + self.gamma} exceeds 1")


@dataclass(frozen=True)
class WeightPair:
    w_interior: float = 0.5
    w_surface: float = 0.5

    def __post_init__(self):
        if not (0 <= self.w_interior <= 1 and 0 <= self.w_surface <= 1):
            raise ValueError("weights must lie in [0, 1]")
        if abs(self.w_interior + self.w_surface - 1) > 1e-12:
            raise ValueError("weights must sum to 1")

    @classmethod
    def from_interior(cls, w_interior: float) -> "WeightPair":
        return cls(w_interior, 1.0 - w_interior)


@dataclass(frozen=True)
class CdhsResult:
    """Outcome of one habitability optimisation.

    ``combined`` is always ``w_interior * interior_score + w_surface *
    surface_score``. ``score`` is the headline number for the mode: the
    combined value in bi-objective mode, the product ``Y_i * Y_s`` in
    single-objective mode. ``front`` holds ``(Y_i, Y_s)`` rows sorted by
    ``Y_i`` and ``front_decisions`` the matching
    ``(alpha, beta, gamma, delta, C)`` rows.
    """

    mode: str
    interior_score: float
    surface_score: float
    combined: float
    score: float
    elasticities: Elasticities
    weights: WeightPair
    coupling_c: float | None = None
    front: np.ndarray | None = None
    front_decisions: np.ndarray | None = None

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "interior_score": self.interior_score,
            "surface_score": self.surface_score,
            "combined": self.combined,
            "score": self.score,
            "alpha": self.elasticities.alpha,
            "beta": self.elasticities.beta,
            "gamma": self.elasticities.gamma,
            "delta": self.elasticities.delta,
            "coupling_c": self.coupling_c,
            "w_interior": self.weights.w_interior,
            "w_surface": self.weights.w_surface,
        }
        if self.front is not None:
            out["front_size"] = int(len(self.front))
        return out


def interior_score(p: PlanetParams, e: Elasticities) -> float:
    return p.radius**e.alpha * p.density**e.beta


def surface_score(p: PlanetParams, e: Elasticities) -> float:
    return p.escape_velocity**e.delta * p.surface_temp**e.gamma


def cdhs_single_objective(p: PlanetParams, e: Elasticities) -> float:
    return interior_score(p, e) * surface_score(p, e)


def derive_delta(alpha: float, coupling_c: float, p: PlanetParams) -> float:
    return alpha * (p.escape_velocity / p.radius) * coupling_c


def combine(y_i: float, y_s: float, weights: WeightPair) -> float:
    return weights.w_interior * y_i + weights.w_surface * y_s


def weight_sweep(front: np.ndarray, steps: int) -> list[tuple[float, float]]:
    """Best convex combination over the front for ``w_i = 0, 1/steps, ..., 1``."""
    front = np.atleast_2d(np.asarray(front, dtype=float))
    if front.size == 0:
        raise ValueError("front must be non-empty")
    if steps < 1:
        raise ValueError("steps must be a positive integer")
    out = []
    for k in range(steps + 1):
        w = k / steps
        best = max(combine(yi, ys, WeightPair.from_interior(w)) for yi, ys in front)
        out.append((w, best))
    return out


def bi_objective_problem(p: PlanetParams, c_max: float = DEFAULT_C_MAX) -> MultiObjectiveProblem:
    """NSGA-II problem over ``(alpha, beta, gamma, C)`` maximising ``(Y_i, Y_s)``."""
    ratio = p.escape_velocity / p.radius
    lo, hi = EPS, 1 - EPS

    def delta(X):
        return X[..., 0] * ratio * X[..., 3]

    def y_interior(X):
        return p.radius ** X[..., 0] * p.density ** X[..., 1]

    def y_surface(X):
        return p.escape_velocity ** delta(X) * p.surface_temp ** X[..., 2]

    constraints = (
        Constraint(lambda X: X[..., 0] + X[..., 1] <= 1, "alpha + beta <= 1"),
        Constraint(lambda X: (delta(X) >= lo) & (delta(X) <= hi), "delta in range"),
        Constraint(lambda X: delta(X) + X[..., 2] <= 1, "delta + gamma <= 1"),
    )
    domain = SearchDomain.box([(lo, hi)] * 3 + [(lo, c_max)])
    return MultiObjectiveProblem((y_interior, y_surface), (Direction.MAXIMIZE,) * 2, domain, constraints)


def single_objective_problem(p: PlanetParams) -> Problem:
    """Proto-GA problem over ``(alpha, beta, gamma, delta)`` maximising ``Y``."""

    def objective(X):
        return (p.radius ** X[..., 0] * p.density ** X[..., 1]
                * p.escape_velocity ** X[..., 3] * p.surface_temp ** X[..., 2])

    constraints = (
        Constraint(lambda X: X[..., 0] + X[..., 1] <= 1, "alpha + beta <= 1"),
        Constraint(lambda X: X[..., 3] + X[..., 2] <= 1, "delta + gamma <= 1"),
    )
    domain = SearchDomain.box([(EPS, 1 - EPS)] * 4)
    return Problem(objective, domain, Direction.MAXIMIZE, constraints)


def optimize_cdhs_bi(p: PlanetParams, weights: WeightPair = WeightPair(), config: GaConfig = GaConfig(),
                     c_max: float = DEFAULT_C_MAX) -> CdhsResult:
    problem = bi_objective_problem(p, c_max)
    try:
        result = nsga2_run(problem, config)
    except InitializationExhausted as exc:
        raise InfeasibleCoupling(str(exc)) from exc

    genes = result.front.genes
    ratio = p.escape_velocity / p.radius
    decisions = np.column_stack([genes[:, 0], genes[:, 1], genes[:, 2],
                                 genes[:, 0] * ratio * genes[:, 3], genes[:, 3]])
    front = result.front.objectives
    order = np.lexsort((front[:, 1], front[:, 0]))
    front, decisions = front[order], decisions[order]

    weighted = weights.w_interior * front[:, 0] + weights.w_surface * front[:, 1]
    i = int(np.argmax(weighted))
    alpha, beta, gamma, _, c = decisions[i]
    e = Elasticities(alpha, beta, gamma, derive_delta(alpha, c, p))
    y_i, y_s = interior_score(p, e), surface_score(p, e)
    combined = combine(y_i, y_s, weights)
    return CdhsResult("bi", y_i, y_s, combined, combined, e, weights, float(c), front, decisions)


def optimize_cdhs_single(p: PlanetParams, weights: WeightPair = WeightPair(),
                         config: GaConfig = GaConfig()) -> CdhsResult:
    result = run(single_objective_problem(p), config)
    alpha, beta, gamma, delta = result.best.genes
    e = Elasticities(alpha, beta, gamma, delta)
    y_i, y_s = interior_score(p, e), surface_score(p, e)
    return CdhsResult("single", y_i, y_s, combine(y_i, y_s, weights), y_i * y_s, e, weights)
