"""Gradient-free evolutionary optimisation and Cobb-Douglas habitability scoring."""
from .proto_ga import (
    Constraint,
    Direction,
    GaConfig,
    Individual,
    InitializationExhausted,
    Population,
    Problem,
    ReproductionExhausted,
    SearchDomain,
    run,
)
from .nsga2 import MultiObjectiveProblem, ParetoFront, dominates, fast_non_dominated_sort, nsga2_run, crowding_distance
from .cdhs import (
    CdhsResult,
    Elasticities,
    PlanetParams,
    WeightPair,
    optimize_cdhs_bi,
    optimize_cdhs_single,
)

__version__ = "0.1.0"
