# # Pareto fronts with NSGA-II
#
# The multi-objective optimiser uses the same reproduction step but ranks
# solutions by non-dominated sorting and crowding distance. We measure
# front quality with the inverted generational distance (IGD) against a
# reference front found by dense grid sampling.

# +
import numpy as np

from evohab import GaConfig, nsga2_run
from evohab.benchmarks import MULTI_OBJECTIVE, igd, reference_front
from evohab.nsga2 import crowding_distance, fast_non_dominated_sort

# -
# First a small example of the ranking itself: four points, both
# objectives minimised.

# +
F = np.array([[1.0, 4.0], [2.0, 2.0], [3.0, 3.0], [4.0, 1.0]])
print("fronts  ", fast_non_dominated_sort(F))
print("crowding", crowding_distance(F[[0, 1, 3]]))

# -
# Then runs on every bundled problem. This uses population 100 and 300
# generations to stay quick. The thresholds are set for the default
# population of 200 and 1000 generations, so chakong-haimes, with its wide
# objective range, can come out slightly above its threshold here.

# +
for case in MULTI_OBJECTIVE:
    res = nsga2_run(case.problem, GaConfig(population_size=100, generations=300, seed=0))
    ref = reference_front(case)
    d = igd(res.front.objectives, ref)
    print(f"{case.name:16s} front size {len(res.front):4d}  IGD {d:.4f}  (threshold {case.igd_threshold})")
