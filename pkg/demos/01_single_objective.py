# # Single-objective search with the proto-GA
#
# The proto-GA keeps the better half of the population as parents, gives
# each parent one Gaussian child, and keeps the best N of parents plus
# children. Here we run it on a few classic 2-D test functions and compare
# the result with the known minimum.

# +
import numpy as np

from evohab import GaConfig, run
from evohab.benchmarks import UNCONSTRAINED

# -
# A short run on Rastrigin, with a callback that records the best value
# of each generation.

# +
rastrigin = next(c for c in UNCONSTRAINED if c.name == "rastrigin")
trace = []
result = run(rastrigin.problem, GaConfig(population_size=100, generations=200, seed=1),
             callback=lambda g, pop: trace.append(pop.best(rastrigin.problem.direction).fitness))
print("best genes  ", result.best.genes)
print("best value  ", result.best.fitness)
print("value every 50 generations:", np.round(trace[::50], 4))

# -
# The best value never gets worse between generations because parents
# survive alongside their children.

# +
assert np.all(np.diff(result.history) <= 0)

# -
# Now all eleven unconstrained functions, with the default settings of
# population 200 and 1000 generations.

# +
for case in UNCONSTRAINED:
    res = run(case.problem, GaConfig(seed=0))
    gap = abs(res.best.fitness - case.reported_optimum)
    print(f"{case.name:22s} {res.best.fitness:12.5f}  known {case.reported_optimum:10.4f}  gap {gap:.2e}")
