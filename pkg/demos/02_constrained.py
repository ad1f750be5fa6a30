# # Constrained search by rejection
#
# Constraints are handled by rejection. Children that break a constraint
# are redrawn, and the mutation width grows a little after every run of
# rejections. So every member of every generation is feasible.

# +
import numpy as np

from evohab import Constraint, Direction, GaConfig, Problem, SearchDomain, run
from evohab.benchmarks import CONSTRAINED

# -
# A problem written from scratch: minimise the distance to (2, 2) while
# staying inside the unit disk. The answer is on the boundary at
# (1/sqrt(2), 1/sqrt(2)).

# +
problem = Problem(
    objective=lambda X: np.hypot(X[..., 0] - 2, X[..., 1] - 2),
    domain=SearchDomain.box([(-1.5, 1.5), (-1.5, 1.5)]),
    direction=Direction.MINIMIZE,
    constraints=(Constraint(lambda X: X[..., 0] ** 2 + X[..., 1] ** 2 <= 1, "unit disk"),),
)
violations = []
res = run(problem, GaConfig(population_size=60, generations=300, seed=3),
          callback=lambda g, pop: violations.append(int((~problem.feasible(pop.genes)).sum())))
print("best", res.best.genes, "expected", np.full(2, 2 ** -0.5))
print("infeasible members seen:", sum(violations))

# -
# The five constrained test functions that come with the package. Rosenbrock
# on the cubic-and-line region has a trap near (0, 0), so we keep the best of
# five seeds.

# +
for case in CONSTRAINED:
    best = min((run(case.problem, GaConfig(seed=s)) for s in range(5)), key=lambda r: r.best.fitness)
    print(f"{case.name:22s} {best.best.fitness:12.5f}  known {case.reported_optimum:10.4f}")
