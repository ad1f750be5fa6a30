# # Cobb-Douglas habitability scores
#
# A planet's score is the product of an interior part R^alpha D^beta and a
# surface part Ve^delta Ts^gamma, all in Earth units. Earth scores exactly 1.
# The bi-objective mode ties delta to alpha and picks a point on the
# (interior, surface) Pareto front by weighted sum. The single-objective
# mode maximises the product directly.

# +
from evohab import GaConfig, WeightPair, optimize_cdhs_bi, optimize_cdhs_single
from evohab.cdhs import weight_sweep
from evohab.catalog import bundled_catalog_path, load_catalog, to_planet_params

records, report = load_catalog(bundled_catalog_path())
print(f"loaded {report.loaded} planets, skipped {len(report.skipped)}")

# +
config = GaConfig(population_size=100, generations=300, seed=7)
print(f"{'planet':16s} {'bi':>8s} {'single':>8s}")
for rec in records:
    p = to_planet_params(rec)
    bi = optimize_cdhs_bi(p, WeightPair(), config)
    single = optimize_cdhs_single(p, WeightPair(), config)
    print(f"{rec.name:16s} {bi.score:8.4f} {single.score:8.4f}")

# -
# Moving the interior weight changes which front member is chosen.

# +
p = to_planet_params(records[0])
res = optimize_cdhs_bi(p, WeightPair(), config)
for w, best in weight_sweep(res.front, 4):
    print(f"w_interior={w:.2f}  best combined={best:.4f}")
