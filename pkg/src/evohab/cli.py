"""Command-line entry point: ``evohab {bench,mo,cdhs,report}``.

Exit codes: 0 success, 2 usage error or unknown name, 3 tolerance failure,
4 infeasible coupling.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import benchmarks
from .benchmarks import BenchmarkCase, MoBenchmarkCase, UnknownBenchmark
from .catalog import (
    CatalogError,
    ColumnMapping,
    EARTH_SURFACE_TEMP_K,
    bundled_catalog_path,
    load_catalog,
    select_planets,
    to_planet_params,
)
from .cdhs import (
    DEFAULT_C_MAX,
    InfeasibleCoupling,
    WeightPair,
    optimize_cdhs_bi,
    optimize_cdhs_single,
    weight_sweep,
)
from .nsga2 import nsga2_run
from .proto_ga import GaConfig, run

EXIT_OK, EXIT_USAGE, EXIT_TOLERANCE, EXIT_INFEASIBLE = 0, 2, 3, 4
FALLBACK_SEED = 7
FRONT_COLUMNS = ["y_interior", "y_surface", "alpha", "beta", "gamma", "delta", "c"]


def default_seed() -> int:
    return int(os.environ.get("EVOHAB_SEED", FALLBACK_SEED))


# -- atomic output ------------------------------------------------------------

def write_atomic(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int
    inputs: list[str] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    wall_time_s: float = 0.0
    details: dict = field(default_factory=dict)

    def write(self, path: Path) -> Path:
        return write_atomic(path, json_text(asdict(self)))


def _slug(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.casefold()).strip("-")


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def _config_from(args, seed: int | None = None) -> GaConfig:
    return GaConfig(population_size=args.pop, generations=args.gens,
                    sigma_fraction=args.sigma_fraction,
                    seed=args.seed if seed is None else seed)


# -- bench ----------------------------------------------------------------------

BENCH_COLUMNS = ["name", "kind", "actual", "obtained", "gap", "tolerance", "passed", "seed", "x1", "x2"]


def _bench_case(case: BenchmarkCase, args) -> list:
    best_fit, best_seed, best_genes = None, None, None
    for k in range(args.best_of):
        seed = args.seed + k
        res = run(case.problem, _config_from(args, seed))
        if best_fit is None or res.best.fitness < best_fit:
            best_fit, best_seed, best_genes = res.best.fitness, seed, res.best.genes
    gap = abs(best_fit - case.reported_optimum)
    kind = "constrained" if case.constrained else "unconstrained"
    return [case.name, kind, case.reported_optimum, best_fit, gap, case.tolerance,
            int(gap <= case.tolerance), best_seed, *best_genes]


def cmd_bench(args) -> int:
    cases = benchmarks.UNCONSTRAINED + benchmarks.CONSTRAINED
    if args.function != "all":
        try:
            case = benchmarks.lookup(args.function)
        except UnknownBenchmark as exc:
            print(exc, file=sys.stderr)
            return EXIT_USAGE
        if not isinstance(case, BenchmarkCase):
            print(f"{args.function!r} is multi-objective; use the 'mo' command", file=sys.stderr)
            return EXIT_USAGE
        cases = (case,)

    t0 = time.perf_counter()
    rows = [_bench_case(c, args) for c in cases]
    wall = time.perf_counter() - t0
    shown = [[r[0], f"{r[2]:g}", f"{r[3]:.6g}", f"{r[4]:.3g}", f"{r[5]:g}", "PASS" if r[6] else "FAIL"]
             for r in rows]
    print(_table(["function", "actual", "obtained", "gap", "tolerance", "result"], shown))
    passed = sum(r[6] for r in rows)
    print(f"{passed}/{len(rows)} within tolerance")

    if args.out:
        out = Path(args.out)
        csv_path = write_atomic(out / "bench.csv", csv_text(BENCH_COLUMNS, rows))
        RunManifest("bench", asdict(_config_from(args)), args.seed, [], [csv_path.name], round(wall, 3),
                    {"function": args.function, "best_of": args.best_of}).write(out / "manifest_bench.json")
    return EXIT_OK if passed == len(rows) else EXIT_TOLERANCE


# -- mo ---------------------------------------------------------------------------

def cmd_mo(args) -> int:
    try:
        case = benchmarks.lookup(args.problem)
    except UnknownBenchmark as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    if not isinstance(case, MoBenchmarkCase):
        print(f"{args.problem!r} is single-objective; use the 'bench' command", file=sys.stderr)
        return EXIT_USAGE

    t0 = time.perf_counter()
    result = nsga2_run(case.problem, _config_from(args))
    obtained = result.front.objectives
    obtained = obtained[np.lexsort((obtained[:, 1], obtained[:, 0]))]
    reference = benchmarks.reference_front(case)
    score = benchmarks.igd(obtained, reference)
    wall = time.perf_counter() - t0

    out = Path(args.out) if args.out else Path(f"{case.name}_front.csv")
    ref_path = out.with_name(f"{out.stem}_reference.csv")
    write_atomic(out, csv_text(["f1", "f2"], obtained))
    write_atomic(ref_path, csv_text(["f1", "f2"], reference))
    passed = score <= case.igd_threshold
    RunManifest("mo", asdict(_config_from(args)), args.seed, [], [out.name, ref_path.name], round(wall, 3),
                {"problem": case.name, "igd": score, "igd_threshold": case.igd_threshold,
                 "front_size": int(len(obtained)), "passed": bool(passed)}
                ).write(out.with_name(f"manifest_mo_{_slug(case.name)}.json"))
    print(f"{case.name}: front of {len(obtained)} points written to {out}")
    print(f"IGD = {score:.6g} (threshold {case.igd_threshold:g}) {'PASS' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_TOLERANCE


# -- cdhs -------------------------------------------------------------------------

def cmd_cdhs(args) -> int:
    if not 0.0 <= args.wi <= 1.0:
        print("--wi must lie in [0, 1]", file=sys.stderr)
        return EXIT_USAGE
    try:
        mapping = ColumnMapping()
        if args.columns_file:
            mapping = ColumnMapping.from_file(args.columns_file, mapping)
        mapping = ColumnMapping.from_pairs(args.column or [], mapping)
        catalog_path = Path(args.catalog) if args.catalog else bundled_catalog_path()
        records, report = load_catalog(catalog_path, mapping)
    except (OSError, CatalogError, ValueError) as exc:
        print(f"cannot load catalog: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for row_no, reason in report.skipped:
        print(f"warning: catalog row {row_no} skipped ({reason})", file=sys.stderr)

    names = args.planet or [r.name for r in records]
    found, missing = select_planets(records, names)
    if missing:
        print(f"planet(s) not found: {', '.join(missing)}", file=sys.stderr)
        return EXIT_USAGE

    weights = WeightPair.from_interior(args.wi)
    config = _config_from(args)
    out = Path(args.out)
    t0 = time.perf_counter()
    results, outputs, rows = [], [], []
    for rec in found:
        try:
            params = to_planet_params(rec, args.earth_temp)
        except CatalogError as exc:
            print(f"{rec.name}: {type(exc).__name__} {exc}", file=sys.stderr)
            return EXIT_USAGE
        try:
            if args.mode == "bi":
                res = optimize_cdhs_bi(params, weights, config, args.c_max)
            else:
                res = optimize_cdhs_single(params, weights, config)
        except InfeasibleCoupling as exc:
            print(f"{rec.name}: infeasible coupling ({exc})", file=sys.stderr)
            return EXIT_INFEASIBLE
        entry = {"planet": rec.name, **asdict(params), **res.to_dict()}
        if args.mode == "bi":
            slug = _slug(rec.name)
            front_rows = [[*f, *d] for f, d in zip(res.front, res.front_decisions)]
            outputs.append(write_atomic(out / f"{slug}_front.csv", csv_text(FRONT_COLUMNS, front_rows)).name)
            sweep = weight_sweep(res.front, args.sweep_steps)
            outputs.append(write_atomic(out / f"{slug}_sweep.csv", csv_text(["w_interior", "combined"], sweep)).name)
            entry["score_range"] = [min(v for _, v in sweep), max(v for _, v in sweep)]
        results.append(entry)
        e = res.elasticities
        rows.append([rec.name, f"{res.interior_score:.4f}", f"{res.surface_score:.4f}", f"{res.score:.4f}",
                     f"{e.alpha:.4f}", f"{e.beta:.4f}", f"{e.gamma:.4f}", f"{e.delta:.4f}",
                     "-" if res.coupling_c is None else f"{res.coupling_c:.4f}"])
    wall = time.perf_counter() - t0

    print(_table(["planet", "Y_i", "Y_s", "Y", "alpha", "beta", "gamma", "delta", "C"], rows))
    outputs.insert(0, write_atomic(out / f"cdhs_{args.mode}.json", json_text(results)).name)
    RunManifest("cdhs", asdict(config), args.seed, [str(catalog_path)], outputs, round(wall, 3),
                {"mode": args.mode, "w_interior": weights.w_interior, "c_max": args.c_max,
                 "earth_temp_k": args.earth_temp, "planets": [r.name for r in found]}
                ).write(out / f"manifest_cdhs_{args.mode}.json")
    return EXIT_OK


# -- report -----------------------------------------------------------------------

def _load_manifests(out: Path) -> list[dict]:
    manifests = []
    for path in sorted(out.glob("manifest_*.json")):
        with path.open(encoding="utf-8") as fh:
            manifests.append(json.load(fh))
    return manifests


def _read_csv(path: Path) -> list[dict]:
    with path.open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _md_table(title: str, header: list[str], rows: list[list[str]]) -> str:
    lines = [f"## {title}", "", "| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def build_report(out: Path) -> str | None:
    manifests = _load_manifests(out)
    if not manifests:
        return None
    sections = []
    bench = [m for m in manifests if m["command"] == "bench"]
    if bench:
        rows = _read_csv(out / bench[0]["outputs"][0])
        for kind, title in (("unconstrained", "Single-objective benchmarks"),
                            ("constrained", "Constrained benchmarks")):
            picked = [[r["name"], f"{float(r['actual']):g}", f"{float(r['obtained']):.6g}",
                       f"{float(r['gap']):.3g}", "PASS" if r["passed"] == "1" else "FAIL"]
                      for r in rows if r["kind"] == kind]
            if picked:
                sections.append(_md_table(title, ["function", "actual", "obtained", "gap", "result"], picked))
    mo = [m for m in manifests if m["command"] == "mo"]
    if mo:
        rows = [[m["details"]["problem"], str(m["details"]["front_size"]), f"{m['details']['igd']:.4g}",
                 f"{m['details']['igd_threshold']:g}", "PASS" if m["details"]["passed"] else "FAIL"]
                for m in mo]
        sections.append(_md_table("Multi-objective fronts", ["problem", "front size", "IGD", "threshold", "result"], rows))
    cdhs = {m["details"]["mode"]: m for m in manifests if m["command"] == "cdhs"}
    scores = {}
    for mode, m in cdhs.items():
        with (out / m["outputs"][0]).open(encoding="utf-8") as fh:
            scores[mode] = {r["planet"]: r for r in json.load(fh)}
    if "bi" in scores:
        rows = [[p, f"{r['interior_score']:.4f}", f"{r['surface_score']:.4f}", f"{r['score']:.4f}"]
                for p, r in scores["bi"].items()]
        sections.append(_md_table("Habitability scores (bi-objective)", ["planet", "Y_i", "Y_s", "CDHS"], rows))
    if "bi" in scores and "single" in scores:
        rows = []
        for p, r in scores["bi"].items():
            s = scores["single"].get(p)
            if s is not None:
                rows.append([p, f"{r['score']:.4f}", f"{s['score']:.4f}", f"{abs(r['score'] - s['score']):.4f}"])
        sections.append(_md_table("Bi-objective vs single-objective", ["planet", "multi-objective", "single objective", "difference"], rows))
    elif "single" in scores:
        rows = [[p, f"{r['score']:.4f}"] for p, r in scores["single"].items()]
        sections.append(_md_table("Habitability scores (single objective)", ["planet", "CDHS"], rows))
    return "# Run report\n\n" + "\n".join(sections)


def cmd_report(args) -> int:
    out = Path(args.out)
    text = build_report(out) if out.is_dir() else None
    if text is None:
        print(f"no run manifests found in {out}", file=sys.stderr)
        return EXIT_USAGE
    write_atomic(out / "report.md", text)
    print(text, end="")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def _add_ga_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pop", type=int, default=200, help="population size (even)")
    p.add_argument("--gens", type=int, default=1000, help="number of generations")
    p.add_argument("--seed", type=int, default=default_seed(), help="random seed (env EVOHAB_SEED)")
    p.add_argument("--sigma-fraction", type=float, default=0.05,
                   help="Gaussian width as a fraction of each domain width")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evohab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bench", help="run single-objective benchmarks")
    p.add_argument("function", help="benchmark name or 'all'")
    _add_ga_flags(p)
    p.add_argument("--best-of", type=int, default=5, help="keep the best of this many consecutive seeds")
    p.add_argument("--out", help="directory for bench.csv and the run manifest")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("mo", help="run a multi-objective benchmark")
    p.add_argument("problem")
    _add_ga_flags(p)
    p.add_argument("--out", help="front CSV path (default: <problem>_front.csv)")
    p.set_defaults(func=cmd_mo)

    p = sub.add_parser("cdhs", help="compute habitability scores for catalog planets")
    p.add_argument("--catalog", help="catalog CSV (default: bundled TRAPPIST fixture)")
    p.add_argument("--planet", action="append", help="planet name; repeat for several (default: all)")
    p.add_argument("--mode", choices=("bi", "single"), default="bi")
    p.add_argument("--wi", type=float, default=0.5, help="interior weight; surface weight is 1 - wi")
    p.add_argument("--c-max", type=float, default=DEFAULT_C_MAX, help="upper bound of the coupling C")
    p.add_argument("--earth-temp", type=float, default=EARTH_SURFACE_TEMP_K, help="Kelvin per Earth unit")
    p.add_argument("--sweep-steps", type=int, default=10)
    p.add_argument("--column", action="append", metavar="FIELD=HEADER", help="override a catalog column")
    p.add_argument("--columns-file", help="file of FIELD=HEADER lines")
    p.add_argument("--out", default=".", help="output directory")
    _add_ga_flags(p)
    p.set_defaults(func=cmd_cdhs)

    p = sub.add_parser("report", help="consolidate stored run artifacts into report.md")
    p.add_argument("--out", default=".", help="directory holding run artifacts")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if hasattr(args, "pop"):
        try:
            _config_from(args)
        except ValueError as exc:
            print(f"invalid configuration: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
