"""Command-line front end: catalog generation, evaluation, sweep, and oracles.

Exit codes: 0 success, 2 usage/argument error, 3 partition-constraint
violation, 4 sweep/solver failure, 5 enumeration-cap refusal.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .catalog import baseline_aggregates, load_catalog, save_catalog, synthesize_catalog
from .cost import CostCurve
from .errors import (
    CatalogParseError,
    CatalogValidationError,
    ConstraintError,
    EnumerationCapError,
    ModgroupError,
    NormalizationError,
    ParameterError,
)
from .exhaustive import DEFAULT_ENUMERATION_CAP, count_partitions, exact_pareto
from .nsga2 import GaConfig
from .objectives import evaluate, normalize, validate_partition
from .sweep import (
    DEFAULT_EPSILON,
    DEFAULT_THETA,
    finite_differences,
    front_entry_to_dict,
    load_report,
    run_sweep,
    utopia_region,
    write_closest_csv,
    write_report,
)

_EXIT_OK = 0
_EXIT_USAGE = 2
_EXIT_CONSTRAINT = 3
_EXIT_RUN = 4
_EXIT_CAP = 5


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _read_config(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ParameterError(f"config file not found: {path}")
    return parser


def _cfg_get(cfg: configparser.ConfigParser | None, section: str, key: str, cast):
    if cfg is None or not cfg.has_option(section, key):
        return None
    return cast(cfg.get(section, key))


def _pick(flag_value, cfg_value, default):
    if flag_value is not None:
        return flag_value
    if cfg_value is not None:
        return cfg_value
    return default


def _add_cost_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega0", type=float, default=None,
                        help="initial relative manufacturing cost (dimensionless)")
    parser.add_argument("--omega-min", type=float, default=None,
                        help="floor of the relative per-unit cost, in (0, 1)")
    parser.add_argument("--bep", type=float, default=None,
                        help="break-even production quantity (> 0)")


def _add_ga_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pop", type=int, default=None, help="population size (even, >= 4)")
    parser.add_argument("--gens", type=int, default=None, help="number of generations")
    parser.add_argument("--cx-rate", type=float, default=None, help="crossover rate in [0, 1]")
    parser.add_argument("--mut-rate", type=float, default=None,
                        help="per-chromosome mutation rate in [0, 1]")
    parser.add_argument("--mut-step", type=int, default=None,
                        help="maximum divider displacement per mutation")
    parser.add_argument("--seed", type=int, default=None, help="master random seed")


def _build_curve(args, cfg) -> CostCurve:
    omega0 = _pick(args.omega0, _cfg_get(cfg, "cost", "omega0", float), None)
    omega_min = _pick(args.omega_min, _cfg_get(cfg, "cost", "omega_min", float), None)
    bep = _pick(args.bep, _cfg_get(cfg, "cost", "bep", float), None)
    missing = [name for name, value in
               (("--omega0", omega0), ("--omega-min", omega_min), ("--bep", bep))
               if value is None]
    if missing:
        raise ParameterError(f"missing cost parameters: {', '.join(missing)}")
    return CostCurve.from_parameters(omega0, omega_min, bep)


def _build_ga(args, cfg) -> GaConfig:
    return GaConfig(
        population_size=_pick(args.pop, _cfg_get(cfg, "ga", "pop", int), 100),
        generations=_pick(args.gens, _cfg_get(cfg, "ga", "gens", int), 200),
        crossover_rate=_pick(args.cx_rate, _cfg_get(cfg, "ga", "cx_rate", float), 0.9),
        mutation_rate=_pick(args.mut_rate, _cfg_get(cfg, "ga", "mut_rate", float), 0.2),
        mutation_step=_pick(args.mut_step, _cfg_get(cfg, "ga", "mut_step", int), 3),
        seed=_pick(args.seed, _cfg_get(cfg, "ga", "seed", int), 0),
    )


def _load_sweep_catalog(args, cfg):
    path = _pick(args.catalog, _cfg_get(cfg, "catalog", "path", str), None)
    count = _pick(args.synth_count, _cfg_get(cfg, "catalog", "count", int), None)
    if (path is None) == (count is None):
        raise ParameterError("provide exactly one of --catalog or --synth-count")
    if path is not None:
        return load_catalog(path)
    seed = _pick(args.synth_seed, _cfg_get(cfg, "catalog", "seed", int), 0)
    return synthesize_catalog(count, seed)


def cmd_gen(args) -> int:
    if args.count < 1:
        _err(f"--count must be >= 1, got {args.count}")
        return _EXIT_USAGE
    catalog = synthesize_catalog(args.count, args.seed)
    try:
        save_catalog(catalog, args.out)
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc}")
        return _EXIT_USAGE
    radii = catalog.radii
    print(f"M = {catalog.m}, task_radius in [{radii[0]!r}, {radii[-1]!r}]")
    return _EXIT_OK


def cmd_eval(args) -> int:
    cfg = _read_config(args.config) if args.config else None
    curve = _build_curve(args, cfg)
    catalog = load_catalog(args.catalog)
    try:
        sizes = [int(part) for part in args.groups.split(",")]
    except ValueError:
        _err(f"--groups must be comma-separated integers, got {args.groups!r}")
        return _EXIT_USAGE
    partition = validate_partition(sizes, catalog.m)
    triple = evaluate(catalog, curve, partition)
    ratios = normalize(triple, baseline_aggregates(catalog))
    print(json.dumps({
        "C": triple.cost,
        "dGamma1": triple.dgamma1,
        "dGamma2": triple.dgamma2,
        "c_ratio": ratios.c_ratio,
        "g1_ratio": ratios.g1_ratio,
        "g2_ratio": ratios.g2_ratio,
    }))
    return _EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _read_config(args.config) if args.config else None
    curve = _build_curve(args, cfg)
    ga = _build_ga(args, cfg)
    catalog = _load_sweep_catalog(args, cfg)
    n_max = _pick(args.n_max, _cfg_get(cfg, "sweep", "n_max", int), None)
    theta = _pick(args.theta, _cfg_get(cfg, "sweep", "theta", float), DEFAULT_THETA)
    epsilon = _pick(args.epsilon, _cfg_get(cfg, "sweep", "epsilon", float), DEFAULT_EPSILON)
    threads = _pick(args.threads, _cfg_get(cfg, "sweep", "threads", int),
                    os.cpu_count() or 1)
    out = _pick(args.out, _cfg_get(cfg, "output", "report", str), None)
    if out is None:
        raise ParameterError("missing --out for the report file")
    csv_out = _pick(args.csv, _cfg_get(cfg, "output", "csv", str),
                    str(Path(out).with_suffix(".csv")))

    def progress(nfront) -> None:
        r = nfront.closest.ratios
        print(f"[sweep] N={nfront.n:>3} front={len(nfront.entries):>4} "
              f"closest c={r.c_ratio:.4f} g1={r.g1_ratio:.4f} g2={r.g2_ratio:.4f}",
              file=sys.stderr)

    try:
        report = run_sweep(
            catalog, curve, ga, n_max=n_max, theta=theta, epsilon=epsilon,
            threads=threads, progress=progress)
        write_report(report, out)
        write_closest_csv(report, csv_out)
    except (ParameterError, OSError):
        raise
    except Exception as exc:  # runtime failure inside the sweep
        _err(f"sweep failed: {exc}")
        return _EXIT_RUN
    print(f"Sat = {report.sat}, N_max = {report.n_max}")
    print(f"Utopia = [{report.utopia.n_lo}, {report.utopia.n_hi}]"
          + (" (degenerate)" if report.utopia.degenerate else ""))
    return _EXIT_OK


def cmd_analyze(args) -> int:
    report = load_report(args.report)
    theta = args.theta if args.theta is not None else report.theta
    epsilon = args.epsilon if args.epsilon is not None else report.epsilon
    closest_ratios = [nf.closest.ratios for nf in report.per_n]
    if len(closest_ratios) < 2:
        _err("report covers a single group count; nothing to difference")
        return _EXIT_USAGE
    diffs = finite_differences(closest_ratios)
    utopia = utopia_region(diffs, closest_ratios, report.sat, report.n_max, theta, epsilon)
    print(json.dumps({
        "sat": report.sat,
        "n_max": report.n_max,
        "theta": theta,
        "epsilon": epsilon,
        "n_lo": utopia.n_lo,
        "n_hi": utopia.n_hi,
        "degenerate": utopia.degenerate,
    }))
    if args.out:
        updated = replace(report, theta=theta, epsilon=epsilon,
                          diffs=tuple(diffs), utopia=utopia)
        write_report(updated, args.out)
    return _EXIT_OK


def cmd_oracle(args) -> int:
    cfg = _read_config(args.config) if args.config else None
    if args.count_only:
        m_text, n_text = args.count_only
        m = int(m_text)
        if n_text == "all":
            total = sum(count_partitions(m, n) for n in range(1, m + 1))
        else:
            total = count_partitions(m, int(n_text))
        print(total)
        return _EXIT_OK
    if not args.catalog or args.n is None:
        _err("oracle needs --catalog and --n (or --count-only M N)")
        return _EXIT_USAGE
    curve = _build_curve(args, cfg)
    catalog = load_catalog(args.catalog)
    cap = _pick(args.cap, _cfg_get(cfg, "sweep", "cap", int), DEFAULT_ENUMERATION_CAP)
    entries = exact_pareto(catalog, curve, args.n, cap=cap)
    payload = {"m": catalog.m, "n": args.n,
               "front": [front_entry_to_dict(e) for e in entries]}
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        print(text, end="")
    return _EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modgroup",
        description="Group a task-sorted design catalog into standardized modules, "
                    "trading manufacturing cost against torque over-specification.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="synthesize a catalog CSV")
    gen.add_argument("--count", type=int, required=True, help="number of designs")
    gen.add_argument("--seed", type=int, required=True, help="generator seed")
    gen.add_argument("--out", required=True, help="output CSV path")
    gen.set_defaults(func=cmd_gen)

    ev = sub.add_parser("eval", help="evaluate one grouping of a catalog")
    ev.add_argument("--catalog", required=True, help="catalog CSV path")
    ev.add_argument("--groups", required=True, help="comma-separated group sizes")
    ev.add_argument("--config", default=None, help="INI config file")
    _add_cost_flags(ev)
    ev.set_defaults(func=cmd_eval)

    sw = sub.add_parser("sweep", help="optimize every group count and write a report")
    sw.add_argument("--catalog", default=None, help="catalog CSV path")
    sw.add_argument("--synth-count", type=int, default=None,
                    help="synthesize a catalog of this size instead of loading one")
    sw.add_argument("--synth-seed", type=int, default=None, help="synthetic catalog seed")
    sw.add_argument("--config", default=None, help="INI config file")
    _add_cost_flags(sw)
    _add_ga_flags(sw)
    sw.add_argument("--n-max", type=int, default=None, help="override the sweep bound")
    sw.add_argument("--theta", type=float, default=None,
                    help="decline threshold fraction for the utopia lower endpoint")
    sw.add_argument("--epsilon", type=float, default=None,
                    help="cost-ratio margin for the utopia upper endpoint")
    sw.add_argument("--threads", type=int, default=None,
                    help="concurrent per-N runs (results are unaffected)")
    sw.add_argument("--out", default=None, help="report JSON path")
    sw.add_argument("--csv", default=None, help="closest-trajectory CSV path")
    sw.set_defaults(func=cmd_sweep)

    an = sub.add_parser("analyze",
                        help="recompute diffs and the utopia region from a report")
    an.add_argument("--report", required=True, help="existing report JSON")
    an.add_argument("--theta", type=float, default=None)
    an.add_argument("--epsilon", type=float, default=None)
    an.add_argument("--out", default=None, help="write the updated report here")
    an.set_defaults(func=cmd_analyze)

    orc = sub.add_parser("oracle", help="exact composition counts and Pareto fronts")
    orc.add_argument("--count-only", nargs=2, metavar=("M", "N"), default=None,
                     help="print the composition count for M designs, N groups ('all' sums over N)")
    orc.add_argument("--catalog", default=None, help="catalog CSV path")
    orc.add_argument("--n", type=int, default=None, help="group count for the exact front")
    orc.add_argument("--cap", type=int, default=None, help="enumeration cap override")
    orc.add_argument("--out", default=None, help="front JSON path (default: stdout)")
    orc.add_argument("--config", default=None, help="INI config file")
    _add_cost_flags(orc)
    orc.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except EnumerationCapError as exc:
        _err(str(exc))
        return _EXIT_CAP
    except ConstraintError as exc:
        _err(str(exc))
        return _EXIT_CONSTRAINT
    except (CatalogParseError, CatalogValidationError, ParameterError,
            NormalizationError, ValueError, OSError) as exc:
        _err(str(exc))
        return _EXIT_USAGE
    except ModgroupError as exc:
        _err(str(exc))
        return _EXIT_RUN


if __name__ == "__main__":
    sys.exit(main())
