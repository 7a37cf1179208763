"""Group-count sweep: per-N fronts, ratio trajectories, and the utopia region.

The sweep runs the fixed-N optimizer for every group count from 1 up to the
economically motivated bound, selects each front's closest-to-origin entry
in normalized objective space, differences that trajectory between adjacent
group counts, and derives the group-count interval where the trade-off is
most favorable: torque-deviation improvements have saturated while total
cost still undercuts individual production.
"""
from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, IO, Sequence

from .catalog import BaselineTotals, DesignCatalog, baseline_aggregates
from .cost import CostCurve, saturation, sweep_bound
from .errors import ParameterError
from .nsga2 import FrontEntry, GaConfig, ParetoArchive, optimize_fixed_n
from .objectives import ObjectiveTriple, Partition, RatioTriple

DEFAULT_THETA = 0.10
DEFAULT_EPSILON = 0.02


@dataclass(frozen=True)
class UtopiaRegion:
    """Inclusive group-count interval [n_lo, n_hi]; ``degenerate`` flags the
    fallback taken when the decline signal carries no information."""

    n_lo: int
    n_hi: int
    degenerate: bool = False


@dataclass(frozen=True)
class NFront:
    """One group count's non-dominated entries and its selected representative."""

    n: int
    entries: tuple[FrontEntry, ...]
    closest: FrontEntry


@dataclass(frozen=True)
class SweepReport:
    """Decision-support output of one sweep; serializes losslessly to JSON."""

    m: int
    catalog_fingerprint: str
    curve: CostCurve
    ga: GaConfig
    seed: int
    sat: float
    n_max: int
    theta: float
    epsilon: float
    baseline: BaselineTotals
    per_n: tuple[NFront, ...]
    diffs: tuple[RatioTriple, ...]
    utopia: UtopiaRegion
    cross_archive: tuple[tuple[int, FrontEntry], ...]


def origin_distance(ratios: RatioTriple) -> float:
    """Euclidean distance of a normalized objective triple from the origin."""
    c, g1, g2 = ratios.as_tuple()
    return math.sqrt(c * c + g1 * g1 + g2 * g2)


def closest_to_origin(front: Sequence[FrontEntry]) -> FrontEntry:
    """Entry minimizing the Euclidean norm of its ratios.

    Ties break lexicographically on the ratio triple, then on group sizes.
    """
    if not front:
        raise ValueError("closest_to_origin needs a non-empty front")
    return min(front, key=lambda e: (origin_distance(e.ratios), e.ratios.as_tuple(),
                                     e.partition.group_sizes))


def finite_differences(trajectory: Sequence[RatioTriple]) -> list[RatioTriple]:
    """Componentwise differences between adjacent group counts (length len-1)."""
    if len(trajectory) < 2:
        raise ValueError("finite differences need a trajectory of length >= 2")
    return [
        RatioTriple(b.c_ratio - a.c_ratio, b.g1_ratio - a.g1_ratio, b.g2_ratio - a.g2_ratio)
        for a, b in zip(trajectory, trajectory[1:])
    ]


def utopia_region(
    diffs: Sequence[RatioTriple],
    closest_ratios: Sequence[RatioTriple],
    sat: float,
    n_max: int,
    theta: float = DEFAULT_THETA,
    epsilon: float = DEFAULT_EPSILON,
) -> UtopiaRegion:
    """Derive the favorable group-count interval from the difference trajectory.

    The torque decline at step k (the move from k to k+1 groups) is
    |dg1| + |dg2|.  The lower endpoint is one past the first step whose
    decline drops below ``theta`` times the largest observed decline (the
    +1 corrects for differencing shortening the trajectory).  The upper
    endpoint is the largest group count whose closest-to-origin cost ratio
    still undercuts 1 - ``epsilon``, clamped to [n_lo, n_max].

    A flat decline signal (all steps equal, including all-zero) carries no
    knee information; the fallback interval [1, floor(sat)] is returned
    with the ``degenerate`` flag set.
    """
    if not diffs:
        raise ValueError("utopia_region needs a non-empty difference trajectory")
    declines = [abs(d.g1_ratio) + abs(d.g2_ratio) for d in diffs]
    if max(declines) == min(declines):
        n_hi = max(1, min(math.floor(sat), n_max))
        return UtopiaRegion(1, n_hi, degenerate=True)
    threshold = theta * max(declines)
    n_lo = len(diffs) + 1
    for step, decline in enumerate(declines, start=1):
        if decline < threshold:
            n_lo = step + 1
            break
    n_lo = min(n_lo, n_max)
    below = [n for n, ratios in enumerate(closest_ratios, start=1)
             if ratios.c_ratio < 1.0 - epsilon]
    n_hi = max(below) if below else n_lo
    n_hi = max(min(n_hi, n_max), n_lo)
    return UtopiaRegion(n_lo, n_hi)


def derive_subseed(seed: int, n: int) -> int:
    """Stable per-N seed so adding one more N never perturbs earlier fronts."""
    digest = hashlib.sha256(f"{seed}:{n}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def run_sweep(
    catalog: DesignCatalog,
    curve: CostCurve,
    ga: GaConfig | None = None,
    *,
    n_max: int | None = None,
    theta: float = DEFAULT_THETA,
    epsilon: float = DEFAULT_EPSILON,
    threads: int = 1,
    progress: Callable[[NFront], None] | None = None,
) -> SweepReport:
    """Optimize every group count from 1 to the sweep bound and assemble the report.

    Each N runs with a sub-seed derived from (seed, N), so per-N results are
    independent of the bound and of each other; ``threads`` > 1 runs them
    concurrently without changing any result.
    """
    ga = ga if ga is not None else GaConfig()
    sat = saturation(curve.bep, catalog.m)
    bound = sweep_bound(curve.bep, catalog.m) if n_max is None else n_max
    if not 1 <= bound <= catalog.m:
        raise ParameterError(f"n_max {bound} out of range 1..{catalog.m}")
    baseline = baseline_aggregates(catalog)

    def run_one(n: int) -> NFront:
        entries = optimize_fixed_n(catalog, curve, n, replace(ga, seed=derive_subseed(ga.seed, n)))
        front = NFront(n, tuple(entries), closest_to_origin(entries))
        if progress is not None:
            progress(front)
        return front

    counts = range(1, bound + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_n = tuple(pool.map(run_one, counts))
    else:
        per_n = tuple(run_one(n) for n in counts)

    closest_ratios = [nf.closest.ratios for nf in per_n]
    diffs = tuple(finite_differences(closest_ratios)) if bound >= 2 else ()
    if diffs:
        utopia = utopia_region(diffs, closest_ratios, sat, bound, theta, epsilon)
    else:
        utopia = UtopiaRegion(1, 1, degenerate=True)

    cross = ParetoArchive()
    for nf in per_n:
        for entry in nf.entries:
            cross.insert(entry.ratios.as_tuple(), (nf.n, entry.partition.group_sizes))
    entries_by_key = {
        (nf.n, e.partition.group_sizes): e for nf in per_n for e in nf.entries
    }
    cross_archive = tuple(
        (n, entries_by_key[(n, sizes)])
        for _, (n, sizes) in sorted(cross.items(), key=lambda item: (item[0], item[1]))
    )

    return SweepReport(
        m=catalog.m,
        catalog_fingerprint=catalog.fingerprint(),
        curve=curve,
        ga=ga,
        seed=ga.seed,
        sat=sat,
        n_max=bound,
        theta=theta,
        epsilon=epsilon,
        baseline=baseline,
        per_n=per_n,
        diffs=diffs,
        utopia=utopia,
        cross_archive=cross_archive,
    )


# --- serialization -------------------------------------------------------

def _ratios_to_dict(r: RatioTriple) -> dict:
    return {"c_ratio": r.c_ratio, "g1_ratio": r.g1_ratio, "g2_ratio": r.g2_ratio}


def _ratios_from_dict(d: dict) -> RatioTriple:
    return RatioTriple(d["c_ratio"], d["g1_ratio"], d["g2_ratio"])


def front_entry_to_dict(entry: FrontEntry) -> dict:
    return {
        "group_sizes": list(entry.partition.group_sizes),
        "objectives": {
            "C": entry.objectives.cost,
            "dGamma1": entry.objectives.dgamma1,
            "dGamma2": entry.objectives.dgamma2,
        },
        "ratios": _ratios_to_dict(entry.ratios),
    }


def front_entry_from_dict(d: dict) -> FrontEntry:
    objectives = ObjectiveTriple(
        d["objectives"]["C"], d["objectives"]["dGamma1"], d["objectives"]["dGamma2"])
    return FrontEntry(
        Partition(tuple(int(g) for g in d["group_sizes"])),
        objectives,
        _ratios_from_dict(d["ratios"]),
    )


def report_to_dict(report: SweepReport) -> dict:
    return {
        "m": report.m,
        "catalog_fingerprint": report.catalog_fingerprint,
        "cost": {
            "omega0": report.curve.omega0,
            "omega_min": report.curve.omega_min,
            "bep": report.curve.bep,
            "kappa": report.curve.kappa,
        },
        "ga": {
            "population_size": report.ga.population_size,
            "generations": report.ga.generations,
            "crossover_rate": report.ga.crossover_rate,
            "mutation_rate": report.ga.mutation_rate,
            "mutation_step": report.ga.mutation_step,
            "seed": report.ga.seed,
        },
        "seed": report.seed,
        "sat": report.sat,
        "n_max": report.n_max,
        "theta": report.theta,
        "epsilon": report.epsilon,
        "baseline": {
            "c_origin": report.baseline.c_origin,
            "gamma_origin_1": report.baseline.gamma_origin_1,
            "gamma_origin_2": report.baseline.gamma_origin_2,
        },
        "per_n": [
            {
                "n": nf.n,
                "front": [front_entry_to_dict(e) for e in nf.entries],
                "closest": front_entry_to_dict(nf.closest),
            }
            for nf in report.per_n
        ],
        "diffs": [_ratios_to_dict(d) for d in report.diffs],
        "utopia": {
            "n_lo": report.utopia.n_lo,
            "n_hi": report.utopia.n_hi,
            "degenerate": report.utopia.degenerate,
        },
        "cross_archive": [
            {"n": n, **front_entry_to_dict(entry)} for n, entry in report.cross_archive
        ],
    }


def report_from_dict(data: dict) -> SweepReport:
    cost = data["cost"]
    ga = data["ga"]
    return SweepReport(
        m=data["m"],
        catalog_fingerprint=data["catalog_fingerprint"],
        curve=CostCurve(cost["omega0"], cost["omega_min"], cost["bep"], cost["kappa"]),
        ga=GaConfig(
            population_size=ga["population_size"],
            generations=ga["generations"],
            crossover_rate=ga["crossover_rate"],
            mutation_rate=ga["mutation_rate"],
            mutation_step=ga["mutation_step"],
            seed=ga["seed"],
        ),
        seed=data["seed"],
        sat=data["sat"],
        n_max=data["n_max"],
        theta=data["theta"],
        epsilon=data["epsilon"],
        baseline=BaselineTotals(
            data["baseline"]["c_origin"],
            data["baseline"]["gamma_origin_1"],
            data["baseline"]["gamma_origin_2"],
        ),
        per_n=tuple(
            NFront(
                item["n"],
                tuple(front_entry_from_dict(e) for e in item["front"]),
                front_entry_from_dict(item["closest"]),
            )
            for item in data["per_n"]
        ),
        diffs=tuple(_ratios_from_dict(d) for d in data["diffs"]),
        utopia=UtopiaRegion(
            data["utopia"]["n_lo"], data["utopia"]["n_hi"], data["utopia"]["degenerate"]),
        cross_archive=tuple(
            (item["n"], front_entry_from_dict(item)) for item in data["cross_archive"]
        ),
    )


def report_to_json(report: SweepReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def write_report(report: SweepReport, dest: str | Path | IO[str]) -> None:
    text = report_to_json(report)
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        dest.write(text)


def load_report(source: str | Path | IO[str]) -> SweepReport:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            return report_from_dict(json.load(handle))
    return report_from_dict(json.load(source))


def closest_csv_text(report: SweepReport) -> str:
    """Flat per-N trajectory of the selected entries, for plotting."""
    lines = ["n,c_ratio,g1_ratio,g2_ratio,distance"]
    for nf in report.per_n:
        r = nf.closest.ratios
        lines.append(",".join([
            str(nf.n), repr(r.c_ratio), repr(r.g1_ratio), repr(r.g2_ratio),
            repr(origin_distance(r)),
        ]))
    return "\n".join(lines) + "\n"


def write_closest_csv(report: SweepReport, dest: str | Path | IO[str]) -> None:
    text = closest_csv_text(report)
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        dest.write(text)
