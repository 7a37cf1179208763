"""Exhaustive enumeration of contiguous partitions; exact ground truth at small scale."""
from __future__ import annotations

import itertools
import math
from typing import Iterator

from .catalog import DesignCatalog, baseline_aggregates
from .cost import CostCurve
from .errors import EnumerationCapError
from .nsga2 import FrontEntry, ParetoArchive, decode_cuts
from .objectives import ObjectiveTriple, Partition, evaluate, normalize

DEFAULT_ENUMERATION_CAP = 10_000_000


def count_partitions(m: int, n: int) -> int:
    """Number of compositions of ``m`` into ``n`` positive parts: C(m-1, n-1), exact."""
    if n < 1 or n > m:
        raise ValueError(f"group count {n} out of range 1..{m}")
    return math.comb(m - 1, n - 1)


def enumerate_partitions(m: int, n: int,
                         cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Partition]:
    """Yield every composition of ``m`` into ``n`` positive parts exactly once.

    Order is lexicographic in the divider positions.  Refuses up front when
    the composition count exceeds ``cap``.
    """
    total = count_partitions(m, n)
    if total > cap:
        raise EnumerationCapError(total, cap)

    def generate() -> Iterator[Partition]:
        for cuts in itertools.combinations(range(1, m), n - 1):
            yield decode_cuts(cuts, m)

    return generate()


def exact_pareto(catalog: DesignCatalog, curve: CostCurve, n: int,
                 cap: int = DEFAULT_ENUMERATION_CAP) -> list[FrontEntry]:
    """Exact non-dominated set over all compositions, for solver verification.

    Duplicate objective triples keep the lexicographically smallest partition;
    entries come back sorted by objective triple, matching the solver's output
    convention so results can be diffed directly.
    """
    total = count_partitions(catalog.m, n)
    if total > cap:
        raise EnumerationCapError(total, cap)
    baseline = baseline_aggregates(catalog)
    archive = ParetoArchive()
    for cuts in itertools.combinations(range(1, catalog.m), n - 1):
        triple = evaluate(catalog, curve, decode_cuts(cuts, catalog.m))
        archive.insert(triple.as_tuple(), tuple(cuts))
    ordered = sorted(archive.items(), key=lambda item: (item[0], item[1]))
    entries = []
    for row, cuts in ordered:
        triple = ObjectiveTriple(*row)
        entries.append(FrontEntry(decode_cuts(cuts, catalog.m), triple,
                                  normalize(triple, baseline)))
    return entries
