"""NSGA-II over divider-encoded contiguous partitions, with an external archive.

Chromosomes are the divider positions themselves: a partition of M designs
into N contiguous groups is exactly a choice of N-1 distinct cut points in
[1, M-1], so both grouping constraints hold by construction and no repair
step is ever needed.  Genetic operators act on sorted cut tuples; every
evaluated non-dominated point is accumulated in an external archive, which
is returned (merged with the terminal population's first front) as the
run's result.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import accumulate
from typing import Callable, Sequence

import numpy as np

from .catalog import DesignCatalog, baseline_aggregates
from .cost import CostCurve, round_half_up
from .errors import ParameterError
from .objectives import ObjectiveTriple, Partition, RatioTriple, evaluate, normalize

Cuts = tuple[int, ...]


@dataclass(frozen=True)
class GaConfig:
    """Hyperparameters for one optimizer run.

    ``mutation_rate`` is per chromosome; ``mutation_step`` bounds how far a
    single divider may be displaced by one mutation.
    """

    population_size: int = 100
    generations: int = 200
    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    mutation_step: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population_size < 4 or self.population_size % 2:
            raise ParameterError(
                f"population_size must be even and >= 4, got {self.population_size}")
        if self.generations < 1:
            raise ParameterError(f"generations must be >= 1, got {self.generations}")
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0 <= rate <= 1:
                raise ParameterError(f"{name} must lie in [0, 1], got {rate!r}")
        if self.mutation_step < 1:
            raise ParameterError(f"mutation_step must be >= 1, got {self.mutation_step}")


@dataclass(frozen=True)
class FrontEntry:
    """One non-dominated solution with its raw and normalized objectives."""

    partition: Partition
    objectives: ObjectiveTriple
    ratios: RatioTriple


def decode_cuts(cuts: Cuts, m: int) -> Partition:
    """Group sizes are the consecutive differences of (0, cuts..., m)."""
    bounds = (0,) + tuple(cuts) + (m,)
    return Partition(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def encode_partition(partition: Partition) -> Cuts:
    """Inverse of :func:`decode_cuts`: cumulative sums short of the total."""
    return tuple(accumulate(partition.group_sizes))[:-1]


def _as_rows(points: Sequence) -> np.ndarray:
    rows = [p.as_tuple() if hasattr(p, "as_tuple") else tuple(p) for p in points]
    return np.asarray(rows, dtype=np.float64)


def _fronts_from_rows(rows: np.ndarray) -> list[list[int]]:
    """Fast non-dominated sort; minimization in every column."""
    le = (rows[:, None, :] <= rows[None, :, :]).all(axis=2)
    lt = (rows[:, None, :] < rows[None, :, :]).any(axis=2)
    dominates = le & lt  # dominates[i, j]: i dominates j
    dominator_count = dominates.sum(axis=0)
    fronts: list[list[int]] = []
    current = np.nonzero(dominator_count == 0)[0]
    while current.size:
        fronts.append(current.tolist())
        dominator_count[current] = -1  # retire this front
        dominator_count -= dominates[current].sum(axis=0)
        current = np.nonzero(dominator_count == 0)[0]
    return fronts


def non_dominated_sort(points: Sequence) -> list[list[int]]:
    """Partition point indices into successive non-dominated fronts.

    Domination is <= in every objective and < in at least one; equal points
    do not dominate each other.  Front 0 holds the points dominated by none.
    """
    if len(points) == 0:
        raise ValueError("non_dominated_sort needs at least one point")
    return _fronts_from_rows(_as_rows(points))


def _crowding_from_rows(rows: np.ndarray) -> np.ndarray:
    size = len(rows)
    if size <= 2:
        return np.full(size, np.inf)
    distances = np.zeros(size)
    for column in rows.T:
        order = np.argsort(column, kind="stable")
        distances[order[0]] = distances[order[-1]] = np.inf
        span = column[order[-1]] - column[order[0]]
        if span == 0:
            continue
        gaps = (column[order[2:]] - column[order[:-2]]) / span
        distances[order[1:-1]] += gaps
    return distances


def crowding_distance(front: Sequence) -> list[float]:
    """Crowding distances within one front: boundary points get +inf, interior
    points the sum over objectives of normalized neighbor gaps."""
    if len(front) == 0:
        raise ValueError("crowding_distance needs at least one point")
    return _crowding_from_rows(_as_rows(front)).tolist()


class ParetoArchive:
    """Mutually non-dominated objective rows with lexicographic payload tie-break.

    Rows already present (by exact equality) keep the smaller payload; a new
    row is rejected if any archived row dominates it, and evicts archived
    rows it dominates.
    """

    def __init__(self, dim: int = 3):
        self._dim = dim
        self._rows: list[tuple[float, ...]] = []
        self._payloads: list = []
        self._index: dict[tuple[float, ...], int] = {}
        self._buffer = np.empty((16, dim), dtype=np.float64)

    def __len__(self) -> int:
        return len(self._rows)

    def _matrix(self) -> np.ndarray:
        return self._buffer[: len(self._rows)]

    def insert(self, row: tuple[float, ...], payload) -> bool:
        position = self._index.get(row)
        if position is not None:
            if payload < self._payloads[position]:
                self._payloads[position] = payload
            return False
        count = len(self._rows)
        if count:
            matrix = self._matrix()
            candidate = np.asarray(row, dtype=np.float64)
            le = (matrix <= candidate).all(axis=1)
            lt = (matrix < candidate).any(axis=1)
            if bool((le & lt).any()):
                return False
            ge = (matrix >= candidate).all(axis=1)
            gt = (matrix > candidate).any(axis=1)
            doomed = ge & gt
            if bool(doomed.any()):
                self._compact(~doomed)
        self._append(row, payload)
        return True

    def _append(self, row: tuple[float, ...], payload) -> None:
        count = len(self._rows)
        if count == len(self._buffer):
            grown = np.empty((2 * len(self._buffer), self._dim), dtype=np.float64)
            grown[:count] = self._buffer
            self._buffer = grown
        self._buffer[count] = row
        self._rows.append(row)
        self._payloads.append(payload)
        self._index[row] = count

    def _compact(self, keep: np.ndarray) -> None:
        kept = [i for i, flag in enumerate(keep) if flag]
        self._rows = [self._rows[i] for i in kept]
        self._payloads = [self._payloads[i] for i in kept]
        self._buffer[: len(kept)] = self._buffer[kept]
        self._index = {row: i for i, row in enumerate(self._rows)}

    def items(self) -> list[tuple[tuple[float, ...], object]]:
        return list(zip(self._rows, self._payloads))


def _equal_size_cuts(m: int, n: int) -> Cuts:
    base, remainder = divmod(m, n)
    sizes = [base + 1] * remainder + [base] * (n - remainder)
    return tuple(accumulate(sizes))[:-1]


def _bep_size_cuts(m: int, n: int, bep: float) -> Cuts:
    """Groups near the break-even size, earlier groups first, remainder last."""
    target = max(1, round_half_up(bep))
    sizes: list[int] = []
    remaining = m
    for groups_left in range(n, 1, -1):
        size = max(1, min(target, remaining - (groups_left - 1)))
        sizes.append(size)
        remaining -= size
    sizes.append(remaining)
    return tuple(accumulate(sizes))[:-1]


def _random_cuts(rng: random.Random, m: int, n: int) -> Cuts:
    return tuple(sorted(rng.sample(range(1, m), n - 1)))


def _crossover(rng: random.Random, a: Cuts, b: Cuts, m: int) -> tuple[Cuts, Cuts]:
    """Single-point exchange of divider subsets, closed under feasibility.

    Duplicate dividers after the exchange are redrawn uniformly from free
    positions, so children always decode to valid partitions.
    """
    length = len(a)
    if length == 1:
        return b, a
    point = rng.randrange(1, length)
    return (
        _repair(rng, a[:point] + b[point:], length, m),
        _repair(rng, b[:point] + a[point:], length, m),
    )


def _repair(rng: random.Random, cuts: Cuts, length: int, m: int) -> Cuts:
    unique = set(cuts)
    while len(unique) < length:
        candidate = rng.randint(1, m - 1)
        unique.add(candidate)
    return tuple(sorted(unique))


def _mutate(rng: random.Random, cuts: Cuts, m: int, step: int) -> Cuts:
    """Displace one divider uniformly within +-step, clamped between its neighbors."""
    length = len(cuts)
    which = rng.randrange(length)
    lower = (cuts[which - 1] if which > 0 else 0) + 1
    upper = (cuts[which + 1] if which < length - 1 else m) - 1
    low = max(lower, cuts[which] - step)
    high = min(upper, cuts[which] + step)
    moved = rng.randint(low, high)
    if moved == cuts[which]:
        return cuts
    return cuts[:which] + (moved,) + cuts[which + 1:]


def _rank_and_crowding(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    fronts = _fronts_from_rows(rows)
    rank = np.empty(len(rows), dtype=np.intp)
    crowd = np.empty(len(rows), dtype=np.float64)
    for level, front in enumerate(fronts):
        rank[front] = level
        crowd[front] = _crowding_from_rows(rows[front])
    return rank, crowd


def optimize_fixed_n(
    catalog: DesignCatalog,
    curve: CostCurve,
    n: int,
    config: GaConfig | None = None,
    on_generation: Callable[[int, list[tuple[float, ...]]], None] | None = None,
) -> list[FrontEntry]:
    """Run NSGA-II for a fixed group count and return the non-dominated archive.

    The archive accumulates every non-dominated point seen across all
    generations (deduplicated by objective triple, keeping the
    lexicographically smallest chromosome) and is merged with the terminal
    population's first front.  Entries come back sorted by objective triple.
    Deterministic for a fixed seed.  For n = 1 and n = catalog.m the single
    feasible partition is returned directly.
    """
    config = config if config is not None else GaConfig()
    m = catalog.m
    if not 1 <= n <= m:
        raise ValueError(f"group count {n} out of range 1..{m}")
    baseline = baseline_aggregates(catalog)

    memo: dict[Cuts, tuple[float, float, float]] = {}

    def fitness(cuts: Cuts) -> tuple[float, float, float]:
        row = memo.get(cuts)
        if row is None:
            triple = evaluate(catalog, curve, decode_cuts(cuts, m))
            row = triple.as_tuple()
            memo[cuts] = row
        return row

    def build_entry(row: tuple[float, float, float], cuts: Cuts) -> FrontEntry:
        triple = ObjectiveTriple(*row)
        return FrontEntry(decode_cuts(cuts, m), triple, normalize(triple, baseline))

    if n == 1 or n == m:
        cuts: Cuts = () if n == 1 else tuple(range(1, m))
        return [build_entry(fitness(cuts), cuts)]

    rng = random.Random(config.seed)
    population: list[Cuts] = [_equal_size_cuts(m, n), _bep_size_cuts(m, n, curve.bep)]
    while len(population) < config.population_size:
        population.append(_random_cuts(rng, m, n))

    archive = ParetoArchive()
    rows = np.asarray([fitness(c) for c in population])

    for generation in range(config.generations):
        rank, crowd = _rank_and_crowding(rows)

        def tournament() -> Cuts:
            i = rng.randrange(len(population))
            j = rng.randrange(len(population))
            winner = min(i, j, key=lambda k: (rank[k], -crowd[k], population[k]))
            return population[winner]

        offspring: list[Cuts] = []
        while len(offspring) < config.population_size:
            parent_a, parent_b = tournament(), tournament()
            if rng.random() < config.crossover_rate:
                child_a, child_b = _crossover(rng, parent_a, parent_b, m)
            else:
                child_a, child_b = parent_a, parent_b
            if rng.random() < config.mutation_rate:
                child_a = _mutate(rng, child_a, m, config.mutation_step)
            if rng.random() < config.mutation_rate:
                child_b = _mutate(rng, child_b, m, config.mutation_step)
            offspring.append(child_a)
            offspring.append(child_b)
        offspring = offspring[: config.population_size]

        combined = population + offspring
        combined_rows = np.vstack([rows, np.asarray([fitness(c) for c in offspring])])
        fronts = _fronts_from_rows(combined_rows)
        for index in fronts[0]:
            archive.insert(tuple(combined_rows[index]), combined[index])

        combined_rank = np.empty(len(combined), dtype=np.intp)
        combined_crowd = np.empty(len(combined), dtype=np.float64)
        for level, front in enumerate(fronts):
            combined_rank[front] = level
            combined_crowd[front] = _crowding_from_rows(combined_rows[front])
        order = sorted(
            range(len(combined)),
            key=lambda k: (combined_rank[k], -combined_crowd[k], combined[k]),
        )
        survivors = order[: config.population_size]
        population = [combined[k] for k in survivors]
        rows = combined_rows[survivors]

        if on_generation is not None:
            on_generation(generation, [row for row, _ in archive.items()])

    # Merge the terminal population's first front into the archive.  Anything
    # globally non-dominated already passed through a combined front, so this
    # is a no-op safeguard against future loop refactors.
    for index in _fronts_from_rows(rows)[0]:
        archive.insert(tuple(rows[index]), population[index])

    ordered = sorted(archive.items(), key=lambda item: (item[0], item[1]))
    return [build_entry(row, cuts) for row, cuts in ordered]
