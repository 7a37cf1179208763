"""Contiguous partitions and the grouped cost / torque-deviation objectives.

A partition assigns the catalog's designs, in task order, to N contiguous
groups.  Each group is manufactured as one standardized module: the
group's last (largest-task) design is produced for every member, at the
per-unit cost weight of the group's size.  Standardizing over-specifies
every non-final member's torque, and the summed gap between each group's
torque ceiling and each member's own requirement is the performance price
paid for the cost advantage.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import BaselineTotals, DesignCatalog
from .cost import CostCurve
from .errors import ConstraintError, NormalizationError


@dataclass(frozen=True)
class Partition:
    """Ordered group sizes ``(G_1, ..., G_N)``; the optimization chromosome."""

    group_sizes: tuple[int, ...]

    @property
    def n(self) -> int:
        """Number of groups."""
        return len(self.group_sizes)

    @property
    def m(self) -> int:
        """Total number of designs covered."""
        return sum(self.group_sizes)

    def start_index(self, i: int) -> int:
        """1-based catalog index of group ``i``'s first design (``i`` is 1-based)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"group ordinal {i} out of range 1..{self.n}")
        return 1 + sum(self.group_sizes[: i - 1])

    def end_index(self, i: int) -> int:
        """1-based catalog index of group ``i``'s last design."""
        return self.start_index(i) + self.group_sizes[i - 1] - 1


def validate_partition(group_sizes, m: int) -> Partition:
    """Check the two grouping constraints and return the validated partition.

    g1: sizes sum to ``m``; g2: every size is at least 1.
    """
    sizes = tuple(int(g) for g in group_sizes)
    if not sizes:
        raise ValueError("a partition needs at least one group")
    for position, size in enumerate(sizes, start=1):
        if size < 1:
            raise ConstraintError("g2", f"group {position} has size {size}; every group needs >= 1 design")
    total = sum(sizes)
    if total != m:
        raise ConstraintError("g1", f"group sizes sum to {total}, catalog has {m} designs")
    return Partition(sizes)


@dataclass(frozen=True)
class ObjectiveTriple:
    """Raw minimization objectives: total cost and the two torque-deviation sums."""

    cost: float
    dgamma1: float
    dgamma2: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.cost, self.dgamma1, self.dgamma2)


@dataclass(frozen=True)
class RatioTriple:
    """Objectives normalized by the individual-production baseline."""

    c_ratio: float
    g1_ratio: float
    g2_ratio: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c_ratio, self.g1_ratio, self.g2_ratio)


def group_torque_ceiling(catalog: DesignCatalog, partition: Partition, i: int, joint: int) -> float:
    """Largest required torque at ``joint`` (1 or 2) among group ``i``'s members."""
    if joint not in (1, 2):
        raise ValueError(f"joint must be 1 or 2, got {joint!r}")
    if partition.m != catalog.m:
        raise ValueError(f"partition covers {partition.m} designs, catalog has {catalog.m}")
    start = partition.start_index(i)
    end = partition.end_index(i)
    column = catalog.tau1 if joint == 1 else catalog.tau2
    return float(np.max(column[start - 1:end]))


def evaluate(catalog: DesignCatalog, curve: CostCurve, partition: Partition) -> ObjectiveTriple:
    """Evaluate the three objectives for one partition in O(M).

    Cost: each member of group i is produced as the group's last design, so
    the per-group inner sum collapses to G_i * w(G_i) * S(E(i)).  Deviation:
    each group contributes ceiling * G_i minus the group's torque sum, which
    equals the member-wise sum of (ceiling - tau) since the ceiling dominates
    every member.
    """
    sizes = np.asarray(partition.group_sizes, dtype=np.intp)
    if int(sizes.sum()) != catalog.m:
        raise ValueError(
            f"partition covers {int(sizes.sum())} designs, catalog has {catalog.m}")
    ends = np.cumsum(sizes)
    starts = ends - sizes
    group_sizes = sizes.astype(np.float64)
    weights = curve.unit_cost_array(group_sizes)
    cost = float(np.sum(weights * group_sizes * catalog.sizes[ends - 1]))

    def deviation(column: np.ndarray) -> float:
        ceilings = np.maximum.reduceat(column, starts)
        sums = np.add.reduceat(column, starts)
        # The exact per-group value is >= 0; clamp away negative rounding residue.
        return float(np.sum(np.maximum(ceilings * group_sizes - sums, 0.0)))

    return ObjectiveTriple(cost, deviation(catalog.tau1), deviation(catalog.tau2))


def normalize(triple: ObjectiveTriple, baseline: BaselineTotals) -> RatioTriple:
    """Divide objectives by the individual-production baseline totals.

    A torque baseline of zero is tolerated only when the matching deviation
    is also zero (the ratio is then defined as 0).
    """
    if baseline.c_origin <= 0:
        raise NormalizationError(f"cost baseline must be positive, got {baseline.c_origin!r}")

    def gamma_ratio(dev: float, origin: float, joint: int) -> float:
        if origin == 0:
            if dev == 0:
                return 0.0
            raise NormalizationError(
                f"torque baseline for joint {joint} is zero but deviation is {dev!r}")
        return dev / origin

    return RatioTriple(
        c_ratio=triple.cost / baseline.c_origin,
        g1_ratio=gamma_ratio(triple.dgamma1, baseline.gamma_origin_1, 1),
        g2_ratio=gamma_ratio(triple.dgamma2, baseline.gamma_origin_2, 2),
    )
