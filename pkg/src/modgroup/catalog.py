"""Design catalog: ingestion, validation, synthesis, and baseline totals.

A catalog is the contract boundary with the upstream per-task design
optimizer: one optimal design per task, sorted ascending by the radius of
the circular task region it was optimized for.  Tasks nest, so a design
for a larger region can stand in for any design earlier in the order;
that is what makes contiguous grouping of the sorted catalog meaningful
downstream.
"""
from __future__ import annotations

import hashlib
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import CatalogParseError, CatalogValidationError

CSV_HEADER = "index,l1,l2,l3,l4,ee_x,ee_y,sf,tau1,tau2,task_radius"

# Value columns in CSV order, after the index column.
_VALUE_FIELDS = ("l1", "l2", "l3", "l4", "ee_x", "ee_y", "sf", "tau1", "tau2", "task_radius")
_STRICTLY_POSITIVE = ("l1", "l2", "l3", "l4", "sf", "task_radius")
_NON_NEGATIVE = ("tau1", "tau2")


@dataclass(frozen=True)
class DesignCandidate:
    """One task-optimal design: geometry, scale factor, and required joint torques."""

    index: int
    l1: float
    l2: float
    l3: float
    l4: float
    ee_x: float
    ee_y: float
    sf: float
    tau1: float
    tau2: float
    task_radius: float

    def values(self) -> tuple[float, ...]:
        """The ten numeric columns in CSV order (index excluded)."""
        return (self.l1, self.l2, self.l3, self.l4, self.ee_x, self.ee_y,
                self.sf, self.tau1, self.tau2, self.task_radius)


def design_size(candidate: DesignCandidate) -> float:
    """Material-usage proxy: the six geometric variables summed, times the scale factor."""
    return (candidate.l1 + candidate.l2 + candidate.l3 + candidate.l4
            + candidate.ee_x + candidate.ee_y) * candidate.sf


def _check_values(values: Sequence[float], row: int) -> None:
    """Validate one design's numeric fields; ``row`` labels the error source."""
    named = dict(zip(_VALUE_FIELDS, values))
    for name, value in named.items():
        if not math.isfinite(value):
            raise CatalogValidationError(f"field '{name}' is not finite", field=name, row=row)
    for name in _STRICTLY_POSITIVE:
        if named[name] <= 0:
            raise CatalogValidationError(
                f"field '{name}' must be > 0, got {named[name]!r}", field=name, row=row)
    for name in _NON_NEGATIVE:
        if named[name] < 0:
            raise CatalogValidationError(
                f"field '{name}' must be >= 0, got {named[name]!r}", field=name, row=row)
    extent = sum(values[:6])
    if extent <= 0:
        raise CatalogValidationError(
            "combined link and end-effector extent must be positive", field="size", row=row)


@dataclass(frozen=True)
class DesignCatalog:
    """Immutable, validated collection of candidates sorted by task radius.

    Candidates are 1-indexed and contiguous; ``task_radius`` is non-decreasing.
    Numpy views of the per-design size and torque columns are cached for the
    evaluation hot path and excluded from equality.
    """

    candidates: tuple[DesignCandidate, ...]
    sizes: np.ndarray = field(init=False, repr=False, compare=False)
    tau1: np.ndarray = field(init=False, repr=False, compare=False)
    tau2: np.ndarray = field(init=False, repr=False, compare=False)
    radii: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.candidates:
            raise CatalogValidationError("catalog must contain at least one design")
        previous_radius = None
        for position, cand in enumerate(self.candidates, start=1):
            if cand.index != position:
                raise CatalogValidationError(
                    f"candidate index {cand.index} at position {position}; "
                    "indices must be contiguous starting at 1", field="index", row=position)
            _check_values(cand.values(), row=position)
            if previous_radius is not None and cand.task_radius < previous_radius:
                raise CatalogValidationError(
                    "task_radius must be non-decreasing", field="task_radius", row=position)
            previous_radius = cand.task_radius
        object.__setattr__(self, "sizes",
                           np.array([design_size(c) for c in self.candidates], dtype=np.float64))
        object.__setattr__(self, "tau1",
                           np.array([c.tau1 for c in self.candidates], dtype=np.float64))
        object.__setattr__(self, "tau2",
                           np.array([c.tau2 for c in self.candidates], dtype=np.float64))
        object.__setattr__(self, "radii",
                           np.array([c.task_radius for c in self.candidates], dtype=np.float64))

    @property
    def m(self) -> int:
        return len(self.candidates)

    def to_csv_text(self) -> str:
        """Serialize with full round-trip float precision."""
        lines = [CSV_HEADER]
        for cand in self.candidates:
            lines.append(str(cand.index) + "," + ",".join(repr(v) for v in cand.values()))
        return "\n".join(lines) + "\n"

    def fingerprint(self) -> str:
        """Stable content hash of the canonical CSV serialization."""
        return hashlib.sha256(self.to_csv_text().encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class BaselineTotals:
    """Totals when every design is produced individually: the normalization baseline."""

    c_origin: float
    gamma_origin_1: float
    gamma_origin_2: float


def baseline_aggregates(catalog: DesignCatalog) -> BaselineTotals:
    """Sum per-design sizes and torques over the whole catalog."""
    return BaselineTotals(
        c_origin=float(np.sum(catalog.sizes)),
        gamma_origin_1=float(np.sum(catalog.tau1)),
        gamma_origin_2=float(np.sum(catalog.tau2)),
    )


def _parse_lines(lines: Iterable[str]) -> DesignCatalog:
    iterator = iter(lines)
    try:
        header = next(iterator).rstrip("\r\n")
    except StopIteration:
        raise CatalogParseError(1, "missing header") from None
    if header != CSV_HEADER:
        raise CatalogParseError(1, f"expected header {CSV_HEADER!r}, got {header!r}")
    rows: list[tuple[float, tuple[float, ...]]] = []
    for line_number, raw in enumerate(iterator, start=2):
        line = raw.rstrip("\r\n")
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 11:
            raise CatalogParseError(line_number, f"expected 11 fields, got {len(parts)}")
        try:
            numbers = [float(part) for part in parts]
        except ValueError:
            bad = next(p for p in parts if not _is_number(p))
            raise CatalogParseError(line_number, f"non-numeric field {bad!r}") from None
        values = tuple(numbers[1:])
        _check_values(values, row=line_number)
        rows.append((values[-1], values))
    if not rows:
        raise CatalogParseError(2, "catalog has no data rows")
    # Stable sort: rows with equal task_radius keep their input order.
    rows.sort(key=lambda item: item[0])
    candidates = tuple(
        DesignCandidate(position, *values)
        for position, (_, values) in enumerate(rows, start=1)
    )
    return DesignCatalog(candidates)


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def load_catalog(source: str | Path | IO[str] | Iterable[str]) -> DesignCatalog:
    """Load a catalog from a CSV path, open text stream, or iterable of lines.

    Rows are accepted in any order, re-sorted ascending by ``task_radius``
    (stable, so duplicate radii keep input order), then re-indexed 1..M.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return _parse_lines(handle)
    return _parse_lines(source)


def save_catalog(catalog: DesignCatalog, dest: str | Path | IO[str]) -> None:
    """Write a catalog as CSV; reloading the output reproduces the catalog exactly."""
    text = catalog.to_csv_text()
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        dest.write(text)


def loads_catalog(text: str) -> DesignCatalog:
    """Parse a catalog from an in-memory CSV string."""
    return _parse_lines(io.StringIO(text))


@dataclass(frozen=True)
class GeneratorProfile:
    """Shape parameters for synthetic catalogs.

    Radii are spaced linearly over ``[radius_min, radius_max]``.  Geometry
    follows the radius with bounded multiplicative noise; torques follow a
    power law of the radius with their own noise so that per-group maxima
    are non-trivial.  The scale factor grows linearly from 1 by ``sf_gain``
    across the radius range.
    """

    radius_min: float = 0.5
    radius_max: float = 3.0
    link_fractions: tuple[float, float, float, float] = (0.35, 0.30, 0.25, 0.20)
    ee_fractions: tuple[float, float] = (0.05, 0.05)
    link_noise: float = 0.10
    ee_noise: float = 0.10
    sf_gain: float = 0.5
    torque_coeffs: tuple[float, float] = (2.0, 1.2)
    torque_exponent: float = 1.5
    torque_noise: float = 0.15

    def __post_init__(self) -> None:
        if self.radius_min <= 0 or self.radius_max <= self.radius_min:
            raise CatalogValidationError(
                "generator profile requires 0 < radius_min < radius_max", field="radius")
        for name in ("link_noise", "ee_noise", "torque_noise"):
            value = getattr(self, name)
            if not 0 <= value < 1:
                raise CatalogValidationError(
                    f"generator profile noise '{name}' must lie in [0, 1)", field=name)


DEFAULT_PROFILE = GeneratorProfile()


def synthesize_catalog(count: int, seed: int,
                       profile: GeneratorProfile = DEFAULT_PROFILE) -> DesignCatalog:
    """Deterministically generate a valid catalog of ``count`` designs.

    Stands in for the upstream optimizer's output: strictly increasing task
    radii, radius-proportional geometry with seeded bounded noise, and
    increasing-trend torques with seeded noise.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    radii = np.linspace(profile.radius_min, profile.radius_max, count)
    link_noise = rng.uniform(-profile.link_noise, profile.link_noise, size=(count, 4))
    ee_noise = rng.uniform(-profile.ee_noise, profile.ee_noise, size=(count, 2))
    tau_noise = rng.uniform(-profile.torque_noise, profile.torque_noise, size=(count, 2))

    links = radii[:, None] * np.asarray(profile.link_fractions) * (1.0 + link_noise)
    ee = radii[:, None] * np.asarray(profile.ee_fractions) * (1.0 + ee_noise)
    span = profile.radius_max - profile.radius_min
    sf = 1.0 + profile.sf_gain * (radii - profile.radius_min) / span
    trend = radii ** profile.torque_exponent
    taus = np.asarray(profile.torque_coeffs) * trend[:, None] * (1.0 + tau_noise)

    candidates = tuple(
        DesignCandidate(
            index=j + 1,
            l1=float(links[j, 0]), l2=float(links[j, 1]),
            l3=float(links[j, 2]), l4=float(links[j, 3]),
            ee_x=float(ee[j, 0]), ee_y=float(ee[j, 1]),
            sf=float(sf[j]),
            tau1=float(taus[j, 0]), tau2=float(taus[j, 1]),
            task_radius=float(radii[j]),
        )
        for j in range(count)
    )
    return DesignCatalog(candidates)
