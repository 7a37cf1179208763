"""Manufacturing cost curve with economies of scale, plus saturation diagnostics.

Per-unit cost is expressed relative to individual production (= 1).  Below
the break-even quantity the relative cost stays at 1; beyond it the cost
decays exponentially toward a floor:

    w(n) = 1                                   for n <= bep
    w(n) = omega0 * exp(-kappa * n) + omega_min  for n > bep

The damping coefficient ``kappa`` is not free: it is derived so the curve
is continuous (value 1) exactly at the break-even point,

    kappa = ln(omega0 / (1 - omega_min)) / bep,

which requires omega0 > 1 - omega_min for the curve ever to drop below 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


def derive_kappa(omega0: float, omega_min: float, bep: float) -> float:
    """Decay rate that makes the cost curve continuous at the break-even point."""
    if not 0 < omega_min < 1:
        raise ParameterError(f"omega_min must lie in (0, 1), got {omega_min!r}")
    if bep <= 0:
        raise ParameterError(f"bep must be > 0, got {bep!r}")
    if omega0 <= 1 - omega_min:
        raise ParameterError(
            "non-positive damping: omega0 must exceed 1 - omega_min "
            f"(got omega0={omega0!r}, 1 - omega_min={1 - omega_min!r})")
    return math.log(omega0 / (1.0 - omega_min)) / bep


@dataclass(frozen=True)
class CostCurve:
    """Immutable cost curve; construct via :meth:`from_parameters`."""

    omega0: float
    omega_min: float
    bep: float
    kappa: float

    @classmethod
    def from_parameters(cls, omega0: float, omega_min: float, bep: float) -> "CostCurve":
        return cls(float(omega0), float(omega_min), float(bep),
                   derive_kappa(omega0, omega_min, bep))

    def unit_cost(self, n: float) -> float:
        """Relative per-unit cost at production quantity ``n`` (> 0).

        ``n`` is accepted as a positive real so the curve can be sampled
        densely; the boundary ``n == bep`` maps to the constant branch.
        """
        if n <= 0:
            raise ValueError(f"production quantity must be > 0, got {n!r}")
        if n <= self.bep:
            return 1.0
        return self.omega0 * math.exp(-self.kappa * n) + self.omega_min

    def unit_cost_array(self, quantities: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`unit_cost`; callers guarantee all quantities are > 0."""
        quantities = np.asarray(quantities, dtype=np.float64)
        decayed = self.omega0 * np.exp(-self.kappa * quantities) + self.omega_min
        return np.where(quantities <= self.bep, 1.0, decayed)


def saturation(bep: float, m: int) -> float:
    """Group count beyond which average group sizes fall below the break-even point."""
    if bep <= 0:
        raise ParameterError(f"bep must be > 0, got {bep!r}")
    if m < 1:
        raise ValueError(f"catalog size must be >= 1, got {m}")
    return m / bep


def round_half_up(x: float) -> int:
    """Round half away from zero, for non-negative ``x``."""
    return math.floor(x + 0.5)


def sweep_bound(bep: float, m: int) -> int:
    """Largest group count worth sweeping: twice the saturation value, rounded.

    Rounding is half-up; the result is floored at 1 and capped at ``m``.
    """
    bound = round_half_up(2.0 * saturation(bep, m))
    return max(1, min(bound, m))
