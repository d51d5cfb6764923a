"""Shared value types for the analytic and Monte Carlo layers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["ModelParams", "Curve", "InvariantViolation"]


class InvariantViolation(RuntimeError):
    """A computed quantity violated a structural guarantee (normalization,
    endpoint optimality, verification bound). Distinct from ValueError so
    callers can separate bad inputs from numerical contract failures."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Log-price model x(t) = mu*t + sigma*B(t); the price is exp(x(t)).

    mu      : drift per unit time (any sign)
    sigma   : volatility per sqrt(unit time), > 0
    horizon : total observation window T, > 0
    """

    mu: float
    sigma: float
    horizon: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", _require_finite("mu", self.mu))
        object.__setattr__(self, "sigma", _require_finite("sigma", self.sigma))
        object.__setattr__(self, "horizon", _require_finite("horizon", self.horizon))
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if self.horizon <= 0.0:
            raise ValueError(f"horizon must be > 0, got {self.horizon}")


@dataclass(frozen=True)
class Curve:
    """A sampled function: strictly increasing abscissae with values.

    metadata carries provenance needed to interpret the grid (for example
    the endpoint offset used by densities that diverge at the boundary).
    """

    xs: tuple[float, ...]
    values: tuple[float, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.xs) != len(self.values):
            raise ValueError(
                f"xs and values must have equal length, got {len(self.xs)} and {len(self.values)}"
            )
        if len(self.xs) < 2:
            raise ValueError("a curve needs at least two points")
        for a, b in zip(self.xs, self.xs[1:]):
            if not (b > a):
                raise ValueError("xs must be strictly increasing")

    def __len__(self) -> int:
        return len(self.xs)
