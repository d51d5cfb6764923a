"""Probability density of the gap between the running maximum and the value.

For x(t) = mu*t + sigma*B(t) on [0, T] with running maximum
M = max_{0<=t<=T} x(t), the gap y = M - x(tau) at an interior time tau has
the closed-form density

    gap_pdf(y, tau) = (2 pi sigma^2 tau)^(-1/2)      * f(y, tau;  mu) * g(y, T-tau;  mu)
                    + (2 pi sigma^2 (T-tau))^(-1/2)  * f(y, T-tau; -mu) * g(y, tau; -mu),

built from two scalar factors: ``f_factor`` weights how the window piece
containing the maximum reaches a level y above the endpoint value, and
``g_factor`` is the probability (scaled to [0, 2]) that the other window
piece never climbs the gap y. The two summands are the two ways the maximum
can fall before or after tau; swapping (mu, tau) -> (-mu, T-tau) swaps the
summands, which is the time-reversal symmetry

    gap_pdf(y, tau; mu) = gap_pdf(y, T-tau; -mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams
from .special import erfc, erfcx

__all__ = ["GapPoint", "f_factor", "g_factor", "gap_pdf"]

_SQRT_PI_OVER_2 = math.sqrt(math.pi / 2.0)


@dataclass(frozen=True)
class GapPoint:
    """One evaluation of the gap density: gap y at time tau has density
    ``density``."""

    y: float
    tau: float
    density: float

    def __post_init__(self) -> None:
        for name in ("y", "tau", "density"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.y < 0.0:
            raise ValueError(f"y must be >= 0, got {self.y}")
        if self.tau < 0.0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if self.density < 0.0:
            raise ValueError(f"density must be >= 0, got {self.density}")


def _check_domain(y: float, tau: float, mu: float, sigma: float) -> tuple[float, float, float, float]:
    y = float(y)
    tau = float(tau)
    mu = float(mu)
    sigma = float(sigma)
    if not (math.isfinite(y) and y >= 0.0):
        raise ValueError(f"y must be a nonnegative finite number, got {y!r}")
    if not (math.isfinite(tau) and tau > 0.0):
        raise ValueError(f"tau must be a positive finite number, got {tau!r}")
    if not math.isfinite(mu):
        raise ValueError(f"mu must be finite, got {mu!r}")
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise ValueError(f"sigma must be a positive finite number, got {sigma!r}")
    return y, tau, mu, sigma


def f_factor(y: float, tau: float, mu: float, sigma: float) -> float:
    """Maximum-side weight factor of the gap density,

        f(y, tau; mu) = exp(-(y + mu tau)^2 / (2 sigma^2 tau))
                        + (mu/sigma) sqrt(pi tau / 2)
                          * exp(-2 mu y / sigma^2)
                          * erfc((y - mu tau) / sqrt(2 sigma^2 tau)),

    for y >= 0, tau > 0. The exp*erfc product is evaluated as
    exp(-(y + mu tau)^2/(2 sigma^2 tau)) * erfcx(z) whenever the erfc
    argument z is nonnegative (always the case for mu <= 0), which avoids
    the overflow of the bare exponential; for z < 0 the bare exponential is
    below 1 and the direct product is safe. At y = 0 this reduces to the
    endpoint amplitude factor h(tau, mu) of the argmax-time density.
    """
    y, tau, mu, sigma = _check_domain(y, tau, mu, sigma)
    denom = sigma * math.sqrt(2.0 * tau)
    z1 = (y + mu * tau) / denom
    z2 = (y - mu * tau) / denom
    gauss = math.exp(-(z1 * z1))
    coef = (mu / sigma) * _SQRT_PI_OVER_2 * math.sqrt(tau)
    if z2 >= 0.0:
        return gauss + coef * gauss * erfcx(z2)
    return gauss + coef * math.exp(-2.0 * mu * y / (sigma * sigma)) * erfc(z2)


def g_factor(y: float, tau: float, mu: float, sigma: float) -> float:
    """No-climb factor of the gap density,

        g(y, tau; mu) = erfc(-(y - mu tau) / sqrt(2 sigma^2 tau))
                        - exp(2 mu y / sigma^2)
                          * erfc((y + mu tau) / sqrt(2 sigma^2 tau)),

    for y >= 0, tau > 0; equals twice the probability that Brownian motion
    with drift -mu started at y stays positive for time tau, so the value
    lies in [0, 2] (clamped against rounding) and g(0, tau) = 0 exactly.
    The exp*erfc product uses the same erfcx stabilization as f_factor.
    """
    y, tau, mu, sigma = _check_domain(y, tau, mu, sigma)
    if y == 0.0:
        return 0.0
    denom = sigma * math.sqrt(2.0 * tau)
    z1 = (y - mu * tau) / denom
    z2 = (y + mu * tau) / denom
    first = erfc(-z1)
    if z2 >= 0.0:
        second = math.exp(-(z1 * z1)) * erfcx(z2)
    else:
        second = math.exp(2.0 * mu * y / (sigma * sigma)) * erfc(z2)
    return min(2.0, max(0.0, first - second))


def gap_pdf(y: float, tau: float, params: ModelParams) -> float:
    """Density of the gap y = (max over [0, T]) - x(tau) at interior time
    tau, for y >= 0 and 0 < tau < T:

        (2 pi sigma^2 tau)^(-1/2)     * f(y, tau;  mu) * g(y, T-tau;  mu)
      + (2 pi sigma^2 (T-tau))^(-1/2) * f(y, T-tau; -mu) * g(y, tau; -mu).

    Nonnegative; vanishes at y = 0 (both summands carry a g factor that is
    zero there) and integrates to 1 over y in (0, inf).
    """
    y = float(y)
    tau = float(tau)
    if not (math.isfinite(y) and y >= 0.0):
        raise ValueError(f"y must be a nonnegative finite number, got {y!r}")
    if not (math.isfinite(tau) and 0.0 < tau < params.horizon):
        raise ValueError(
            f"tau must lie strictly inside (0, {params.horizon}), got {tau!r}"
        )
    mu = params.mu
    sigma = params.sigma
    s = params.horizon - tau
    norm1 = 1.0 / math.sqrt(2.0 * math.pi * sigma * sigma * tau)
    norm2 = 1.0 / math.sqrt(2.0 * math.pi * sigma * sigma * s)
    first = norm1 * f_factor(y, tau, mu, sigma) * g_factor(y, s, mu, sigma)
    second = norm2 * f_factor(y, s, -mu, sigma) * g_factor(y, tau, -mu, sigma)
    return first + second
