"""Exact density of the time at which x(t) = mu*t + sigma*B(t) attains its
maximum over [0, T].

The density factorizes into independent contributions from the two window
pieces on either side of the argmax time t_m:

    argmax_pdf(t_m) = h(t_m, mu) * h(T - t_m, -mu) / (pi * sqrt(t_m (T - t_m))),
    h(t, mu) = exp(-mu^2 t/(2 sigma^2))
               + (mu/sigma) sqrt(pi t/2) * erfc(-(mu/sigma) sqrt(t/2)).

At mu = 0, h = 1 and the classical arcsine law 1/(pi sqrt(t_m(T - t_m)))
is recovered. The density keeps inverse-square-root divergences at both
endpoints with amplitudes

    argmax_pdf(t_m -> 0)  ~ A(mu)/sqrt(t_m),      A(mu)  = h(T, -mu)/(pi sqrt(T)),
    argmax_pdf(t_m -> T)  ~ A(-mu)/sqrt(T - t_m),

so the maximum is most likely found near the favorable endpoint
(A(-mu) > A(mu) for mu > 0). Time reversal swaps the h factors:
argmax_pdf(t_m; mu) = argmax_pdf(T - t_m; -mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Curve, ModelParams
from .quadrature import integrate_finite
from .special import erfc, erfcx

__all__ = [
    "ArgmaxPoint",
    "h_factor",
    "argmax_pdf",
    "endpoint_amplitude",
    "argmax_cdf",
    "argmax_curve",
]

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class ArgmaxPoint:
    """One evaluation of the argmax-time density at an interior time t_m."""

    t_m: float
    density: float

    def __post_init__(self) -> None:
        for name in ("t_m", "density"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.t_m <= 0.0:
            raise ValueError(f"t_m must be > 0 (open interval), got {self.t_m}")
        if self.density <= 0.0:
            raise ValueError(f"density must be > 0, got {self.density}")


def h_factor(t: float, mu: float, sigma: float) -> float:
    """One-sided weight of the argmax factorization,

        h(t, mu) = exp(-mu^2 t/(2 sigma^2))
                   + (mu/sigma) sqrt(pi t/2) * erfc(-(mu/sigma) sqrt(t/2)),

    for t >= 0; h(0, mu) = 1 and h(t, 0) = 1. For mu < 0 the two terms
    cancel to leading order, so with z = (|mu|/sigma) sqrt(t/2) the value is
    computed as exp(-z^2) * (1 - sqrt(pi) z erfcx(z)), which is positive and
    stable; for mu >= 0 both terms are nonnegative and the direct form is
    used. Grows like (mu/sigma) sqrt(2 pi t) for mu sqrt(t)/sigma >> 1.
    """
    t = float(t)
    mu = float(mu)
    sigma = float(sigma)
    if not (math.isfinite(t) and t >= 0.0):
        raise ValueError(f"t must be a nonnegative finite number, got {t!r}")
    if not math.isfinite(mu):
        raise ValueError(f"mu must be finite, got {mu!r}")
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise ValueError(f"sigma must be a positive finite number, got {sigma!r}")
    z = (mu / sigma) * math.sqrt(0.5 * t)
    if z >= 0.0:
        return math.exp(-(z * z)) + _SQRT_PI * z * erfc(-z)
    z = -z
    return math.exp(-(z * z)) * (1.0 - _SQRT_PI * z * erfcx(z))


def argmax_pdf(t_m: float, params: ModelParams) -> float:
    """Density of the argmax time at t_m strictly inside (0, T):

        h(t_m, mu) * h(T - t_m, -mu) / (pi * sqrt(t_m * (T - t_m))).

    Strictly positive; diverges like an inverse square root toward either
    endpoint (see endpoint_amplitude), hence the open-interval domain.
    """
    t_m = float(t_m)
    horizon = params.horizon
    if not (math.isfinite(t_m) and 0.0 < t_m < horizon):
        raise ValueError(
            f"t_m must lie strictly inside (0, {horizon}), got {t_m!r}"
        )
    left = h_factor(t_m, params.mu, params.sigma)
    right = h_factor(horizon - t_m, -params.mu, params.sigma)
    return left * right / (math.pi * math.sqrt(t_m * (horizon - t_m)))


def endpoint_amplitude(params: ModelParams, end: str) -> float:
    """Coefficient of the inverse-square-root divergence of argmax_pdf:

        argmax_pdf(t_m) ~ endpoint_amplitude("left") / sqrt(t_m)       as t_m -> 0,
        argmax_pdf(t_m) ~ endpoint_amplitude("right") / sqrt(T - t_m)  as t_m -> T,

    equal to h(T, -mu)/(pi sqrt(T)) on the left and h(T, mu)/(pi sqrt(T))
    on the right (the surviving factor of the product at the opposite end).
    Both are positive; the right amplitude exceeds the left one exactly when
    mu > 0.
    """
    if end == "left":
        bracket = h_factor(params.horizon, -params.mu, params.sigma)
    elif end == "right":
        bracket = h_factor(params.horizon, params.mu, params.sigma)
    else:
        raise ValueError(f"end must be 'left' or 'right', got {end!r}")
    return bracket / (math.pi * math.sqrt(params.horizon))


def argmax_cdf(t: float, params: ModelParams, tol: float = 1e-9) -> float:
    """Probability that the maximum is attained before time t, for t in
    [0, T]. The substitution t_m = T sin^2(theta) removes both
    inverse-square-root endpoints, leaving the bounded integrand
    (2/pi) h(T sin^2 theta, mu) h(T cos^2 theta, -mu) on
    theta in (0, arcsin(sqrt(t/T))); the result is clamped to [0, 1].
    CDF(0) = 0 and CDF(T) = 1 exactly.
    """
    t = float(t)
    horizon = params.horizon
    if not (math.isfinite(t) and 0.0 <= t <= horizon):
        raise ValueError(f"t must lie in [0, {horizon}], got {t!r}")
    if t == 0.0:
        return 0.0
    if t == horizon:
        return 1.0
    mu = params.mu
    sigma = params.sigma

    def integrand(theta: float) -> float:
        s = math.sin(theta)
        c = math.cos(theta)
        return (
            (2.0 / math.pi)
            * h_factor(horizon * s * s, mu, sigma)
            * h_factor(horizon * c * c, -mu, sigma)
        )

    upper = math.asin(math.sqrt(t / horizon))
    result = integrate_finite(integrand, 0.0, upper, tol=tol)
    return min(1.0, max(0.0, result.value))


def argmax_curve(params: ModelParams, grid_n: int = 64) -> Curve:
    """argmax_pdf sampled on grid_n + 1 evenly spaced interior times.

    The density diverges at 0 and T, so the grid is shifted inward by
    delta = T/(10 * grid_n) at both ends (recorded in metadata as
    "endpoint_offset"); all sampled values are strictly positive.
    """
    grid_n = int(grid_n)
    if grid_n < 2:
        raise ValueError(f"grid_n must be >= 2, got {grid_n}")
    horizon = params.horizon
    delta = horizon / (10.0 * grid_n)
    span = horizon - 2.0 * delta
    xs = tuple(delta + i * span / grid_n for i in range(grid_n + 1))
    values = tuple(argmax_pdf(t, params) for t in xs)
    return Curve(
        xs=xs,
        values=values,
        metadata={
            "quantity": "argmax-time density",
            "mu": params.mu,
            "sigma": params.sigma,
            "horizon": params.horizon,
            "endpoint_offset": delta,
        },
    )
