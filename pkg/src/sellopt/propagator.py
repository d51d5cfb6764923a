"""Absorbing-boundary propagators of drifted Brownian motion and the joint
law of (level at an interior time, running maximum of the whole window).

All quantities refer to the log-price x(t) = mu*t + sigma*B(t) started at
x(0) = 0 on the window [0, T]. Building blocks:

* ``g0_plus``: transition density of driftless Brownian motion on the
  half-line y > 0 with an absorbing wall at 0, by the method of images.
* ``g_drift_plus``: the same with drift, obtained from the driftless kernel
  by the Cameron-Martin exponential tilt. Both are evaluated from a single
  collapsed-exponent form that cannot overflow or lose sign.
* ``survival_integral``: probability that the drifted motion started at
  y0 > 0 has not touched the wall by time tau (the kernel integrated over
  the half-line).

From these, the joint law of x(tau) and the running maximum M over [0, T]:

    cumulative_F(x, m, tau) dx = Prob[x(tau) in dx, M <= m]
    joint_pdf_Q = d/dm cumulative_F   (closed form, not finite differences)

The assembly splits the window at tau: the piece on [0, tau] is the
absorbed-at-m density of reaching x, and the piece on [tau, T] is the
survival probability of the gap m - x(t) under reversed drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams
from .special import erfc, erfcx

__all__ = [
    "JointEval",
    "g0_plus",
    "g_drift_plus",
    "survival_integral",
    "cumulative_F",
    "joint_pdf_Q",
]


@dataclass(frozen=True)
class JointEval:
    """One evaluation of the joint law at a point (x, m, tau).

    ``value`` is whichever quantity the producing operation defines there: a
    probability density, or the density-in-x / cumulative-in-m hybrid.
    """

    x: float
    m: float
    tau: float
    value: float

    def __post_init__(self) -> None:
        for name in ("x", "m", "tau", "value"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.m < 0.0 or self.m < self.x:
            raise ValueError(
                f"m must satisfy m >= max(x, 0), got m={self.m}, x={self.x}"
            )
        if self.tau < 0.0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if self.value < 0.0:
            raise ValueError(f"value must be >= 0, got {self.value}")


def _check_positive(name: str, v: float) -> float:
    v = float(v)
    if not (math.isfinite(v) and v > 0.0):
        raise ValueError(f"{name} must be a positive finite number, got {v!r}")
    return v


def _check_finite(name: str, v: float) -> float:
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"{name} must be finite, got {v!r}")
    return v


def _images_kernel(y: float, y0: float, drift: float, sigma: float, tau: float) -> float:
    """Collapsed-exponent form of the absorbing kernel with drift nu:

        (2 pi s2)^(-1/2) * exp(-(y - y0 - nu*tau)^2 / (2 s2))
                         * (1 - exp(-2 y y0 / s2)),   s2 = sigma^2 tau.

    Expanding the image term shows its exponent equals the direct term's
    exponent minus 2*y*y0/s2, so the bracket above is exact; computing it
    with expm1 keeps the kernel nonnegative and accurate for y*y0 small.
    """
    s2 = sigma * sigma * tau
    z = y - y0 - drift * tau
    direct = math.exp(-(z * z) / (2.0 * s2))
    bracket = -math.expm1(-2.0 * y * y0 / s2)
    return direct * bracket / math.sqrt(2.0 * math.pi * s2)


def g0_plus(y: float, y0: float, sigma: float, tau: float) -> float:
    """Driftless absorbing propagator on the half-line (method of images).

        g0_plus = (2 pi sigma^2 tau)^(-1/2)
                  * [exp(-(y-y0)^2/(2 sigma^2 tau)) - exp(-(y+y0)^2/(2 sigma^2 tau))]

    for y > 0, y0 > 0: density of driftless Brownian motion at y after time
    tau, started at y0, killed on touching 0.
    """
    y = _check_positive("y", y)
    y0 = _check_positive("y0", y0)
    sigma = _check_positive("sigma", sigma)
    tau = _check_positive("tau", tau)
    return _images_kernel(y, y0, 0.0, sigma, tau)


def g_drift_plus(y: float, y0: float, drift: float, sigma: float, tau: float) -> float:
    """Absorbing propagator with drift, via the exponential tilt

        g_drift_plus = exp[(drift/sigma^2)(y - y0) - drift^2 tau/(2 sigma^2)]
                       * g0_plus(y, y0, sigma, tau),

    evaluated in collapsed-exponent form so large drift*y0 neither overflows
    nor cancels. drift = 0 reduces to g0_plus exactly.
    """
    y = _check_positive("y", y)
    y0 = _check_positive("y0", y0)
    drift = _check_finite("drift", drift)
    sigma = _check_positive("sigma", sigma)
    tau = _check_positive("tau", tau)
    return _images_kernel(y, y0, drift, sigma, tau)


def survival_integral(y0: float, drift: float, sigma: float, tau: float) -> float:
    """Probability that drifted Brownian motion from y0 > 0 stays positive
    up to time tau (the absorbing kernel integrated over y in (0, inf)):

        1/2 * [ erfc(-(y0 + drift*tau)/sqrt(2 sigma^2 tau))
                - exp(-2 drift y0/sigma^2) * erfc((y0 - drift*tau)/sqrt(2 sigma^2 tau)) ].

    The product in the second term is computed as
    exp(-(y0 + drift*tau)^2/(2 sigma^2 tau)) * erfcx(z) whenever the erfc
    argument z is nonnegative, which removes the overflow of the bare
    exponential for drift < 0; for z < 0 the bare exponential is <= 1 and the
    direct product is safe. The result is clamped to [0, 1] to absorb
    rounding at the saturated ends.
    """
    y0 = _check_positive("y0", y0)
    drift = _check_finite("drift", drift)
    sigma = _check_positive("sigma", sigma)
    tau = _check_positive("tau", tau)
    denom = sigma * math.sqrt(2.0 * tau)
    z1 = (y0 + drift * tau) / denom
    z2 = (y0 - drift * tau) / denom
    first = 0.5 * erfc(-z1)
    if z2 >= 0.0:
        second = 0.5 * math.exp(-(z1 * z1)) * erfcx(z2)
    else:
        second = 0.5 * math.exp(-2.0 * drift * y0 / (sigma * sigma)) * erfc(z2)
    return min(1.0, max(0.0, first - second))


def _survival_dy0(y0: float, drift: float, sigma: float, tau: float) -> float:
    """d/dy0 of survival_integral at fixed (drift, sigma, tau):

        sqrt(2/(pi sigma^2 tau)) * exp(-(y0 + drift*tau)^2/(2 sigma^2 tau))
        + (drift/sigma^2) * exp(-2 drift y0/sigma^2)
          * erfc((y0 - drift*tau)/sqrt(2 sigma^2 tau)),

    with the same erfcx stabilization of the exp*erfc product as in
    survival_integral. Nonnegative (survival increases with the head start).
    """
    s2 = sigma * sigma
    denom = sigma * math.sqrt(2.0 * tau)
    z1 = (y0 + drift * tau) / denom
    z2 = (y0 - drift * tau) / denom
    e1 = math.exp(-(z1 * z1))
    term1 = math.sqrt(2.0 / (math.pi * s2 * tau)) * e1
    if z2 >= 0.0:
        term2 = (drift / s2) * e1 * erfcx(z2)
    else:
        term2 = (drift / s2) * math.exp(-2.0 * drift * y0 / s2) * erfc(z2)
    return max(0.0, term1 + term2)


def _joint_common(
    x: float, m: float, tau: float, params: ModelParams
) -> tuple[float, float, float, float, float]:
    """Shared domain checks and intermediates for the joint law.

    Returns (prefactor, delta, y0, s, s2tau) where prefactor is the free
    Gaussian density (2 pi sigma^2 tau)^(-1/2) exp(-(x - mu tau)^2/(2 sigma^2 tau)),
    delta = 2 m (m - x)/(sigma^2 tau) is the image-term exponent gap, and
    y0 = m - x is the head start of the second window piece of length
    s = T - tau.
    """
    x = _check_finite("x", x)
    m = _check_finite("m", m)
    tau = _check_finite("tau", tau)
    if not (0.0 < tau < params.horizon):
        raise ValueError(
            f"tau must lie strictly inside (0, {params.horizon}), got {tau}"
        )
    if m < 0.0 or m < x:
        raise ValueError(
            f"m must satisfy m >= max(x, 0), got m={m}, x={x}"
        )
    mu = params.mu
    sigma = params.sigma
    s2tau = sigma * sigma * tau
    z = x - mu * tau
    prefactor = math.exp(-(z * z) / (2.0 * s2tau)) / math.sqrt(2.0 * math.pi * s2tau)
    delta = 2.0 * m * (m - x) / s2tau
    return prefactor, delta, m - x, params.horizon - tau, s2tau


def cumulative_F(x: float, m: float, tau: float, params: ModelParams) -> float:
    """Density in x, cumulative in m, of the pair (x(tau), max over [0, T]):

        cumulative_F(x, m, tau) dx = Prob[x(tau) in dx, max_{0<=t<=T} x(t) <= m].

    Closed form: the absorbed-at-m density of reaching x at tau times the
    probability that the remaining window never climbs the gap m - x,

        (2 pi sigma^2 tau)^(-1/2) * exp(-(x - mu tau)^2/(2 sigma^2 tau))
        * (1 - exp(-2 m (m - x)/(sigma^2 tau)))
        * survival_integral(m - x, -mu, sigma, T - tau).

    Requires 0 < tau < T and m >= max(x, 0); at the boundary m = max(x, 0)
    the value is exactly 0.
    """
    prefactor, delta, y0, s, _ = _joint_common(x, m, tau, params)
    if y0 == 0.0 or m == 0.0:
        return 0.0
    bracket = -math.expm1(-delta)
    return prefactor * bracket * survival_integral(y0, -params.mu, params.sigma, s)


def joint_pdf_Q(x: float, m: float, tau: float, params: ModelParams) -> float:
    """Joint probability density of (x(tau), max over [0, T]): the closed-form
    m-derivative of cumulative_F,

        Q = (2 pi sigma^2 tau)^(-1/2) exp(-(x - mu tau)^2/(2 sigma^2 tau)) * [
              (2 (2m - x)/(sigma^2 tau)) * exp(-delta) * B(m - x)
              + (1 - exp(-delta)) * B'(m - x) ],
        delta = 2 m (m - x)/(sigma^2 tau),

    where B is survival_integral(., -mu, sigma, T - tau) and B' its
    derivative in the head start. Both summands are nonnegative, so Q >= 0
    structurally. At m = x the value is 0: both window pieces must stay
    below m, so cumulative_F vanishes quadratically in m - x and its
    m-derivative vanishes at the edge.
    """
    prefactor, delta, y0, s, s2tau = _joint_common(x, m, tau, params)
    if y0 == 0.0:
        return 0.0
    mu = params.mu
    sigma = params.sigma
    b = survival_integral(y0, -mu, sigma, s)
    bprime = _survival_dy0(y0, -mu, sigma, s)
    term_wall = (2.0 * (2.0 * m - x) / s2tau) * math.exp(-delta) * b
    term_gap = -math.expm1(-delta) * bprime
    return prefactor * (term_wall + term_gap)
