"""Expected price-to-maximum ratio, optimal selling time, and its error.

For the price exp(x(t)) with x(t) = mu*t + sigma*B(t) on [0, T], selling at
a deterministic time tau is scored by

    S(tau) = E[ exp(x(tau)) / exp(M) ] = integral_0^inf e^(-y) gap_pdf(y, tau) dy,

where M is the running maximum of x over the whole window and y = M - x(tau)
is the gap. S lies in (0, 1]; the relative error of the strategy is
r(tau) = 1 - S(tau). S obeys the time-reversal symmetry
S(tau; mu) = S(T - tau; -mu), has local maxima at the two endpoints, and is
maximized at tau = T when mu > 0 and at tau = 0 when mu < 0 (both when
mu = 0). The endpoint values have the closed form

    S(0) = W(mu),  S(T) = W(-mu),
    W(nu) = E[ exp(-max of (nu*t + sigma*B(t)) over [0, T]) ],

evaluated here from the running-maximum law in a cancellation-free
arrangement (see _endpoint_expectation). The best achievable relative error
is r(tau*) = 1 - W(-|mu|).

The drift is often quoted through the dimensionless quality parameter
alpha = mu/sigma^2 + 1/2: alpha > 1/2 is a stock worth holding to the end,
alpha < 1/2 one to sell immediately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gap import gap_pdf
from .model import Curve, InvariantViolation, ModelParams
from .quadrature import integrate_semi_infinite
from .special import erfc, erfcx

__all__ = [
    "AlphaParams",
    "OptimalReport",
    "alpha_to_mu",
    "endpoint_s",
    "s_of_tau",
    "optimal_relative_error",
    "optimize",
    "selling_curve",
]

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_TIE_TOL = 1e-10          # endpoint values closer than this count as a tie
_SERIES_WIDTH = 1e-3      # |b - a| below this switches W(nu) to the series branch


@dataclass(frozen=True)
class AlphaParams:
    """Drift quoted as the dimensionless quality alpha = mu/sigma^2 + 1/2."""

    alpha: float
    sigma: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        sigma = float(self.sigma)
        if not math.isfinite(alpha):
            raise ValueError(f"alpha must be finite, got {alpha!r}")
        if not (math.isfinite(sigma) and sigma > 0.0):
            raise ValueError(f"sigma must be a positive finite number, got {sigma!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "sigma", sigma)


def alpha_to_mu(a: AlphaParams) -> float:
    """Drift implied by the quality parameter: mu = (alpha - 1/2) * sigma^2."""
    return (a.alpha - 0.5) * a.sigma * a.sigma


@dataclass(frozen=True)
class OptimalReport:
    """Outcome of the endpoint-optimality analysis of S(tau).

    tau_star holds the optimal selling time(s): (T,) in the good regime
    (mu > 0), (0,) in the bad regime (mu < 0), and both endpoints when the
    endpoint values tie (degenerate regime, in particular mu = 0).
    interior_max is the largest S seen on the verification grid strictly
    inside (0, T); it never exceeds max(s_at_0, s_at_T) beyond quadrature
    tolerance.
    """

    tau_star: tuple[float, ...]
    s_at_0: float
    s_at_T: float
    optimal_relative_error: float
    regime: str
    interior_max: float
    grid_n: int

    def __post_init__(self) -> None:
        if self.regime not in ("good", "bad", "degenerate"):
            raise ValueError(f"regime must be good/bad/degenerate, got {self.regime!r}")
        if not 0.0 <= self.optimal_relative_error <= 1.0:
            raise ValueError(
                f"optimal_relative_error must lie in [0, 1], got {self.optimal_relative_error}"
            )
        for name in ("s_at_0", "s_at_T"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {v}")


def _endpoint_expectation(drift: float, sigma: float, horizon: float) -> float:
    """W(nu) = E[exp(-max over [0, T] of Brownian motion with drift nu)].

    Integrating e^(-m) against the running-maximum density gives, with
    a = (nu/sigma) sqrt(T/2) and b = ((sigma^2 - nu)/sigma) sqrt(T/2),

        W = E1 + a * (E1 - erfc(a)) / (b - a),
        E1 = exp(b^2 - a^2) * erfc(b) = exp(-a^2) * erfcx(b).

    The difference quotient has a removable singularity at b = a (that is,
    nu = sigma^2/2); since E1 - erfc(a) = exp(-a^2) * (erfcx(b) - erfcx(a)),
    near the pole the quotient is replaced by the symmetric three-term
    Taylor expansion of erfcx about the midpoint, which is exact to O(w^4)
    in the half-width w. All intermediate quantities stay bounded for every
    drift sign.
    """
    root = math.sqrt(0.5 * horizon)
    a = (drift / sigma) * root
    b = ((sigma * sigma - drift) / sigma) * root
    if b >= 0.0:
        e1 = math.exp(-(a * a)) * erfcx(b)
    else:
        # b < 0 forces nu > sigma^2, so the exponent is < -sigma^2 T/2 < 0.
        e1 = math.exp((0.5 * sigma * sigma - drift) * horizon) * erfc(b)
    gap = b - a
    mid = 0.5 * (a + b)
    if abs(gap) <= _SERIES_WIDTH and mid >= -26.0:
        e0 = erfcx(mid)
        d1 = 2.0 * mid * e0 - _TWO_OVER_SQRT_PI
        d2 = 2.0 * e0 + 2.0 * mid * d1
        d3 = 4.0 * d1 + 2.0 * mid * d2
        w_half = 0.5 * gap
        quotient = d1 + w_half * w_half * d3 / 6.0
        value = e1 + (a * math.exp(-(a * a))) * quotient
    else:
        value = e1 + a * (e1 - erfc(a)) / gap
    return min(1.0, max(5e-324, value))


def endpoint_s(end: str, params: ModelParams) -> float:
    """Closed-form S at a window endpoint: end = "start" gives S(0) = W(mu)
    (the gap at tau = 0 is the whole running maximum), end = "horizon" gives
    S(T) = W(-mu) (by time reversal of the path)."""
    if end == "start":
        return _endpoint_expectation(params.mu, params.sigma, params.horizon)
    if end == "horizon":
        return _endpoint_expectation(-params.mu, params.sigma, params.horizon)
    raise ValueError(f"end must be 'start' or 'horizon', got {end!r}")


def s_of_tau(tau: float, params: ModelParams, tol: float = 1e-9) -> float:
    """Expected price-to-maximum ratio S(tau) for 0 <= tau <= T.

    Interior times integrate e^(-y) gap_pdf(y, tau) over y in (0, inf) by
    adaptive quadrature to absolute tolerance tol; the endpoints use the
    closed form endpoint_s. The integrand's scale is symmetric in mu, so the
    time-reversal symmetry S(tau; mu) = S(T - tau; -mu) holds to quadrature
    accuracy.
    """
    tau = float(tau)
    horizon = params.horizon
    if not (math.isfinite(tau) and 0.0 <= tau <= horizon):
        raise ValueError(f"tau must lie in [0, {horizon}], got {tau!r}")
    if tau == 0.0:
        return endpoint_s("start", params)
    if tau == horizon:
        return endpoint_s("horizon", params)
    scale = 1.0 + params.sigma * math.sqrt(horizon) + abs(params.mu) * horizon
    result = integrate_semi_infinite(
        lambda y: math.exp(-y) * gap_pdf(y, tau, params), 0.0, tol=tol, scale=scale
    )
    return min(1.0, max(0.0, result.value))


def optimal_relative_error(params: ModelParams) -> float:
    """Relative error of selling at the optimal endpoint, in closed form:

        r(tau*) = 1 - (|mu|/(2|mu| + sigma^2)) * erfc(-(|mu|/sigma) sqrt(T/2))
                    - ((sigma^2 + |mu|)/(sigma^2 + 2|mu|))
                      * exp(-mu^2 T/(2 sigma^2))
                      * erfcx(((sigma^2 + |mu|)/sigma) sqrt(T/2)).

    Symmetric in mu <-> -mu and equal to 1 - endpoint_s at the optimal end
    (tau* = T for mu > 0, tau* = 0 for mu < 0, either for mu = 0); the erfcx
    form keeps every factor bounded for all parameter values. Vanishes as
    T -> 0 and grows toward 1 as T -> inf.
    """
    m = abs(params.mu)
    sigma = params.sigma
    horizon = params.horizon
    s2 = sigma * sigma
    root = math.sqrt(0.5 * horizon)
    term1 = (m / (2.0 * m + s2)) * erfc(-(m / sigma) * root)
    z = (m / sigma) * root
    term2 = ((s2 + m) / (s2 + 2.0 * m)) * math.exp(-(z * z)) * erfcx(((s2 + m) / sigma) * root)
    return min(1.0, max(0.0, 1.0 - term1 - term2))


def optimize(params: ModelParams, grid_n: int = 64, tol: float = 1e-9) -> OptimalReport:
    """Locate the optimal selling time and verify endpoint optimality.

    The decision is analytic: tau* = T when mu > 0, tau* = 0 when mu < 0,
    both endpoints when they tie to within 1e-10 (always at mu = 0). The
    grid of grid_n + 1 times only guards the implementation: every interior
    S value must stay below max(endpoint values) plus a small multiple of
    the quadrature tolerance, else InvariantViolation is raised.
    """
    grid_n = int(grid_n)
    if grid_n < 16:
        raise ValueError(f"grid_n must be >= 16, got {grid_n}")
    horizon = params.horizon
    s0 = endpoint_s("start", params)
    s_t = endpoint_s("horizon", params)
    interior_max = -math.inf
    for i in range(1, grid_n):
        val = s_of_tau(i * horizon / grid_n, params, tol=tol)
        if val > interior_max:
            interior_max = val
    margin = max(10.0 * tol, 1e-12)
    best = max(s0, s_t)
    if interior_max > best + margin:
        raise InvariantViolation(
            f"interior S = {interior_max!r} exceeds endpoint maximum {best!r} "
            f"by more than {margin:g}; the endpoint-optimality structure is broken"
        )
    if params.mu == 0.0 or abs(s0 - s_t) <= _TIE_TOL:
        regime = "degenerate"
        tau_star: tuple[float, ...] = (0.0, horizon)
    elif params.mu > 0.0:
        regime = "good"
        tau_star = (horizon,)
    else:
        regime = "bad"
        tau_star = (0.0,)
    return OptimalReport(
        tau_star=tau_star,
        s_at_0=s0,
        s_at_T=s_t,
        optimal_relative_error=optimal_relative_error(params),
        regime=regime,
        interior_max=interior_max,
        grid_n=grid_n,
    )


def selling_curve(params: ModelParams, grid_n: int = 64, tol: float = 1e-9) -> Curve:
    """S(tau) sampled on grid_n + 1 evenly spaced times covering [0, T]
    (closed form at the endpoints, quadrature inside)."""
    grid_n = int(grid_n)
    if grid_n < 2:
        raise ValueError(f"grid_n must be >= 2, got {grid_n}")
    horizon = params.horizon
    xs = tuple(i * horizon / grid_n for i in range(grid_n + 1))
    values = tuple(s_of_tau(t, params, tol=tol) for t in xs)
    return Curve(
        xs=xs,
        values=values,
        metadata={
            "quantity": "expected price-to-maximum ratio",
            "mu": params.mu,
            "sigma": params.sigma,
            "horizon": params.horizon,
            "tol": tol,
        },
    )
