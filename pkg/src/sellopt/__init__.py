"""Closed-form timing analytics for selling a stock whose price follows
geometric Brownian motion.

The log price x(t) = mu t + sigma B(t) runs on [0, T]. The package
provides the joint law of the price and its running maximum under an
absorbing ceiling (propagator), the density of the gap between the
maximum and the current price (gap), the expected price-to-maximum ratio
S(tau) together with the optimal selling time and its relative error
(selling), the exact density of the time at which the price peaks
(argmax), and a deterministic Monte Carlo oracle that verifies the
closed forms by path simulation (mc, imported lazily because it compiles
a numba kernel on first use).
"""

from .argmax import (
    ArgmaxPoint,
    argmax_cdf,
    argmax_curve,
    argmax_pdf,
    endpoint_amplitude,
    h_factor,
)
from .gap import GapPoint, f_factor, g_factor, gap_pdf
from .model import Curve, InvariantViolation, ModelParams
from .propagator import (
    JointEval,
    cumulative_F,
    g0_plus,
    g_drift_plus,
    joint_pdf_Q,
    survival_integral,
)
from .quadrature import (
    QuadratureConvergenceError,
    QuadResult,
    integrate_endpoint_singular,
    integrate_finite,
    integrate_semi_infinite,
)
from .selling import (
    AlphaParams,
    OptimalReport,
    alpha_to_mu,
    endpoint_s,
    optimal_relative_error,
    optimize,
    s_of_tau,
    selling_curve,
)
from .special import erfc, erfcx, exp_erfc, normal_cdf

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ArgmaxPoint",
    "AlphaParams",
    "Curve",
    "GapPoint",
    "InvariantViolation",
    "JointEval",
    "ModelParams",
    "OptimalReport",
    "QuadResult",
    "QuadratureConvergenceError",
    "alpha_to_mu",
    "argmax_cdf",
    "argmax_curve",
    "argmax_pdf",
    "cumulative_F",
    "endpoint_amplitude",
    "endpoint_s",
    "erfc",
    "erfcx",
    "exp_erfc",
    "f_factor",
    "g_factor",
    "g0_plus",
    "g_drift_plus",
    "gap_pdf",
    "integrate_endpoint_singular",
    "integrate_finite",
    "integrate_semi_infinite",
    "joint_pdf_Q",
    "normal_cdf",
    "optimal_relative_error",
    "optimize",
    "s_of_tau",
    "selling_curve",
    "survival_integral",
]
