"""Monte Carlo ground truth: simulate drifted Brownian motion paths and
estimate the analytic quantities empirically.

Paths follow the exact Euler recursion x_{k+1} = x_k + mu*dt + sigma*sqrt(dt)*Z_k
on an n_steps grid over [0, T] (the discrete skeleton of the process is
sampled exactly; only the running maximum is a discrete-grid quantity, biased
low by O(sqrt(dt)) against the continuum maximum).

Randomness is counter-based so the result is a pure function of (seed,
n_paths, n_steps, params): normal draw j of path p hashes the counter
state0 + (p << 34 + j) * GOLDEN with the SplitMix64 finalizer (Steele,
Lea, Flood, "Fast splittable pseudorandom number generators", OOPSLA 2014),
and Box-Muller turns counter pairs into exact standard normals. Each path
owns a disjoint counter block, so per-path values are independent of
execution order and of how many paths are simulated alongside; parallel and
sequential runs are bit-identical, and simulate_path reproduces any single
path of an ensemble in isolation.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

# The bundled TBB is too old for numba, which would fall back with a warning;
# prefer the always-available built-in work queue unless the user chose one.
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

import numba as nb
import numpy as np

from .model import ModelParams

__all__ = [
    "McConfig",
    "McResult",
    "PathSummary",
    "PathEnsemble",
    "JointCell",
    "simulate_path",
    "simulate_ensemble",
    "estimate_S",
    "estimate_argmax_hist",
    "estimate_joint_F",
    "s_bias_allowance",
]

_U64 = np.uint64
_GOLD = _U64(0x9E3779B97F4A7C15)   # golden-ratio increment of SplitMix64
_MIX1 = _U64(0xBF58476D1CE4E5B9)   # finalizer multipliers from SplitMix64
_MIX2 = _U64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1
_TWO_NEG53 = 2.0 ** -53
_TWO_NEG54 = 2.0 ** -54
_TWO_PI = 2.0 * math.pi


def _mix_py(z: int) -> int:
    """SplitMix64 finalizer on Python integers: the reference for the
    bit-identical arithmetic inlined in the compiled kernel."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def uniform_pair(state0: int, path_index: int, draw_index: int) -> tuple[float, float]:
    """Reference implementation of the kernel's uniform pair for Box-Muller
    draw draw_index of a path: u1 in (0, 1), u2 in [0, 1). Tests compare the
    compiled kernel against paths rebuilt from these."""
    base = (int(state0) + ((path_index << 34) * 0x9E3779B97F4A7C15)) & _MASK
    c = (base + 2 * draw_index * 0x9E3779B97F4A7C15) & _MASK
    u1 = (_mix_py(c) >> 11) * _TWO_NEG53 + _TWO_NEG54
    u2 = (_mix_py((c + 0x9E3779B97F4A7C15) & _MASK) >> 11) * _TWO_NEG53
    return u1, u2


# The SplitMix64 finalizer is written out inline below with an explicit
# uint64 cast on every intermediate: numba silently falls back to signed
# (sign-extending) shifts if any operand in the chain unifies to int64,
# which would skew every draw, so no step leaves the cast chain.
@nb.njit(parallel=True, cache=True)
def _path_kernel(state0, p0, n_paths, n_steps, mu_dt, sig_sqdt, snap_steps):
    """Simulate paths p0..p0+n_paths-1; return (snaps, final, running_max,
    argmax_step). Pure function of its arguments; schedule-independent."""
    n_snaps = snap_steps.shape[0]
    snaps = np.zeros((n_paths, n_snaps))
    final = np.empty(n_paths)
    running_max = np.empty(n_paths)
    argmax_step = np.empty(n_paths, dtype=np.int64)
    for i in nb.prange(n_paths):
        base = _U64(_U64(state0) + (_U64(p0 + i) << _U64(34)) * _GOLD)
        x = 0.0
        mx = 0.0
        am = 0
        si = 0
        while si < n_snaps and snap_steps[si] == 0:
            snaps[i, si] = 0.0
            si += 1
        k = 0
        while k < n_steps:
            c = _U64(base + _U64(k) * _GOLD)
            z = _U64(c)
            z = _U64(_U64(z ^ (z >> _U64(30))) * _MIX1)
            z = _U64(_U64(z ^ (z >> _U64(27))) * _MIX2)
            z = _U64(z ^ (z >> _U64(31)))
            u1 = (z >> _U64(11)) * _TWO_NEG53 + _TWO_NEG54
            z = _U64(c + _GOLD)
            z = _U64(_U64(z ^ (z >> _U64(30))) * _MIX1)
            z = _U64(_U64(z ^ (z >> _U64(27))) * _MIX2)
            z = _U64(z ^ (z >> _U64(31)))
            u2 = (z >> _U64(11)) * _TWO_NEG53
            r = np.sqrt(-2.0 * np.log(u1))
            ang = _TWO_PI * u2
            x += mu_dt + sig_sqdt * (r * np.cos(ang))
            k += 1
            if x > mx:
                mx = x
                am = k
            if si < n_snaps and k == snap_steps[si]:
                snaps[i, si] = x
                si += 1
            if k < n_steps:
                x += mu_dt + sig_sqdt * (r * np.sin(ang))
                k += 1
                if x > mx:
                    mx = x
                    am = k
                if si < n_snaps and k == snap_steps[si]:
                    snaps[i, si] = x
                    si += 1
        final[i] = x
        running_max[i] = mx
        argmax_step[i] = am
    return snaps, final, running_max, argmax_step


@dataclass(frozen=True)
class McConfig:
    """Full specification of a simulation: paths, grid, seed, model."""

    n_paths: int
    n_steps: int
    seed: int
    params: ModelParams

    def __post_init__(self) -> None:
        if not (isinstance(self.n_paths, int) and self.n_paths >= 1):
            raise ValueError(f"n_paths must be an integer >= 1, got {self.n_paths!r}")
        if not (isinstance(self.n_steps, int) and self.n_steps >= 2):
            raise ValueError(f"n_steps must be an integer >= 2, got {self.n_steps!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ValueError(f"seed must be an integer in [0, 2^64), got {self.seed!r}")

    @property
    def dt(self) -> float:
        return self.params.horizon / self.n_steps


@dataclass(frozen=True)
class McResult:
    """A Monte Carlo estimate with its statistical uncertainty.

    std_error is the sample standard deviation divided by sqrt(n).
    histogram, when present, is a tuple of (bin_left, bin_right, mass)
    triples whose masses sum to 1 within 1e-12.
    """

    estimate: float
    std_error: float
    n_effective: int
    histogram: tuple[tuple[float, float, float], ...] | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.std_error) and self.std_error >= 0.0):
            raise ValueError(f"std_error must be >= 0, got {self.std_error!r}")
        if self.n_effective < 1:
            raise ValueError(f"n_effective must be >= 1, got {self.n_effective!r}")
        if self.histogram is not None:
            total = math.fsum(mass for _, _, mass in self.histogram)
            if abs(total - 1.0) > 1e-12:
                raise ValueError(f"histogram masses must sum to 1, got {total!r}")


@dataclass(frozen=True)
class PathSummary:
    """One simulated path reduced to the quantities the estimators need."""

    path_index: int
    snap_times: tuple[float, ...]
    snaps: tuple[float, ...]
    final: float
    running_max: float
    argmax_step: int
    argmax_time: float


@dataclass(frozen=True)
class PathEnsemble:
    """Reduced outputs of a full simulation: one row per path.

    snaps[i, j] is x at snap_times[j] (snapped to the grid) of path i;
    running_max and argmax_step refer to the discrete grid including the
    start point x(0) = 0 (argmax_step = 0 means the maximum sat at the
    start; ties break toward the earliest step).
    """

    config: McConfig
    snap_times: tuple[float, ...]
    snap_steps: tuple[int, ...]
    snaps: np.ndarray
    final: np.ndarray
    running_max: np.ndarray
    argmax_step: np.ndarray


def _state0(seed: int) -> np.uint64:
    # double scramble so consecutive seeds land in unrelated counter regions
    return np.uint64(_mix_py(_mix_py((seed + 0x9E3779B97F4A7C15) & _MASK)))


def _resolve_snap_steps(config: McConfig, snap_times) -> tuple[tuple[int, ...], tuple[float, ...]]:
    dt = config.dt
    steps: list[int] = []
    times: list[float] = []
    for t in snap_times:
        t = float(t)
        if not (math.isfinite(t) and 0.0 <= t <= config.params.horizon):
            raise ValueError(
                f"snap time must lie in [0, {config.params.horizon}], got {t!r}"
            )
        step = int(round(t / dt))
        if steps and step <= steps[-1]:
            raise ValueError(
                "snap times must be strictly increasing on the simulation grid "
                f"(time {t!r} snapped to step {step} after step {steps[-1]})"
            )
        steps.append(step)
        times.append(step * dt)
    return tuple(steps), tuple(times)


def simulate_ensemble(config: McConfig, snap_times=()) -> PathEnsemble:
    """Simulate all paths of the configuration in one pass.

    snap_times are snapped to the nearest grid step (ties round half to
    even via Python round) and must be strictly increasing after snapping;
    the snapped times are recorded on the returned ensemble.
    """
    snap_steps, snapped = _resolve_snap_steps(config, snap_times)
    p = config.params
    dt = config.dt
    snaps, final, running_max, argmax_step = _path_kernel(
        _state0(config.seed),
        0,
        config.n_paths,
        config.n_steps,
        p.mu * dt,
        p.sigma * math.sqrt(dt),
        np.asarray(snap_steps, dtype=np.int64),
    )
    return PathEnsemble(
        config=config,
        snap_times=snapped,
        snap_steps=snap_steps,
        snaps=snaps,
        final=final,
        running_max=running_max,
        argmax_step=argmax_step,
    )


def simulate_path(config: McConfig, path_index: int, snap_times=()) -> PathSummary:
    """Simulate the single path path_index of the configuration.

    Bit-identical to row path_index of simulate_ensemble with the same
    config: each path draws from its own counter block, independent of
    which other paths run.
    """
    path_index = int(path_index)
    if not 0 <= path_index < config.n_paths:
        raise ValueError(
            f"path_index must lie in [0, {config.n_paths}), got {path_index}"
        )
    snap_steps, snapped = _resolve_snap_steps(config, snap_times)
    p = config.params
    dt = config.dt
    snaps, final, running_max, argmax_step = _path_kernel(
        _state0(config.seed),
        path_index,
        1,
        config.n_steps,
        p.mu * dt,
        p.sigma * math.sqrt(dt),
        np.asarray(snap_steps, dtype=np.int64),
    )
    return PathSummary(
        path_index=path_index,
        snap_times=snapped,
        snaps=tuple(float(v) for v in snaps[0]),
        final=float(final[0]),
        running_max=float(running_max[0]),
        argmax_step=int(argmax_step[0]),
        argmax_time=int(argmax_step[0]) * dt,
    )


def _require_ensemble(
    config: McConfig | None, ensemble: PathEnsemble | None, snap_times=()
) -> PathEnsemble:
    if (config is None) == (ensemble is None):
        raise ValueError("pass exactly one of config or ensemble")
    if ensemble is not None:
        return ensemble
    return simulate_ensemble(config, snap_times)


def _snap_column(ensemble: PathEnsemble, tau: float) -> int:
    step = int(round(float(tau) / ensemble.config.dt))
    for j, s in enumerate(ensemble.snap_steps):
        if s == step:
            return j
    raise ValueError(
        f"tau={tau!r} (grid step {step}) is not among the ensemble snap steps "
        f"{ensemble.snap_steps}"
    )


def estimate_S(
    tau: float,
    config: McConfig | None = None,
    *,
    ensemble: PathEnsemble | None = None,
) -> McResult:
    """Empirical expected price-to-maximum ratio at time tau: the mean over
    paths of exp(x(tau) - running max). tau is snapped to the simulation
    grid. Because the grid maximum under-counts the continuum maximum, the
    estimate is biased high by O(sqrt(dt)); see s_bias_allowance.

    Pass either a config (simulates on demand) or a pre-built ensemble
    containing tau among its snap times.
    """
    ens = _require_ensemble(config, ensemble, snap_times=(float(tau),))
    j = _snap_column(ens, tau)
    ratios = np.exp(ens.snaps[:, j] - ens.running_max)
    n = ratios.shape[0]
    estimate = float(ratios.mean())
    std_error = float(ratios.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return McResult(estimate=estimate, std_error=std_error, n_effective=n)


def s_bias_allowance(config: McConfig) -> float:
    """Systematic allowance 0.6 * sigma * sqrt(dt) for comparisons of
    estimate_S against continuum values: the expected shortfall of a
    discrete-grid maximum against the continuum maximum is
    -zeta(1/2)/sqrt(2 pi) * sigma * sqrt(dt) ~ 0.5826 * sigma * sqrt(dt)
    (the Chernoff/Siegmund discrete-overshoot constant), rounded up."""
    return 0.6 * config.params.sigma * math.sqrt(config.dt)


def estimate_argmax_hist(
    config: McConfig | None = None,
    n_bins: int = 20,
    *,
    ensemble: PathEnsemble | None = None,
) -> McResult:
    """Histogram of the argmax time over n_bins equal bins covering [0, T].

    estimate/std_error describe the mean argmax time; the histogram holds
    (left, right, mass) per bin with masses summing to 1. Endpoint bins
    absorb the O(sqrt(dt)) pile-up of discrete extremes at t in {0, T};
    comparisons against the continuum density should use interior bins.
    """
    n_bins = int(n_bins)
    if n_bins < 4:
        raise ValueError(f"n_bins must be >= 4, got {n_bins}")
    ens = _require_ensemble(config, ensemble)
    cfg = ens.config
    horizon = cfg.params.horizon
    steps = ens.argmax_step
    n = steps.shape[0]
    bins = np.minimum((steps * n_bins) // cfg.n_steps, n_bins - 1)
    counts = np.bincount(bins, minlength=n_bins)
    histogram = tuple(
        (k * horizon / n_bins, (k + 1) * horizon / n_bins, counts[k] / n)
        for k in range(n_bins)
    )
    times = steps * cfg.dt
    estimate = float(times.mean())
    std_error = float(times.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return McResult(
        estimate=estimate, std_error=std_error, n_effective=n, histogram=histogram
    )


@dataclass(frozen=True)
class JointCell:
    """Empirical mass of one cell of the joint (value, maximum) law:
    P(x(tau) in [x_left, x_right), running max <= m), with the binomial
    standard error of the proportion."""

    x_left: float
    x_right: float
    m: float
    tau: float
    mass: float
    std_error: float
    count: int


def estimate_joint_F(
    x_bins,
    m_bins,
    tau: float,
    config: McConfig | None = None,
    *,
    ensemble: PathEnsemble | None = None,
) -> list[JointCell]:
    """Empirical joint law of (x(tau), running max), cumulative in the max:
    one JointCell per (x-bin, m-threshold) pair, with mass
    P(x in bin, max <= m). x_bins are ascending bin edges; m_bins are the
    max thresholds. Compare against the x-integral of cumulative_F over
    each bin.
    """
    x_edges = [float(v) for v in x_bins]
    m_values = [float(v) for v in m_bins]
    if len(x_edges) < 2 or any(b <= a for a, b in zip(x_edges, x_edges[1:])):
        raise ValueError("x_bins must be at least two strictly increasing edges")
    ens = _require_ensemble(config, ensemble, snap_times=(float(tau),))
    j = _snap_column(ens, tau)
    xs = ens.snaps[:, j]
    mx = ens.running_max
    n = xs.shape[0]
    snapped_tau = ens.snap_times[j]
    cells: list[JointCell] = []
    for a, b in zip(x_edges, x_edges[1:]):
        in_bin = (xs >= a) & (xs < b)
        for m in m_values:
            count = int(np.count_nonzero(in_bin & (mx <= m)))
            mass = count / n
            std_error = math.sqrt(mass * (1.0 - mass) / n)
            cells.append(
                JointCell(
                    x_left=a,
                    x_right=b,
                    m=m,
                    tau=snapped_tau,
                    mass=mass,
                    std_error=std_error,
                    count=count,
                )
            )
    return cells
